#include "doctest.h"

#include <string>

#include "dlmsim/experiments.hpp"
#include "dlmsim/netlist.hpp"

using namespace dlmsim;

namespace {

const std::string kMziNetlist = R"(# Mach-Zehnder interferometer
param alpha 0.99
param mode deterministic
param seed 7
source src 2
proc bs1 beamsplitter
proc bs2 beamsplitter
passive r0 rotation 0
passive r1 rotation 0
wire src.0 -> bs1.0
wire src.1 -> bs1.1
wire bs1.0 -> r0.0
wire bs1.1 -> r1.0
wire r0.0 -> bs2.0
wire r1.0 -> bs2.1
sink N2 from bs2.0
sink N3 from bs2.1
tap N0 bs1.0
tap N1 bs1.1
)";

const std::string kBsNetlist = R"(param alpha 0.99
source src 2
proc bs beamsplitter
wire src.0 -> bs.0
wire src.1 -> bs.1
sink N0 from bs.0
sink N1 from bs.1
)";

const std::string kCnotNetlist = R"(param alpha 0.99
source src 4
proc h1a hadamard-lift 0
proc h2a hadamard-lift 1
proc cx cnot
proc h1b hadamard-lift 0
proc h2b hadamard-lift 1
wire src.0 -> h1a.0
wire src.1 -> h1a.1
wire src.2 -> h1a.2
wire src.3 -> h1a.3
wire h1a.0 -> h2a.0
wire h1a.1 -> h2a.1
wire h1a.2 -> h2a.2
wire h1a.3 -> h2a.3
wire h2a.0 -> cx.0
wire h2a.1 -> cx.1
wire h2a.2 -> cx.2
wire h2a.3 -> cx.3
wire cx.0 -> h1b.0
wire cx.1 -> h1b.1
wire cx.2 -> h1b.2
wire cx.3 -> h1b.3
wire h1b.0 -> h2b.0
wire h1b.1 -> h2b.1
wire h1b.2 -> h2b.2
wire h1b.3 -> h2b.3
sink n0 from h2b.0
sink n1 from h2b.1
sink n2 from h2b.2
sink n3 from h2b.3
)";

int error_line(const std::string& text) {
    try {
        (void)parse_netlist(text);
    } catch (const NetlistError& e) {
        return e.line;
    }
    return -1;
}

} // namespace

TEST_CASE("MZI netlist builds a network isomorphic to build_mzi") {
    NetlistDocument doc = parse_netlist(kMziNetlist);
    CHECK(doc.alpha == 0.99);
    CHECK(doc.mode == OutputMode::deterministic);
    CHECK(doc.seed == 7);
    CHECK(doc.procs.size() == 2);
    CHECK(doc.passives.size() == 2);
    CHECK(doc.wires.size() == 6);
    CHECK(doc.sinks.size() == 2);

    Rng rng(1);
    Network net = build_network(doc, rng);
    CHECK(net.processor_count() == 2);
    CHECK(net.counter_names() == std::vector<std::string>{"N0", "N1", "N2", "N3"});

    SUBCASE("drives identically to the built-in construction") {
        Rng init_a(mix_seed(42, 1));
        Network builtin = build_mzi(0.99, 0.0, 0.0, OutputMode::deterministic, init_a);
        Rng init_b(mix_seed(42, 1));
        Network parsed = build_network(doc, init_b);
        for (int e = 0; e < 2000; ++e) {
            Message msg{0, {1.0, 0.0}};
            builtin.route(msg, "src");
            parsed.route(msg, "src");
        }
        for (const char* name : {"N0", "N1", "N2", "N3"})
            CHECK(builtin.counter(name) == parsed.counter(name));
    }
}

TEST_CASE("beam splitter netlist runs the same code path as the builtin") {
    NetlistDocument doc = parse_netlist(kBsNetlist);
    ExperimentConfig cfg;
    cfg.seed = 11;
    cfg.events_per_point = 3000;

    Rng init_a(mix_seed(cfg.seed, 1));
    Network parsed = build_network(doc, init_a);
    auto from_netlist = run_beam_splitter_on(parsed, cfg, 0.5, 3);
    auto builtin = run_beam_splitter(cfg, 0.5, 3);
    REQUIRE(from_netlist.size() == builtin.size());
    for (std::size_t i = 0; i < builtin.size(); ++i) {
        CHECK(from_netlist[i].report.counts == builtin[i].report.counts);
        CHECK(from_netlist[i].psi0 == builtin[i].psi0);
    }
}

TEST_CASE("CNOT-circuit netlist matches the builtin network") {
    NetlistDocument doc = parse_netlist(kCnotNetlist);
    ExperimentConfig cfg;
    cfg.seed = 13;
    cfg.events_per_point = 400;
    cfg.discard_fraction = 0.5;

    Rng init(mix_seed(cfg.seed, 1));
    Network parsed = build_network(doc, init);
    FrequencyReport a = run_cnot_circuit_on(parsed, cfg, 1, 1);
    FrequencyReport b = run_cnot_circuit(cfg, 1, 1);
    CHECK(a.counts == b.counts);
}

TEST_CASE("netlist diagnostics carry positions") {
    SUBCASE("empty file has no source") {
        CHECK_THROWS_WITH_AS((void)parse_netlist(""), "0:0: no source declared", NetlistError);
    }
    SUBCASE("self-wire is a cycle") {
        std::string text = kBsNetlist + "proc bs2 beamsplitter\n"
                                        "wire bs2.0 -> bs2.0\n"
                                        "sink NX from bs2.1\n";
        int line = error_line(text);
        CHECK(line == 9); // the self-wire line
        try {
            (void)parse_netlist(text);
        } catch (const NetlistError& e) {
            CHECK(std::string(e.what()).find("cycle") != std::string::npos);
        }
    }
    SUBCASE("duplicate id") {
        std::string text = "source src 2\nproc src beamsplitter\n";
        CHECK(error_line(text) == 2);
    }
    SUBCASE("dangling wire") {
        std::string text = kBsNetlist + "wire ghost.0 -> bs.0\n";
        CHECK(error_line(text) == 8);
    }
    SUBCASE("channel out of range") {
        std::string text = "source src 2\nproc bs beamsplitter\nwire src.0 -> bs.5\n";
        CHECK(error_line(text) == 3);
    }
    SUBCASE("double-wired output") {
        std::string text = kBsNetlist + "sink NX from bs.0\n";
        CHECK(error_line(text) == 8);
    }
    SUBCASE("syntax errors") {
        CHECK(error_line("param alpha two\nsource s 1\n") == 1);
        CHECK(error_line("wire a.0 bs.0\nsource s 1\n") == 1);
        CHECK(error_line("frobnicate x\nsource s 1\n") == 1);
        CHECK(error_line("param alpha 1.5\nsource s 1\n") == 1);
        CHECK(error_line("proc p hadamard-lift 3\nsource s 1\n") == 1);
    }
    SUBCASE("mismatched processor arities") {
        std::string text = "source src 2\n"
                           "proc bs beamsplitter\n"
                           "proc cx cnot\n"
                           "wire src.0 -> bs.0\n"
                           "wire src.1 -> bs.1\n"
                           "wire bs.0 -> cx.0\n";
        CHECK(error_line(text) == 6);
    }
    SUBCASE("bad custom matrix") {
        std::string text = "source src 1\nproc m custom-matrix 2 1 0 0 2\n";
        CHECK(error_line(text) == 2);
    }
}

TEST_CASE("custom-matrix processors") {
    std::string text = "source src 1\n"
                       "proc m custom-matrix 2 0 -1 1 0\n"
                       "wire src.0 -> m.0\n"
                       "sink d0 from m.0\n";
    // ne = dim/2 = 1 < 2 event types is rejected when building
    NetlistDocument doc = parse_netlist(text);
    Rng rng(1);
    CHECK_THROWS(build_network(doc, rng));

    std::string ok = "source src 2\n"
                     "proc m custom-matrix 4 1 0 0 0  0 1 0 0  0 0 1 0  0 0 0 1\n"
                     "wire src.0 -> m.0\n"
                     "wire src.1 -> m.1\n"
                     "sink d0 from m.0\n"
                     "sink d1 from m.1\n";
    NetlistDocument doc2 = parse_netlist(ok);
    Rng rng2(1);
    Network net = build_network(doc2, rng2);
    CHECK(net.processor_count() == 1);
    CHECK(net.processor("m").transform.dim() == 4);
}

TEST_CASE("print/parse round trip") {
    for (const std::string* text : {&kMziNetlist, &kBsNetlist, &kCnotNetlist}) {
        NetlistDocument doc = parse_netlist(*text);
        std::string printed = print_netlist(doc);
        NetlistDocument reparsed = parse_netlist(printed);
        CHECK(print_netlist(reparsed) == printed);

        // equivalent networks: identical structure and behavior
        Rng ra(mix_seed(5, 1)), rb(mix_seed(5, 1));
        Network na = build_network(doc, ra);
        Network nb = build_network(reparsed, rb);
        CHECK(na.counter_names() == nb.counter_names());
        CHECK(na.processor_count() == nb.processor_count());
        for (int e = 0; e < 500; ++e) {
            Message msg{0, {1.0, 0.0}};
            auto sa = na.route(msg, doc.sources.front().id);
            auto sb = nb.route(msg, reparsed.sources.front().id);
            CHECK(sa.sink_id == sb.sink_id);
        }
    }
}
