#include "doctest.h"

#include <cmath>

#include "dlmsim/network.hpp"

using namespace dlmsim;

namespace {

Processor make_bs_processor(double alpha, OutputMode mode, std::uint64_t seed) {
    Rng rng(seed);
    return Processor(DlmState::random(alpha, 2, 2, rng), beam_splitter_transform(),
                     DlmState::random(alpha, 2, 2, rng), mode);
}

} // namespace

TEST_CASE("processor construction checks dimensions") {
    Rng rng(3);
    DlmState small = DlmState::random(0.99, 2, 2, rng);
    DlmState big = DlmState::random(0.99, 4, 2, rng);
    CHECK_THROWS_AS(Processor(small, cnot_transform(), small, OutputMode::deterministic),
                    ConfigError);
    CHECK_THROWS_AS(Processor(big, beam_splitter_transform(), big, OutputMode::deterministic),
                    ConfigError);
}

TEST_CASE("process_event") {
    SUBCASE("beam splitter splits a constant input 50/50") {
        Processor p = make_bs_processor(0.99, OutputMode::deterministic, 101);
        Message in{0, {1.0, 0.0}};
        int n0 = 0;
        const int events = 10000;
        for (int e = 0; e < events; ++e)
            if (process_event(p, in).event_type == 0) ++n0;
        CHECK(std::abs(static_cast<double>(n0) / events - 0.5) < 0.02);
    }
    SUBCASE("identity transform concentrates output on the input type") {
        Rng rng(103);
        Processor p(DlmState::random(0.99, 2, 2, rng), Transform::identity(4),
                    DlmState::random(0.99, 2, 2, rng), OutputMode::deterministic);
        Message in{0, {1.0, 0.0}};
        int n0_late = 0;
        for (int e = 0; e < 2000; ++e) {
            Message out = process_event(p, in);
            if (e >= 1000 && out.event_type == 0) ++n0_late;
        }
        CHECK(n0_late == 1000);
    }
    SUBCASE("same seed and inputs give the identical output sequence") {
        auto run = [] {
            Processor p = make_bs_processor(0.99, OutputMode::deterministic, 107);
            std::vector<int> types;
            for (int e = 0; e < 1000; ++e)
                types.push_back(process_event(p, Message{e % 2, {0.8, 0.6}}).event_type);
            return types;
        };
        CHECK(run() == run());
    }
    SUBCASE("stochastic mode requires a draw") {
        Processor p = make_bs_processor(0.99, OutputMode::stochastic, 109);
        CHECK_THROWS_AS((void)process_event(p, Message{0, {1.0, 0.0}}), std::invalid_argument);
    }
}

TEST_CASE("network wiring and validation") {
    Rng rng(113);

    SUBCASE("duplicate id") {
        Network net;
        net.add_source("a", 2);
        CHECK_THROWS_AS(net.add_sink("a"), ConfigError);
    }
    SUBCASE("cycle detection") {
        Network net;
        net.add_source("src", 1);
        net.add_passive("r0", plane_rotation(10.0));
        net.add_passive("r1", plane_rotation(20.0));
        net.wire("src", 0, "r0", 0);
        net.wire("r0", 0, "r1", 0);
        net.wire("r1", 0, "r0", 0);
        CHECK_THROWS_AS(net.validate(), ConfigError);
    }
    SUBCASE("unwired output") {
        Network net;
        net.add_source("src", 2);
        net.add_sink("d0");
        net.wire("src", 0, "d0", 0);
        CHECK_THROWS_AS(net.validate(), ConfigError);
    }
    SUBCASE("missing source") {
        Network net;
        net.add_sink("d0");
        CHECK_THROWS_AS(net.validate(), ConfigError);
    }
    SUBCASE("event-type counts are not coerced between processors") {
        Network net;
        Rng r2(127);
        net.add_processor("bs", make_bs_processor(0.99, OutputMode::deterministic, 131));
        net.add_processor("cnot", Processor(DlmState::random(0.99, 4, 2, r2), cnot_transform(),
                                            DlmState::random(0.99, 4, 2, r2),
                                            OutputMode::deterministic));
        CHECK_THROWS_AS(net.wire("bs", 0, "cnot", 0), ConfigError);
    }
}

TEST_CASE("routing") {
    SUBCASE("passive node rotates the payload") {
        Network net;
        net.add_source("src", 1);
        net.add_passive("rot", plane_rotation(30.0));
        net.add_sink("d0");
        net.wire("src", 0, "rot", 0);
        net.wire("rot", 0, "d0", 0);
        double psi = 40.0 * M_PI / 180.0;
        auto res = net.route(Message{0, {std::cos(psi), std::sin(psi)}}, "src");
        CHECK(res.sink_id == "d0");
        double expected = 70.0 * M_PI / 180.0;
        CHECK(res.message.payload[0] == doctest::Approx(std::cos(expected)).epsilon(1e-12));
        CHECK(res.message.payload[1] == doctest::Approx(std::sin(expected)).epsilon(1e-12));
    }
    SUBCASE("counters sum to the number of routed events") {
        Rng rng(137);
        Network net = build_mzi(0.99, 25.0, 70.0, OutputMode::deterministic, rng);
        for (int e = 0; e < 500; ++e) net.route(Message{0, {1.0, 0.0}}, "src");
        CHECK(net.counter("N0") + net.counter("N1") == 500);
        CHECK(net.counter("N2") + net.counter("N3") == 500);
    }
    SUBCASE("entry must be a source") {
        Rng rng(139);
        Network net = build_mzi(0.99, 0.0, 0.0, OutputMode::deterministic, rng);
        CHECK_THROWS_AS((void)net.route(Message{0, {1.0, 0.0}}, "bs1"), ConfigError);
    }
}

TEST_CASE("build_mzi layout") {
    Rng rng(149);
    Network net = build_mzi(0.99, 10.0, 20.0, OutputMode::deterministic, rng);
    CHECK(net.processor_count() == 2);
    CHECK(net.dlm_count() == 4);
    CHECK(net.counter_names() == std::vector<std::string>{"N0", "N1", "N2", "N3"});
    CHECK_NOTHROW(net.validate());
    CHECK(net.processor("bs1").transform.dim() == 4);
}

TEST_CASE("build_cnot_circuit layout") {
    Rng rng(151);
    Network net = build_cnot_circuit(0.99, OutputMode::deterministic, rng);
    CHECK(net.processor_count() == 5);
    CHECK(net.dlm_count() == 10);
    for (const char* id : {"h1a", "h2a", "cnot", "h1b", "h2b"})
        CHECK(net.processor(id).transform.dim() == 8);
    CHECK_NOTHROW(net.validate());

    SUBCASE("basis input settles on the truth-table output") {
        // qubit1 = 0, qubit2 = 1 -> event type 2 in, type 3 dominant out
        Message in{2, {1.0, 0.0}};
        for (int e = 0; e < 300; ++e) net.route(in, "src");
        net.reset_counters();
        for (int e = 0; e < 300; ++e) net.route(in, "src");
        CHECK(static_cast<double>(net.counter("n3")) / 300.0 > 0.98);
    }
}

TEST_CASE("stochastic output selection preserves long-run frequencies") {
    // Same network content, deterministic vs SLM output; frequencies of the
    // output types must agree within statistical error.
    auto run = [](OutputMode mode) {
        Rng rng(157);
        Network net = build_beam_splitter(0.99, mode, rng);
        net.set_slm_seed(163);
        double psi = 77.0 * M_PI / 180.0;
        Message in{0, {std::cos(psi), std::sin(psi)}};
        const int events = 20000;
        for (int e = 0; e < events; ++e) net.route(in, "src");
        return static_cast<double>(net.counter("N0")) / events;
    };
    double f_det = run(OutputMode::deterministic);
    double f_slm = run(OutputMode::stochastic);
    CHECK(std::abs(f_det - 0.5) < 0.02);
    CHECK(std::abs(f_det - f_slm) < 0.02);
}
