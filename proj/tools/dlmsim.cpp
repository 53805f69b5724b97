// Command-line front end for the event-based DLM network simulator.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "dlmsim/csv.hpp"
#include "dlmsim/experiments.hpp"
#include "dlmsim/netlist.hpp"
#include "dlmsim/oracle.hpp"

namespace {

using namespace dlmsim;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("DLMSIM_SEED")) {
        try {
            return static_cast<std::uint64_t>(std::stoull(env));
        } catch (...) {
            std::cerr << "dlmsim: ignoring invalid DLMSIM_SEED '" << env << "'\n";
        }
    }
    return 1;
}

void write_output(const std::string& csv, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << csv;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + out_path + "'");
    out << csv;
}

struct CommonOpts {
    double alpha = 0.99;
    int events = 10000;
    std::uint64_t seed = default_seed();
    bool stochastic = false;
    double discard = 0.0;
    bool reinit = false;
    std::string out_path;
    std::optional<double> check_tol;

    void attach(CLI::App* cmd, bool with_reinit = true) {
        cmd->add_option("--alpha", alpha, "learning parameter in (0,1)");
        cmd->add_option("--events", events, "events per data point");
        cmd->add_option("--seed", seed, "master RNG seed (env DLMSIM_SEED sets the default)");
        cmd->add_flag("--stochastic", stochastic, "SLM output selection instead of deterministic");
        cmd->add_option("--discard", discard, "fraction of initial events excluded from counts");
        if (with_reinit)
            cmd->add_flag("--reinit-per-point", reinit, "fresh DLM vectors at each sweep point");
        cmd->add_option("--out", out_path, "CSV output path (default stdout)");
        cmd->add_option("--check", check_tol,
                        "compare against the quantum oracle; exit 1 beyond this tolerance");
    }

    ExperimentConfig config() const {
        ExperimentConfig cfg;
        cfg.alpha = alpha;
        cfg.events_per_point = events;
        cfg.seed = seed;
        cfg.mode = stochastic ? OutputMode::stochastic : OutputMode::deterministic;
        cfg.discard_fraction = discard;
        cfg.reinit_per_point = reinit;
        return cfg;
    }
};

int check_result(bool ok) { return ok ? 0 : 1; }

int run_bs_command(const CommonOpts& opts, double p0, int pairs) {
    auto points = run_beam_splitter(opts.config(), p0, pairs);
    write_output(emit_csv(points), opts.out_path);
    if (!opts.check_tol) return 0;
    bool ok = true;
    for (const auto& pt : points) ok = ok && compare(pt.report, *opts.check_tol);
    return check_result(ok);
}

int run_mzi_command(const CommonOpts& opts, double phi1, double phi0_step) {
    auto points = run_mzi(opts.config(), phi1, phi0_step);
    write_output(emit_csv(points), opts.out_path);
    if (!opts.check_tol) return 0;
    bool ok = true;
    for (const auto& pt : points)
        ok = ok && compare(pt.first_bs, *opts.check_tol) && compare(pt.output, *opts.check_tol);
    return check_result(ok);
}

int run_cnot_command(const CommonOpts& opts) {
    std::ostringstream csv;
    csv << "qubit1,qubit2,N0,N1,N2,N3,f0,f1,f2,f3,p0,p1,p2,p3,max_dev\n";
    bool ok = true;
    for (int q2 = 0; q2 < 2; ++q2)
        for (int q1 = 0; q1 < 2; ++q1) {
            FrequencyReport r = run_cnot_circuit(opts.config(), q1, q2);
            csv << q1 << ',' << q2;
            for (auto c : r.counts) csv << ',' << c;
            for (auto f : r.frequencies) csv << ',' << format_fixed(f);
            for (auto p : r.oracle_probs) csv << ',' << format_fixed(p);
            csv << ',' << format_fixed(r.max_deviation) << '\n';
            if (opts.check_tol) ok = ok && compare(r, *opts.check_tol);
        }
    write_output(csv.str(), opts.out_path);
    return opts.check_tol ? check_result(ok) : 0;
}

int run_netlist_command(const CommonOpts& opts, const std::string& path, double p0, int event_type,
                        std::optional<double> psi0, std::optional<double> psi1) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "dlmsim: cannot open netlist '" << path << "'\n";
        return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    NetlistDocument doc = parse_netlist(buf.str());
    Rng init(mix_seed(opts.seed, 1));
    Network net = build_network(doc, init);
    net.set_slm_seed(mix_seed(opts.seed, 3));

    Rng input(mix_seed(opts.seed, 2));
    double a0 = psi0 ? *psi0 : input.uniform(0.0, 360.0);
    double a1 = psi1 ? *psi1 : input.uniform(0.0, 360.0);
    auto payload = [](double deg) {
        double r = deg * M_PI / 180.0;
        return std::vector<double>{std::cos(r), std::sin(r)};
    };
    const std::string& entry = doc.sources.front().id;
    int discard = static_cast<int>(opts.discard * opts.events);
    for (int e = 0; e < opts.events; ++e) {
        if (e == discard && discard > 0) net.reset_counters();
        Message msg;
        if (input.uniform() < p0) {
            msg.event_type = event_type;
            msg.payload = payload(a0);
        } else {
            msg.event_type = event_type ^ 1;
            msg.payload = payload(a1);
        }
        net.route(msg, entry);
    }
    auto names = net.counter_names();
    std::vector<std::uint64_t> counts;
    counts.reserve(names.size());
    for (const auto& n : names) counts.push_back(net.counter(n));
    write_output(emit_counts_csv(names, counts), opts.out_path);
    return 0;
}

int run_oracle_command(const std::string& which, double p0, double psi0, double psi1, double phi0,
                       double phi1, const std::string& out_path) {
    std::ostringstream csv;
    if (which == "bs") {
        double q0 = oracle::bs_probability0(p0, psi0, psi1);
        csv << "p0,p1\n" << format_fixed(q0) << ',' << format_fixed(1.0 - q0) << '\n';
    } else if (which == "mzi") {
        auto [b0, b1] = oracle::mzi_output(1.0, 0.0, phi0, phi1);
        csv << "p0,p1\n"
            << format_fixed(std::norm(b0)) << ',' << format_fixed(std::norm(b1)) << '\n';
    } else if (which == "cnot") {
        csv << "qubit1,qubit2,p0,p1,p2,p3\n";
        for (int q2 = 0; q2 < 2; ++q2)
            for (int q1 = 0; q1 < 2; ++q1) {
                auto probs = oracle::cnot_circuit_probabilities(q1, q2);
                csv << q1 << ',' << q2;
                for (double p : probs) csv << ',' << format_fixed(p);
                csv << '\n';
            }
    } else {
        std::cerr << "dlmsim: unknown oracle target '" << which << "' (bs, mzi or cnot)\n";
        return 2;
    }
    write_output(csv.str(), out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Event-by-event simulator of DLM networks"};
    app.require_subcommand(1);

    CommonOpts bs_opts, mzi_opts, cnot_opts, run_opts;

    auto* bs = app.add_subcommand("bs", "single beam splitter, random phase pairs");
    double p0 = 1.0;
    int pairs = 40;
    bs->add_option("--p0", p0, "probability of an event on input channel 0");
    bs->add_option("--pairs", pairs, "number of random (psi0, psi1) pairs");
    bs_opts.attach(bs);

    auto* mzi = app.add_subcommand("mzi", "Mach-Zehnder interferometer, phi0 sweep");
    double phi1 = 0.0, phi0_step = 10.0;
    mzi->add_option("--phi1", phi1, "fixed rotation on the lower arm, degrees");
    mzi->add_option("--phi0-step", phi0_step, "phi0 sweep increment, degrees");
    mzi_opts.attach(mzi);

    auto* cnot = app.add_subcommand("cnot-circuit",
                                    "H/CNOT/H two-qubit circuit over all basis inputs");
    cnot_opts.attach(cnot, false);

    auto* run = app.add_subcommand("run", "drive a user-defined netlist");
    std::string netlist_path;
    double run_p0 = 1.0;
    int run_event_type = 0;
    std::optional<double> run_psi0, run_psi1;
    run->add_option("netlist", netlist_path, "netlist file")->required();
    run->add_option("--p0", run_p0, "probability of the primary event type");
    run->add_option("--event-type", run_event_type, "primary source event type");
    run->add_option("--psi0", run_psi0, "payload phase for the primary type, degrees");
    run->add_option("--psi1", run_psi1, "payload phase for the alternate type, degrees");
    run_opts.attach(run, false);

    auto* orc = app.add_subcommand("oracle", "print quantum-theory predictions only");
    std::string which;
    double o_p0 = 1.0, o_psi0 = 0.0, o_psi1 = 0.0, o_phi0 = 0.0, o_phi1 = 0.0;
    std::string o_out;
    orc->add_option("target", which, "bs, mzi or cnot")->required();
    orc->add_option("--p0", o_p0);
    orc->add_option("--psi0", o_psi0);
    orc->add_option("--psi1", o_psi1);
    orc->add_option("--phi0", o_phi0);
    orc->add_option("--phi1", o_phi1);
    orc->add_option("--out", o_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (bs->parsed()) return run_bs_command(bs_opts, p0, pairs);
        if (mzi->parsed()) return run_mzi_command(mzi_opts, phi1, phi0_step);
        if (cnot->parsed()) return run_cnot_command(cnot_opts);
        if (run->parsed())
            return run_netlist_command(run_opts, netlist_path, run_p0, run_event_type, run_psi0,
                                       run_psi1);
        if (orc->parsed())
            return run_oracle_command(which, o_p0, o_psi0, o_psi1, o_phi0, o_phi1, o_out);
    } catch (const NetlistError& e) {
        std::cerr << "dlmsim: netlist error at " << e.what() << '\n';
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "dlmsim: configuration error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "dlmsim: error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
