#include "dlmsim/experiments.hpp"

#include <cmath>
#include <stdexcept>

#include "dlmsim/oracle.hpp"

namespace dlmsim {

namespace {

// Independent sub-streams so that deterministic and stochastic runs see the
// same initialization and input sequences.
constexpr std::uint64_t kInitStream = 1;
constexpr std::uint64_t kInputStream = 2;
constexpr std::uint64_t kSlmStream = 3;

std::vector<double> phase_payload(double psi_degrees) {
    double psi = psi_degrees * M_PI / 180.0;
    return {std::cos(psi), std::sin(psi)};
}

} // namespace

void ExperimentConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("ExperimentConfig: alpha must be in (0,1)");
    if (events_per_point < 1)
        throw std::invalid_argument("ExperimentConfig: events_per_point must be >= 1");
    if (discard_fraction < 0.0 || discard_fraction >= 1.0)
        throw std::invalid_argument("ExperimentConfig: discard_fraction must be in [0,1)");
}

FrequencyReport make_report(std::vector<std::uint64_t> counts,
                            std::vector<double> oracle_probs) {
    FrequencyReport r;
    r.counts = std::move(counts);
    r.oracle_probs = std::move(oracle_probs);
    std::uint64_t total = 0;
    for (auto c : r.counts) total += c;
    r.frequencies.resize(r.counts.size(), 0.0);
    if (total > 0)
        for (std::size_t i = 0; i < r.counts.size(); ++i)
            r.frequencies[i] = static_cast<double>(r.counts[i]) / static_cast<double>(total);
    r.max_deviation = 0.0;
    for (std::size_t i = 0; i < r.frequencies.size() && i < r.oracle_probs.size(); ++i)
        r.max_deviation = std::max(r.max_deviation,
                                   std::abs(r.frequencies[i] - r.oracle_probs[i]));
    return r;
}

bool compare(const FrequencyReport& report, double tolerance) {
    return report.max_deviation <= tolerance;
}

namespace {

BeamSplitterPoint run_bs_point(Network& net, const ExperimentConfig& cfg, double p0, Rng& input) {
    BeamSplitterPoint pt;
    pt.psi0 = input.uniform(0.0, 360.0);
    pt.psi1 = input.uniform(0.0, 360.0);
    std::vector<double> pay0 = phase_payload(pt.psi0);
    std::vector<double> pay1 = phase_payload(pt.psi1);
    int discard = static_cast<int>(cfg.discard_fraction * cfg.events_per_point);
    net.reset_counters();
    for (int e = 0; e < cfg.events_per_point; ++e) {
        if (e == discard && discard > 0) net.reset_counters();
        Message msg;
        if (input.uniform() < p0) {
            msg.event_type = 0;
            msg.payload = pay0;
        } else {
            msg.event_type = 1;
            msg.payload = pay1;
        }
        net.route(msg, "src");
    }
    double q0 = oracle::bs_probability0(p0, pt.psi0, pt.psi1);
    pt.report = make_report({net.counter("N0"), net.counter("N1")}, {q0, 1.0 - q0});
    return pt;
}

} // namespace

std::vector<BeamSplitterPoint> run_beam_splitter_on(Network& net, const ExperimentConfig& cfg,
                                                    double p0, int num_phase_pairs) {
    cfg.validate();
    if (cfg.reinit_per_point)
        throw ConfigError("run_beam_splitter_on: cannot reinitialize an externally built network");
    if (p0 < 0.0 || p0 > 1.0) throw std::invalid_argument("run_beam_splitter: p0 must be in [0,1]");
    Rng input(mix_seed(cfg.seed, kInputStream));
    net.set_slm_seed(mix_seed(cfg.seed, kSlmStream));

    std::vector<BeamSplitterPoint> points;
    points.reserve(static_cast<std::size_t>(num_phase_pairs));
    for (int pair = 0; pair < num_phase_pairs; ++pair)
        points.push_back(run_bs_point(net, cfg, p0, input));
    return points;
}

std::vector<BeamSplitterPoint> run_beam_splitter(const ExperimentConfig& cfg, double p0,
                                                 int num_phase_pairs) {
    cfg.validate();
    Rng init(mix_seed(cfg.seed, kInitStream));
    if (!cfg.reinit_per_point) {
        Network net = build_beam_splitter(cfg.alpha, cfg.mode, init);
        return run_beam_splitter_on(net, cfg, p0, num_phase_pairs);
    }
    // Fresh DLM vectors per phase pair; the input stream is shared so the
    // psi sequence matches the carried-state run.
    Rng input(mix_seed(cfg.seed, kInputStream));
    std::vector<BeamSplitterPoint> points;
    points.reserve(static_cast<std::size_t>(num_phase_pairs));
    for (int pair = 0; pair < num_phase_pairs; ++pair) {
        Network net = build_beam_splitter(cfg.alpha, cfg.mode, init);
        net.set_slm_seed(mix_seed(cfg.seed, kSlmStream));
        points.push_back(run_bs_point(net, cfg, p0, input));
    }
    return points;
}

std::vector<MziPoint> run_mzi(const ExperimentConfig& cfg, double phi1, double phi0_step) {
    cfg.validate();
    if (phi0_step <= 0.0) throw std::invalid_argument("run_mzi: phi0_step must be positive");
    Rng init(mix_seed(cfg.seed, kInitStream));
    Rng input(mix_seed(cfg.seed, kInputStream));
    Network net = build_mzi(cfg.alpha, 0.0, phi1, cfg.mode, init);
    net.set_slm_seed(mix_seed(cfg.seed, kSlmStream));

    std::vector<MziPoint> points;
    int discard = static_cast<int>(cfg.discard_fraction * cfg.events_per_point);
    for (double phi0 = 0.0; phi0 < 360.0 - 1e-9; phi0 += phi0_step) {
        if (cfg.reinit_per_point) {
            net = build_mzi(cfg.alpha, 0.0, phi1, cfg.mode, init);
            net.set_slm_seed(mix_seed(cfg.seed, kSlmStream));
        }
        net.set_rotation("r0", phi0);
        double psi0 = input.uniform(0.0, 360.0);
        Message msg;
        msg.event_type = 0;
        msg.payload = phase_payload(psi0);
        net.reset_counters();
        for (int e = 0; e < cfg.events_per_point; ++e) {
            if (e == discard && discard > 0) net.reset_counters();
            net.route(msg, "src");
        }
        Complex a0 = std::exp(Complex{0.0, 1.0} * (psi0 * M_PI / 180.0));
        auto [b0, b1] = oracle::mzi_output(a0, 0.0, phi0, phi1);
        MziPoint pt;
        pt.phi0 = phi0;
        pt.first_bs = make_report({net.counter("N0"), net.counter("N1")}, {0.5, 0.5});
        pt.output = make_report({net.counter("N2"), net.counter("N3")},
                                {std::norm(b0), std::norm(b1)});
        points.push_back(std::move(pt));
    }
    return points;
}

namespace {

FrequencyReport run_cnot_row(Network& net, const ExperimentConfig& cfg, int qubit1, int qubit2) {
    if ((qubit1 != 0 && qubit1 != 1) || (qubit2 != 0 && qubit2 != 1))
        throw std::invalid_argument("run_cnot_circuit: qubit values must be 0 or 1");
    Message msg;
    msg.event_type = qubit1 + 2 * qubit2;
    msg.payload = {1.0, 0.0};
    int discard = static_cast<int>(cfg.discard_fraction * cfg.events_per_point);
    net.reset_counters();
    for (int e = 0; e < cfg.events_per_point; ++e) {
        if (e == discard && discard > 0) net.reset_counters();
        net.route(msg, "src");
    }
    return make_report({net.counter("n0"), net.counter("n1"), net.counter("n2"),
                        net.counter("n3")},
                       oracle::cnot_circuit_probabilities(qubit1, qubit2));
}

} // namespace

FrequencyReport run_cnot_circuit_on(Network& net, const ExperimentConfig& cfg, int qubit1,
                                    int qubit2) {
    cfg.validate();
    net.set_slm_seed(mix_seed(cfg.seed, kSlmStream));
    return run_cnot_row(net, cfg, qubit1, qubit2);
}

FrequencyReport run_cnot_circuit(const ExperimentConfig& cfg, int qubit1, int qubit2) {
    cfg.validate();
    Rng init(mix_seed(cfg.seed, kInitStream));
    Network net = build_cnot_circuit(cfg.alpha, cfg.mode, init);
    return run_cnot_circuit_on(net, cfg, qubit1, qubit2);
}

std::vector<CnotTableRow> run_cnot_table(const ExperimentConfig& cfg,
                                         int warmup_events_per_input) {
    cfg.validate();
    if (warmup_events_per_input < 0)
        throw std::invalid_argument("run_cnot_table: warm-up event count must be >= 0");
    Rng init(mix_seed(cfg.seed, kInitStream));
    Network net = build_cnot_circuit(cfg.alpha, cfg.mode, init);
    net.set_slm_seed(mix_seed(cfg.seed, kSlmStream));

    if (warmup_events_per_input > 0) {
        ExperimentConfig warm = cfg;
        warm.events_per_point = warmup_events_per_input;
        for (int q2 = 0; q2 < 2; ++q2)
            for (int q1 = 0; q1 < 2; ++q1) (void)run_cnot_row(net, warm, q1, q2);
    }
    std::vector<CnotTableRow> rows;
    for (int q2 = 0; q2 < 2; ++q2)
        for (int q1 = 0; q1 < 2; ++q1)
            rows.push_back(CnotTableRow{q1, q2, run_cnot_row(net, cfg, q1, q2)});
    return rows;
}

} // namespace dlmsim
