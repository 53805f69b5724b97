#pragma once

#include <cstdint>
#include <vector>

#include "dlmsim/network.hpp"

namespace dlmsim {

struct ExperimentConfig {
    double alpha = 0.99;
    int events_per_point = 10000;
    std::uint64_t seed = 1;
    OutputMode mode = OutputMode::deterministic;
    double discard_fraction = 0.0;   // fraction of initial events excluded from counts
    bool reinit_per_point = false;   // fresh DLM vectors at each sweep point

    void validate() const;
};

/// Counts and frequencies over the retained events of one measurement point,
/// with the quantum-theory probabilities attached.
struct FrequencyReport {
    std::vector<std::uint64_t> counts;
    std::vector<double> frequencies;
    std::vector<double> oracle_probs;
    double max_deviation = 0.0;
};

FrequencyReport make_report(std::vector<std::uint64_t> counts, std::vector<double> oracle_probs);

/// pass iff max_i |f_i - p_i| <= tolerance
bool compare(const FrequencyReport& report, double tolerance);

struct BeamSplitterPoint {
    double psi0 = 0.0;
    double psi1 = 0.0;
    FrequencyReport report;
};

struct MziPoint {
    double phi0 = 0.0;
    FrequencyReport first_bs; // N0, N1 against (1/2, 1/2)
    FrequencyReport output;   // N2, N3 against the quantum output probabilities
};

/// Random phase pairs, events split over the two input channels with
/// probability p0; one report per pair.
std::vector<BeamSplitterPoint> run_beam_splitter(const ExperimentConfig& cfg, double p0,
                                                 int num_phase_pairs);
std::vector<BeamSplitterPoint> run_beam_splitter_on(Network& net, const ExperimentConfig& cfg,
                                                    double p0, int num_phase_pairs);

/// phi0 sweep 0..360 (exclusive) in phi0_step increments, events only on
/// input channel 0, DLM state carried across points unless reinit is set.
std::vector<MziPoint> run_mzi(const ExperimentConfig& cfg, double phi1, double phi0_step);

/// Constant basis-state input k = qubit1 + 2*qubit2 with payload (1,0) into
/// the H/CNOT/H circuit; first discard_fraction of events excluded.
FrequencyReport run_cnot_circuit(const ExperimentConfig& cfg, int qubit1, int qubit2);
FrequencyReport run_cnot_circuit_on(Network& net, const ExperimentConfig& cfg, int qubit1,
                                    int qubit2);

struct CnotTableRow {
    int qubit1 = 0;
    int qubit2 = 0;
    FrequencyReport report;
};

/// Table protocol: the DLM vectors are initialized once, then the four basis
/// inputs are fed in sequence through the same network, one row per input.
/// An optional warm-up pass (shorter rows over the same input sequence, not
/// counted) precedes the measured rows.
std::vector<CnotTableRow> run_cnot_table(const ExperimentConfig& cfg,
                                         int warmup_events_per_input = 0);

} // namespace dlmsim
