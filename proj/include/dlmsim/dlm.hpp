#pragma once

#include <span>
#include <vector>

#include "dlmsim/rng.hpp"

namespace dlmsim {

/// A message traveling on a network wire: an event type plus a unit payload.
struct Message {
    int event_type = 0;
    std::vector<double> payload;
};

/// One of the 2D candidate update rules: which component receives the
/// square-root replacement and with which sign.
struct CandidateRule {
    int index = 0;
    int sign = +1;

    bool operator==(const CandidateRule&) const = default;
};

/// Deterministic learning machine state: a unit vector of N_e * N_m reals
/// plus the learning parameter alpha.
///
/// Per input event the machine builds a target vector, scans all 2D candidate
/// updates for the one minimizing the cost -w.target, and replaces its
/// internal vector by that candidate. The chosen rule also determines the
/// output event type in deterministic mode.
class DlmState {
public:
    DlmState(std::vector<double> values, double alpha, int num_event_types, int message_len);

    /// Internal vector drawn uniformly from the unit sphere.
    static DlmState random(double alpha, int num_event_types, int message_len, Rng& rng);

    int dim() const { return static_cast<int>(values_.size()); }
    int num_event_types() const { return num_event_types_; }
    int message_len() const { return message_len_; }
    double alpha() const { return alpha_; }
    const std::vector<double>& values() const { return values_; }

    /// Candidate internal state w for one rule: all components shrunk by
    /// alpha except the rule's index, which becomes
    /// sign * sqrt(1 - alpha^2 + alpha^2 x_j^2). Always unit norm.
    std::vector<double> candidate(const CandidateRule& rule) const;

    /// Target vector: internal values with the block for msg.event_type
    /// overwritten by the payload.
    std::vector<double> build_target(const Message& msg) const;

    /// Rule minimizing C_j = -w_j . target over all 2D candidates.
    /// Ties break to the lowest index, + sign before -.
    CandidateRule select_rule(std::span<const double> target) const;

    /// select_rule followed by replacing the internal vector with the winner.
    CandidateRule learn(std::span<const double> target);

    /// Output event derived from the rule chosen by the last update:
    /// event type = rule.index / N_m, payload = that block, normalized.
    Message deterministic_output(const CandidateRule& rule) const;

    /// Output event type chosen by locating rng_draw in the partition of
    /// [0,1) by per-block probability masses; payload as above.
    Message stochastic_output(double rng_draw) const;

    /// Block probability masses p_k = sum of squares of block k.
    std::vector<double> block_masses() const;

private:
    Message output_for_block(int block) const;

    std::vector<double> values_;
    double alpha_;
    int num_event_types_;
    int message_len_;
};

/// All 2*N_e*N_m rules in tie-break order.
std::vector<CandidateRule> all_candidate_rules(int num_event_types, int message_len);

double norm2(std::span<const double> v);

} // namespace dlmsim
