#include "dlmsim/dlm.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace dlmsim {

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

DlmState::DlmState(std::vector<double> values, double alpha, int num_event_types, int message_len)
    : values_(std::move(values)),
      alpha_(alpha),
      num_event_types_(num_event_types),
      message_len_(message_len) {
    if (num_event_types_ < 2) throw std::invalid_argument("DlmState: need at least 2 event types");
    if (message_len_ < 1) throw std::invalid_argument("DlmState: message length must be >= 1");
    if (!(alpha_ > 0.0 && alpha_ < 1.0)) throw std::invalid_argument("DlmState: alpha must be in (0,1)");
    if (static_cast<int>(values_.size()) != num_event_types_ * message_len_)
        throw std::invalid_argument("DlmState: dimension != num_event_types * message_len");
    if (std::abs(norm2(values_) - 1.0) > 1e-12)
        throw std::invalid_argument("DlmState: internal vector must be unit length");
}

DlmState DlmState::random(double alpha, int num_event_types, int message_len, Rng& rng) {
    return DlmState(rng.unit_vector(num_event_types * message_len), alpha, num_event_types,
                    message_len);
}

std::vector<double> DlmState::candidate(const CandidateRule& rule) const {
    std::vector<double> w(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) w[i] = alpha_ * values_[i];
    double xj = values_[static_cast<std::size_t>(rule.index)];
    w[static_cast<std::size_t>(rule.index)] =
        rule.sign * std::sqrt(1.0 - alpha_ * alpha_ + alpha_ * alpha_ * xj * xj);
    return w;
}

std::vector<double> DlmState::build_target(const Message& msg) const {
    if (msg.event_type < 0 || msg.event_type >= num_event_types_)
        throw std::invalid_argument("build_target: event type out of range");
    if (static_cast<int>(msg.payload.size()) != message_len_)
        throw std::invalid_argument("build_target: payload length mismatch");
    std::vector<double> target = values_;
    int base = msg.event_type * message_len_;
    for (int i = 0; i < message_len_; ++i)
        target[static_cast<std::size_t>(base + i)] = msg.payload[static_cast<std::size_t>(i)];
    return target;
}

CandidateRule DlmState::select_rule(std::span<const double> target) const {
    if (static_cast<int>(target.size()) != dim())
        throw std::invalid_argument("select_rule: target dimension mismatch");

    // C_j = -w_j.t differs from -alpha x.t only at the rule's index, so the
    // scan is O(D) after one dot product. Both signs are still scored for
    // every index: 2D candidate costs in total.
    double base = 0.0;
    for (int i = 0; i < dim(); ++i) base += alpha_ * values_[static_cast<std::size_t>(i)] * target[static_cast<std::size_t>(i)];

    CandidateRule best{0, +1};
    double best_cost = 0.0;
    bool first = true;
    for (int j = 0; j < dim(); ++j) {
        double xj = values_[static_cast<std::size_t>(j)];
        double tj = target[static_cast<std::size_t>(j)];
        double root = std::sqrt(1.0 - alpha_ * alpha_ + alpha_ * alpha_ * xj * xj);
        double common = base - alpha_ * xj * tj;
        for (int sign : {+1, -1}) {
            double cost = -(common + sign * root * tj);
            if (first || cost < best_cost) {
                best = CandidateRule{j, sign};
                best_cost = cost;
                first = false;
            }
        }
    }
    return best;
}

CandidateRule DlmState::learn(std::span<const double> target) {
    CandidateRule rule = select_rule(target);
    values_ = candidate(rule);
    return rule;
}

Message DlmState::output_for_block(int block) const {
    Message out;
    out.event_type = block;
    int base = block * message_len_;
    out.payload.assign(values_.begin() + base, values_.begin() + base + message_len_);
    double n = norm2(out.payload);
    if (n == 0.0) {
        // Degenerate block, only possible before any learning has happened.
        std::cerr << "dlmsim: warning: zero-norm output block " << block
                  << ", emitting basis vector\n";
        out.payload.assign(static_cast<std::size_t>(message_len_), 0.0);
        out.payload[0] = 1.0;
        return out;
    }
    for (auto& x : out.payload) x /= n;
    return out;
}

Message DlmState::deterministic_output(const CandidateRule& rule) const {
    return output_for_block(rule.index / message_len_);
}

Message DlmState::stochastic_output(double rng_draw) const {
    std::vector<double> masses = block_masses();
    double acc = 0.0;
    for (int k = 0; k < num_event_types_; ++k) {
        acc += masses[static_cast<std::size_t>(k)];
        if (rng_draw < acc) return output_for_block(k);
    }
    return output_for_block(num_event_types_ - 1);
}

std::vector<double> DlmState::block_masses() const {
    std::vector<double> masses(static_cast<std::size_t>(num_event_types_), 0.0);
    for (int i = 0; i < dim(); ++i)
        masses[static_cast<std::size_t>(i / message_len_)] +=
            values_[static_cast<std::size_t>(i)] * values_[static_cast<std::size_t>(i)];
    return masses;
}

std::vector<CandidateRule> all_candidate_rules(int num_event_types, int message_len) {
    std::vector<CandidateRule> rules;
    rules.reserve(static_cast<std::size_t>(2 * num_event_types * message_len));
    for (int j = 0; j < num_event_types * message_len; ++j)
        for (int sign : {+1, -1}) rules.push_back(CandidateRule{j, sign});
    return rules;
}

} // namespace dlmsim
