#include "dlmsim/network.hpp"

#include "dlmsim/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace dlmsim {

Processor::Processor(DlmState d1, Transform t, DlmState d2, OutputMode mode)
    : dlm1(std::move(d1)), transform(std::move(t)), dlm2(std::move(d2)), output_mode(mode) {
    if (dlm1.dim() != transform.dim() || dlm2.dim() != transform.dim())
        throw ConfigError("Processor: DLM dimensions must match the transform dimension");
    if (dlm1.num_event_types() != dlm2.num_event_types() ||
        dlm1.message_len() != dlm2.message_len())
        throw ConfigError("Processor: DLM 1 and DLM 2 shapes differ");
}

Message process_event(Processor& p, const Message& msg, std::optional<double> rng_draw) {
    if (p.output_mode == OutputMode::stochastic && !rng_draw)
        throw std::invalid_argument("process_event: stochastic processor needs an rng draw");
    p.dlm1.learn(p.dlm1.build_target(msg));
    std::vector<double> transformed = p.transform.apply(p.dlm1.values());
    CandidateRule rule = p.dlm2.learn(transformed);
    if (p.output_mode == OutputMode::stochastic) return p.dlm2.stochastic_output(*rng_draw);
    return p.dlm2.deterministic_output(rule);
}

int Network::node_index(const std::string& id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) throw ConfigError("network: unknown node '" + id + "'");
    return it->second;
}

int Network::require_new(const std::string& id) {
    if (by_id_.count(id)) throw ConfigError("network: duplicate node id '" + id + "'");
    int idx = static_cast<int>(nodes_.size());
    by_id_[id] = idx;
    validated_ = false;
    return idx;
}

void Network::add_source(const std::string& id, int channels) {
    if (channels < 1) throw ConfigError("network: source needs at least one channel");
    require_new(id);
    nodes_.push_back(Node{id, Kind::source, channels, {}, {}, 0});
}

void Network::add_processor(const std::string& id, Processor proc) {
    require_new(id);
    int channels = proc.dlm1.num_event_types();
    nodes_.push_back(Node{id, Kind::processor, channels, std::move(proc), {}, 0});
}

void Network::add_passive(const std::string& id, Transform t) {
    require_new(id);
    nodes_.push_back(Node{id, Kind::passive, 1, {}, std::move(t), 0});
}

void Network::add_sink(const std::string& id) {
    require_new(id);
    nodes_.push_back(Node{id, Kind::sink, 0, {}, {}, 0});
}

int Network::out_channels(const Node& n) const {
    switch (n.kind) {
        case Kind::source:
        case Kind::processor: return n.channels;
        case Kind::passive: return 1;
        case Kind::sink: return 0;
    }
    return 0;
}

void Network::wire(const std::string& from, int out_channel, const std::string& to,
                   int in_channel) {
    int f = node_index(from), t = node_index(to);
    const Node& fn = nodes_[static_cast<std::size_t>(f)];
    const Node& tn = nodes_[static_cast<std::size_t>(t)];
    if (out_channel < 0 || out_channel >= out_channels(fn))
        throw ConfigError("network: output channel out of range on '" + from + "'");
    int in_limit = 1;
    if (tn.kind == Kind::processor) in_limit = tn.proc->dlm1.num_event_types();
    if (tn.kind == Kind::source) throw ConfigError("network: cannot wire into a source");
    if (in_channel < 0 || in_channel >= in_limit)
        throw ConfigError("network: input channel out of range on '" + to + "'");
    auto key = std::make_pair(f, out_channel);
    if (routes_.count(key))
        throw ConfigError("network: output '" + from + "' channel already wired");
    // Event types are not coerced between processors of different arity.
    if (fn.kind == Kind::processor && tn.kind == Kind::processor &&
        fn.proc->dlm1.num_event_types() != tn.proc->dlm1.num_event_types())
        throw ConfigError("network: processors '" + from + "' and '" + to +
                          "' have different event-type counts");
    routes_[key] = {t, in_channel};
    validated_ = false;
}

void Network::add_tap(const std::string& name, const std::string& node, int out_channel) {
    int n = node_index(node);
    if (out_channel < 0 || out_channel >= out_channels(nodes_[static_cast<std::size_t>(n)]))
        throw ConfigError("network: tap channel out of range on '" + node + "'");
    taps_.push_back(Tap{name, n, out_channel, 0});
}

void Network::validate() const {
    bool has_source = false;
    for (const auto& n : nodes_) {
        if (n.kind == Kind::source) has_source = true;
        for (int c = 0; c < out_channels(n); ++c)
            if (!routes_.count({node_index(n.id), c}))
                throw ConfigError("network: unwired output channel " + std::to_string(c) +
                                  " on '" + n.id + "'");
    }
    if (!has_source) throw ConfigError("network: no source declared");

    // Cycle check by DFS over the wire graph.
    std::vector<int> state(nodes_.size(), 0); // 0 unseen, 1 on stack, 2 done
    auto dfs = [&](auto&& self, int v) -> void {
        state[static_cast<std::size_t>(v)] = 1;
        for (const auto& [key, dst] : routes_) {
            if (key.first != v) continue;
            int w = dst.first;
            if (state[static_cast<std::size_t>(w)] == 1)
                throw ConfigError("network: routing graph has a cycle through '" +
                                  nodes_[static_cast<std::size_t>(w)].id + "'");
            if (state[static_cast<std::size_t>(w)] == 0) self(self, w);
        }
        state[static_cast<std::size_t>(v)] = 2;
    };
    for (std::size_t v = 0; v < nodes_.size(); ++v)
        if (state[v] == 0) dfs(dfs, static_cast<int>(v));
    validated_ = true;
}

RouteResult Network::route(const Message& source_msg, const std::string& entry) {
    if (!validated_) validate();
    int at = node_index(entry);
    if (nodes_[static_cast<std::size_t>(at)].kind != Kind::source)
        throw ConfigError("network: entry node '" + entry + "' is not a source");

    Message msg = source_msg;
    int out_channel = msg.event_type;
    std::size_t steps = 0;
    while (true) {
        if (++steps > nodes_.size() + 1)
            throw ConfigError("network: route did not reach a sink");
        auto it = routes_.find({at, out_channel});
        if (it == routes_.end()) throw ConfigError("network: broken route");
        for (auto& tap : taps_)
            if (tap.node == at && tap.channel == out_channel) ++tap.count;
        auto [next, in_channel] = it->second;
        Node& n = nodes_[static_cast<std::size_t>(next)];
        switch (n.kind) {
            case Kind::source: throw ConfigError("network: message routed into a source");
            case Kind::sink:
                ++n.sink_count;
                return RouteResult{n.id, std::move(msg)};
            case Kind::passive:
                msg.payload = n.rot->apply(msg.payload);
                at = next;
                out_channel = 0;
                continue;
            case Kind::processor: {
                msg.event_type = in_channel;
                std::optional<double> draw;
                if (n.proc->output_mode == OutputMode::stochastic) draw = slm_rng_.uniform();
                msg = process_event(*n.proc, msg, draw);
                at = next;
                out_channel = msg.event_type;
                continue;
            }
        }
    }
}

std::uint64_t Network::counter(const std::string& name) const {
    for (const auto& tap : taps_)
        if (tap.name == name) return tap.count;
    auto it = by_id_.find(name);
    if (it != by_id_.end()) {
        const Node& n = nodes_[static_cast<std::size_t>(it->second)];
        if (n.kind == Kind::sink) return n.sink_count;
    }
    throw ConfigError("network: unknown counter '" + name + "'");
}

std::vector<std::string> Network::counter_names() const {
    std::vector<std::string> names;
    for (const auto& tap : taps_) names.push_back(tap.name);
    for (const auto& n : nodes_)
        if (n.kind == Kind::sink) names.push_back(n.id);
    return names;
}

void Network::reset_counters() {
    for (auto& tap : taps_) tap.count = 0;
    for (auto& n : nodes_) n.sink_count = 0;
}

void Network::set_rotation(const std::string& passive_id, double phi_degrees) {
    Node& n = nodes_[static_cast<std::size_t>(node_index(passive_id))];
    if (n.kind != Kind::passive)
        throw ConfigError("network: '" + passive_id + "' is not a passive node");
    n.rot = plane_rotation(phi_degrees);
}

void Network::set_slm_seed(std::uint64_t seed) { slm_rng_ = Rng(seed); }

int Network::processor_count() const {
    return static_cast<int>(
        std::count_if(nodes_.begin(), nodes_.end(),
                      [](const Node& n) { return n.kind == Kind::processor; }));
}

const Processor& Network::processor(const std::string& id) const {
    const Node& n = nodes_[static_cast<std::size_t>(node_index(id))];
    if (n.kind != Kind::processor) throw ConfigError("network: '" + id + "' is not a processor");
    return *n.proc;
}

namespace {

Processor make_processor(const Transform& t, int num_event_types, int message_len, double alpha,
                         OutputMode mode, Rng& rng) {
    DlmState d1 = DlmState::random(alpha, num_event_types, message_len, rng);
    DlmState d2 = DlmState::random(alpha, num_event_types, message_len, rng);
    return Processor(std::move(d1), t, std::move(d2), mode);
}

} // namespace

Network build_beam_splitter(double alpha, OutputMode mode, Rng& init_rng) {
    Network net;
    net.add_source("src", 2);
    net.add_processor("bs", make_processor(beam_splitter_transform(), 2, 2, alpha, mode, init_rng));
    net.add_sink("N0");
    net.add_sink("N1");
    net.wire("src", 0, "bs", 0);
    net.wire("src", 1, "bs", 1);
    net.wire("bs", 0, "N0", 0);
    net.wire("bs", 1, "N1", 0);
    return net;
}

Network build_mzi(double alpha, double phi0_degrees, double phi1_degrees, OutputMode mode,
                  Rng& init_rng) {
    Network net;
    net.add_source("src", 2);
    net.add_processor("bs1",
                      make_processor(beam_splitter_transform(), 2, 2, alpha, mode, init_rng));
    net.add_passive("r0", plane_rotation(phi0_degrees));
    net.add_passive("r1", plane_rotation(phi1_degrees));
    net.add_processor("bs2",
                      make_processor(beam_splitter_transform(), 2, 2, alpha, mode, init_rng));
    net.add_sink("N2");
    net.add_sink("N3");
    net.add_tap("N0", "bs1", 0);
    net.add_tap("N1", "bs1", 1);
    net.wire("src", 0, "bs1", 0);
    net.wire("src", 1, "bs1", 1);
    net.wire("bs1", 0, "r0", 0);
    net.wire("bs1", 1, "r1", 0);
    net.wire("r0", 0, "bs2", 0);
    net.wire("r1", 0, "bs2", 1);
    net.wire("bs2", 0, "N2", 0);
    net.wire("bs2", 1, "N3", 0);
    return net;
}

Network build_cnot_circuit(double alpha, OutputMode mode, Rng& init_rng) {
    Network net;
    Transform h0 = lift_single_qubit(oracle::hadamard_gate(), 0);
    Transform h1 = lift_single_qubit(oracle::hadamard_gate(), 1);
    net.add_source("src", 4);
    net.add_processor("h1a", make_processor(h0, 4, 2, alpha, mode, init_rng));
    net.add_processor("h2a", make_processor(h1, 4, 2, alpha, mode, init_rng));
    net.add_processor("cnot", make_processor(cnot_transform(), 4, 2, alpha, mode, init_rng));
    net.add_processor("h1b", make_processor(h0, 4, 2, alpha, mode, init_rng));
    net.add_processor("h2b", make_processor(h1, 4, 2, alpha, mode, init_rng));
    for (int k = 0; k < 4; ++k) {
        net.add_sink("n" + std::to_string(k));
        net.wire("src", k, "h1a", k);
        net.wire("h1a", k, "h2a", k);
        net.wire("h2a", k, "cnot", k);
        net.wire("cnot", k, "h1b", k);
        net.wire("h1b", k, "h2b", k);
        net.wire("h2b", k, "n" + std::to_string(k), 0);
    }
    return net;
}

} // namespace dlmsim
