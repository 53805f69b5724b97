#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dlmsim/dlm.hpp"
#include "dlmsim/transform.hpp"

namespace dlmsim {

enum class OutputMode { deterministic, stochastic };

/// One simulated device: DLM 1 -> orthogonal transform -> DLM 2, with the
/// output event selected either by the rule DLM 2 chose (deterministic) or
/// by a uniform draw against the block masses (stochastic, SLM).
struct Processor {
    DlmState dlm1;
    Transform transform;
    DlmState dlm2;
    OutputMode output_mode = OutputMode::deterministic;

    Processor(DlmState d1, Transform t, DlmState d2, OutputMode mode);
};

/// Runs one event through a processor. rng_draw must be present exactly when
/// the processor is stochastic. Mutates both DLM states.
Message process_event(Processor& p, const Message& msg, std::optional<double> rng_draw = {});

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RouteResult {
    std::string sink_id;
    Message message;
};

/// Directed acyclic event-routing graph of processors, passive transforms,
/// sources and sinks. A single message is in flight at any time and event
/// processing is strictly sequential.
class Network {
public:
    void add_source(const std::string& id, int channels);
    void add_processor(const std::string& id, Processor proc);
    void add_passive(const std::string& id, Transform t);
    /// Sinks have a single input channel; the id doubles as the counter name.
    void add_sink(const std::string& id);
    void wire(const std::string& from, int out_channel, const std::string& to, int in_channel);
    /// Named counter that observes traffic on an output channel without
    /// consuming the message.
    void add_tap(const std::string& name, const std::string& node, int out_channel);

    /// Checks total routing, acyclicity and dimension consistency.
    /// Called implicitly by the first route().
    void validate() const;

    RouteResult route(const Message& source_msg, const std::string& entry);

    std::uint64_t counter(const std::string& name) const;
    /// Counter names: taps in declaration order, then sinks in declaration order.
    std::vector<std::string> counter_names() const;
    void reset_counters();

    void set_rotation(const std::string& passive_id, double phi_degrees);
    void set_slm_seed(std::uint64_t seed);

    int processor_count() const;
    /// Sum of DLM internal vectors across processors (two per processor).
    int dlm_count() const { return 2 * processor_count(); }
    const Processor& processor(const std::string& id) const;

private:
    enum class Kind { source, processor, passive, sink };

    struct Node {
        std::string id;
        Kind kind;
        int channels = 1;                  // outputs (source/processor) or 1
        std::optional<Processor> proc;
        std::optional<Transform> rot;
        std::uint64_t sink_count = 0;
    };

    struct Tap {
        std::string name;
        int node = 0;
        int channel = 0;
        std::uint64_t count = 0;
    };

    int node_index(const std::string& id) const;
    int require_new(const std::string& id);
    int out_channels(const Node& n) const;

    std::vector<Node> nodes_;
    std::map<std::string, int> by_id_;
    std::map<std::pair<int, int>, std::pair<int, int>> routes_;
    std::vector<Tap> taps_;
    Rng slm_rng_{0};
    mutable bool validated_ = false;
};

/// Fig-3-style Mach-Zehnder network: source -> BS1 -> R(phi0)/R(phi1) ->
/// BS2 -> sinks N2/N3, with taps N0/N1 on the BS1 outputs.
Network build_mzi(double alpha, double phi0_degrees, double phi1_degrees, OutputMode mode,
                  Rng& init_rng);

/// Two-qubit circuit H(q0), H(q1), CNOT, H(q0), H(q1): five processors over
/// four event types (ten DLM vectors), sinks n0..n3.
Network build_cnot_circuit(double alpha, OutputMode mode, Rng& init_rng);

/// Single beam splitter: source -> bs -> sinks N0/N1.
Network build_beam_splitter(double alpha, OutputMode mode, Rng& init_rng);

} // namespace dlmsim
