#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dlmsim/network.hpp"

namespace dlmsim {

/// Parse or semantic failure, positioned in the netlist text.
class NetlistError : public std::runtime_error {
public:
    NetlistError(int line, int column, const std::string& message)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " +
                             message),
          line(line),
          column(column) {}

    int line;
    int column;
};

/// Parsed form of the line-oriented netlist grammar:
///
///   # comment
///   param alpha 0.99 | param mode deterministic|stochastic | param seed 42
///   source <id> <channels>
///   proc <id> beamsplitter | hadamard-lift <qubit> | cnot
///            | custom-matrix <dim> <dim*dim row-major entries>
///   passive <id> rotation <phi-degrees>
///   wire <node>.<ch> -> <node>.<ch>
///   sink <id> from <node>.<ch>
///   tap <name> <node>.<ch>
struct NetlistDocument {
    double alpha = 0.99;
    OutputMode mode = OutputMode::deterministic;
    std::uint64_t seed = 1;

    enum class ProcKind { beamsplitter, hadamard_lift, cnot, custom_matrix };

    struct ProcDecl {
        std::string id;
        ProcKind kind = ProcKind::beamsplitter;
        int qubit = 0;               // hadamard-lift only
        int dim = 0;                 // custom-matrix only
        std::vector<double> matrix;  // custom-matrix only, row-major
        int line = 0;
    };
    struct PassiveDecl {
        std::string id;
        double phi_degrees = 0.0;
        int line = 0;
    };
    struct SourceDecl {
        std::string id;
        int channels = 0;
        int line = 0;
    };
    struct SinkDecl {
        std::string id;
        std::string node;
        int channel = 0;
        int line = 0;
    };
    struct WireDecl {
        std::string from;
        int from_channel = 0;
        std::string to;
        int to_channel = 0;
        int line = 0;
    };
    struct TapDecl {
        std::string name;
        std::string node;
        int channel = 0;
        int line = 0;
    };

    std::vector<SourceDecl> sources;
    std::vector<ProcDecl> procs;
    std::vector<PassiveDecl> passives;
    std::vector<WireDecl> wires;
    std::vector<SinkDecl> sinks;
    std::vector<TapDecl> taps;
};

/// Parses and semantically validates; throws NetlistError on the first
/// problem (syntax, duplicate id, dangling wire, dimension mismatch, cycle,
/// missing source).
NetlistDocument parse_netlist(const std::string& text);

/// Canonical text form; parse_netlist(print_netlist(doc)) is equivalent.
std::string print_netlist(const NetlistDocument& doc);

/// Instantiates the network, drawing DLM initial vectors from init_rng in
/// declaration order.
Network build_network(const NetlistDocument& doc, Rng& init_rng);

} // namespace dlmsim
