#include "dlmsim/netlist.hpp"

#include <map>
#include <set>
#include <sstream>

#include "dlmsim/oracle.hpp"

namespace dlmsim {

namespace {

struct Token {
    std::string text;
    int column = 0; // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        tokens.push_back(Token{line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return tokens;
}

double parse_double(const Token& t, int line) {
    try {
        std::size_t used = 0;
        double v = std::stod(t.text, &used);
        if (used != t.text.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw NetlistError(line, t.column, "expected a number, got '" + t.text + "'");
    }
}

long parse_int(const Token& t, int line) {
    try {
        std::size_t used = 0;
        long v = std::stol(t.text, &used);
        if (used != t.text.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw NetlistError(line, t.column, "expected an integer, got '" + t.text + "'");
    }
}

// "node.channel"
std::pair<std::string, int> parse_endpoint(const Token& t, int line) {
    auto dot = t.text.rfind('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == t.text.size())
        throw NetlistError(line, t.column, "expected <node>.<channel>, got '" + t.text + "'");
    Token ch{t.text.substr(dot + 1), t.column + static_cast<int>(dot) + 1};
    return {t.text.substr(0, dot), static_cast<int>(parse_int(ch, line))};
}

void expect_count(const std::vector<Token>& tokens, std::size_t n, int line,
                  const std::string& what) {
    if (tokens.size() != n)
        throw NetlistError(line, tokens.front().column,
                           what + ": expected " + std::to_string(n - 1) + " argument(s)");
}

// Semantic pass: duplicate ids, references, channel ranges, wiring totality,
// cycles, source presence. Mirrors the checks Network enforces, with
// positions attached.
void validate_document(const NetlistDocument& doc) {
    struct NodeInfo {
        int out_channels;
        int in_channels;
        int event_types; // 0 for non-processors
        int line;
    };
    std::map<std::string, NodeInfo> nodes;
    auto declare = [&nodes](const std::string& id, NodeInfo info, int line) {
        if (!nodes.emplace(id, info).second)
            throw NetlistError(line, 1, "duplicate node id '" + id + "'");
    };
    for (const auto& s : doc.sources) declare(s.id, {s.channels, 0, 0, s.line}, s.line);
    for (const auto& p : doc.procs) {
        int ne = 0;
        switch (p.kind) {
            case NetlistDocument::ProcKind::beamsplitter: ne = 2; break;
            case NetlistDocument::ProcKind::hadamard_lift:
            case NetlistDocument::ProcKind::cnot: ne = 4; break;
            case NetlistDocument::ProcKind::custom_matrix: ne = p.dim / 2; break;
        }
        declare(p.id, {ne, ne, ne, p.line}, p.line);
    }
    for (const auto& p : doc.passives) declare(p.id, {1, 1, 0, p.line}, p.line);
    for (const auto& s : doc.sinks) declare(s.id, {0, 1, 0, s.line}, s.line);

    auto lookup = [&nodes](const std::string& id, int line, int column) -> const NodeInfo& {
        auto it = nodes.find(id);
        if (it == nodes.end())
            throw NetlistError(line, column, "reference to undeclared node '" + id + "'");
        return it->second;
    };

    std::set<std::pair<std::string, int>> wired_outputs;
    std::vector<std::pair<std::string, std::string>> edges;
    auto add_edge = [&](const std::string& from, int from_ch, const std::string& to, int to_ch,
                        int line) {
        const NodeInfo& f = lookup(from, line, 1);
        const NodeInfo& t = lookup(to, line, 1);
        if (from_ch < 0 || from_ch >= f.out_channels)
            throw NetlistError(line, 1, "output channel " + std::to_string(from_ch) +
                                            " out of range on '" + from + "'");
        if (to_ch < 0 || to_ch >= std::max(t.in_channels, 1))
            throw NetlistError(line, 1, "input channel " + std::to_string(to_ch) +
                                            " out of range on '" + to + "'");
        if (f.event_types > 0 && t.event_types > 0 && f.event_types != t.event_types)
            throw NetlistError(line, 1, "processors '" + from + "' and '" + to +
                                            "' have different event-type counts");
        if (!wired_outputs.insert({from, from_ch}).second)
            throw NetlistError(line, 1,
                               "output '" + from + "." + std::to_string(from_ch) +
                                   "' is wired more than once");
        edges.emplace_back(from, to);

        // Cycle check after each added edge, so the diagnostic points at the
        // wire that closed the loop.
        std::map<std::string, int> state;
        auto dfs = [&edges, &state](auto&& self, const std::string& v) -> bool {
            state[v] = 1;
            for (const auto& [a, b] : edges) {
                if (a != v) continue;
                if (state[b] == 1) return true;
                if (state[b] == 0 && self(self, b)) return true;
            }
            state[v] = 2;
            return false;
        };
        if (dfs(dfs, from))
            throw NetlistError(line, 1, "wire creates a routing cycle");
    };

    for (const auto& w : doc.wires) {
        const NodeInfo& t = lookup(w.to, w.line, 1);
        if (t.in_channels == 0 && t.out_channels > 0 && t.event_types == 0)
            throw NetlistError(w.line, 1, "cannot wire into source '" + w.to + "'");
        add_edge(w.from, w.from_channel, w.to, w.to_channel, w.line);
    }
    for (const auto& s : doc.sinks) add_edge(s.node, s.channel, s.id, 0, s.line);
    for (const auto& t : doc.taps) {
        const NodeInfo& n = lookup(t.node, t.line, 1);
        if (t.channel < 0 || t.channel >= n.out_channels)
            throw NetlistError(t.line, 1, "tap channel out of range on '" + t.node + "'");
    }

    if (doc.sources.empty()) throw NetlistError(0, 0, "no source declared");
    for (const auto& [id, info] : nodes)
        for (int c = 0; c < info.out_channels; ++c)
            if (!wired_outputs.count({id, c}))
                throw NetlistError(info.line, 1,
                                   "output '" + id + "." + std::to_string(c) + "' is not wired");
}

} // namespace

NetlistDocument parse_netlist(const std::string& text) {
    NetlistDocument doc;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        const std::string& kw = tokens[0].text;
        if (kw == "param") {
            expect_count(tokens, 3, line_no, "param");
            const std::string& name = tokens[1].text;
            if (name == "alpha") {
                doc.alpha = parse_double(tokens[2], line_no);
                if (!(doc.alpha > 0.0 && doc.alpha < 1.0))
                    throw NetlistError(line_no, tokens[2].column, "alpha must be in (0,1)");
            } else if (name == "mode") {
                if (tokens[2].text == "deterministic")
                    doc.mode = OutputMode::deterministic;
                else if (tokens[2].text == "stochastic")
                    doc.mode = OutputMode::stochastic;
                else
                    throw NetlistError(line_no, tokens[2].column,
                                       "mode must be deterministic or stochastic");
            } else if (name == "seed") {
                doc.seed = static_cast<std::uint64_t>(parse_int(tokens[2], line_no));
            } else {
                throw NetlistError(line_no, tokens[1].column, "unknown parameter '" + name + "'");
            }
        } else if (kw == "source") {
            expect_count(tokens, 3, line_no, "source");
            NetlistDocument::SourceDecl s;
            s.id = tokens[1].text;
            s.channels = static_cast<int>(parse_int(tokens[2], line_no));
            if (s.channels < 1)
                throw NetlistError(line_no, tokens[2].column, "source needs >= 1 channel");
            s.line = line_no;
            doc.sources.push_back(std::move(s));
        } else if (kw == "proc") {
            if (tokens.size() < 3)
                throw NetlistError(line_no, tokens[0].column, "proc: expected <id> <kind>");
            NetlistDocument::ProcDecl p;
            p.id = tokens[1].text;
            p.line = line_no;
            const std::string& kind = tokens[2].text;
            if (kind == "beamsplitter") {
                expect_count(tokens, 3, line_no, "proc beamsplitter");
                p.kind = NetlistDocument::ProcKind::beamsplitter;
            } else if (kind == "hadamard-lift") {
                expect_count(tokens, 4, line_no, "proc hadamard-lift");
                p.kind = NetlistDocument::ProcKind::hadamard_lift;
                p.qubit = static_cast<int>(parse_int(tokens[3], line_no));
                if (p.qubit != 0 && p.qubit != 1)
                    throw NetlistError(line_no, tokens[3].column, "qubit must be 0 or 1");
            } else if (kind == "cnot") {
                expect_count(tokens, 3, line_no, "proc cnot");
                p.kind = NetlistDocument::ProcKind::cnot;
            } else if (kind == "custom-matrix") {
                if (tokens.size() < 4)
                    throw NetlistError(line_no, tokens[2].column,
                                       "custom-matrix: expected <dim> followed by entries");
                p.kind = NetlistDocument::ProcKind::custom_matrix;
                p.dim = static_cast<int>(parse_int(tokens[3], line_no));
                if (p.dim < 2 || p.dim % 2 != 0)
                    throw NetlistError(line_no, tokens[3].column,
                                       "custom-matrix dimension must be even and >= 2");
                std::size_t need = static_cast<std::size_t>(p.dim) * static_cast<std::size_t>(p.dim);
                if (tokens.size() != 4 + need)
                    throw NetlistError(line_no, tokens[3].column,
                                       "custom-matrix: expected " + std::to_string(need) +
                                           " matrix entries");
                for (std::size_t i = 0; i < need; ++i)
                    p.matrix.push_back(parse_double(tokens[4 + i], line_no));
            } else {
                throw NetlistError(line_no, tokens[2].column,
                                   "unknown processor kind '" + kind + "'");
            }
            doc.procs.push_back(std::move(p));
        } else if (kw == "passive") {
            expect_count(tokens, 4, line_no, "passive");
            if (tokens[2].text != "rotation")
                throw NetlistError(line_no, tokens[2].column,
                                   "unknown passive kind '" + tokens[2].text + "'");
            NetlistDocument::PassiveDecl p;
            p.id = tokens[1].text;
            p.phi_degrees = parse_double(tokens[3], line_no);
            p.line = line_no;
            doc.passives.push_back(std::move(p));
        } else if (kw == "wire") {
            expect_count(tokens, 4, line_no, "wire");
            if (tokens[2].text != "->")
                throw NetlistError(line_no, tokens[2].column, "expected '->' in wire");
            NetlistDocument::WireDecl w;
            auto [from, from_ch] = parse_endpoint(tokens[1], line_no);
            auto [to, to_ch] = parse_endpoint(tokens[3], line_no);
            w.from = from;
            w.from_channel = from_ch;
            w.to = to;
            w.to_channel = to_ch;
            w.line = line_no;
            doc.wires.push_back(std::move(w));
        } else if (kw == "sink") {
            expect_count(tokens, 4, line_no, "sink");
            if (tokens[2].text != "from")
                throw NetlistError(line_no, tokens[2].column, "expected 'from' in sink");
            NetlistDocument::SinkDecl s;
            s.id = tokens[1].text;
            auto [node, ch] = parse_endpoint(tokens[3], line_no);
            s.node = node;
            s.channel = ch;
            s.line = line_no;
            doc.sinks.push_back(std::move(s));
        } else if (kw == "tap") {
            expect_count(tokens, 3, line_no, "tap");
            NetlistDocument::TapDecl t;
            t.name = tokens[1].text;
            auto [node, ch] = parse_endpoint(tokens[2], line_no);
            t.node = node;
            t.channel = ch;
            t.line = line_no;
            doc.taps.push_back(std::move(t));
        } else {
            throw NetlistError(line_no, tokens[0].column, "unknown directive '" + kw + "'");
        }
    }
    validate_document(doc);
    return doc;
}

std::string print_netlist(const NetlistDocument& doc) {
    std::ostringstream out;
    out << "param alpha " << doc.alpha << '\n';
    out << "param mode "
        << (doc.mode == OutputMode::deterministic ? "deterministic" : "stochastic") << '\n';
    out << "param seed " << doc.seed << '\n';
    for (const auto& s : doc.sources) out << "source " << s.id << ' ' << s.channels << '\n';
    for (const auto& p : doc.procs) {
        out << "proc " << p.id << ' ';
        switch (p.kind) {
            case NetlistDocument::ProcKind::beamsplitter: out << "beamsplitter"; break;
            case NetlistDocument::ProcKind::hadamard_lift: out << "hadamard-lift " << p.qubit; break;
            case NetlistDocument::ProcKind::cnot: out << "cnot"; break;
            case NetlistDocument::ProcKind::custom_matrix:
                out << "custom-matrix " << p.dim;
                for (double v : p.matrix) out << ' ' << v;
                break;
        }
        out << '\n';
    }
    for (const auto& p : doc.passives)
        out << "passive " << p.id << " rotation " << p.phi_degrees << '\n';
    for (const auto& w : doc.wires)
        out << "wire " << w.from << '.' << w.from_channel << " -> " << w.to << '.'
            << w.to_channel << '\n';
    for (const auto& s : doc.sinks)
        out << "sink " << s.id << " from " << s.node << '.' << s.channel << '\n';
    for (const auto& t : doc.taps) out << "tap " << t.name << ' ' << t.node << '.' << t.channel << '\n';
    return out.str();
}

Network build_network(const NetlistDocument& doc, Rng& init_rng) {
    Network net;
    for (const auto& s : doc.sources) net.add_source(s.id, s.channels);
    for (const auto& p : doc.procs) {
        Transform t = [&]() -> Transform {
            switch (p.kind) {
                case NetlistDocument::ProcKind::beamsplitter: return beam_splitter_transform();
                case NetlistDocument::ProcKind::hadamard_lift:
                    return lift_single_qubit(oracle::hadamard_gate(), p.qubit);
                case NetlistDocument::ProcKind::cnot: return cnot_transform();
                case NetlistDocument::ProcKind::custom_matrix:
                    try {
                        return Transform(p.dim, p.matrix);
                    } catch (const std::invalid_argument& e) {
                        throw NetlistError(p.line, 1, e.what());
                    }
            }
            throw NetlistError(p.line, 1, "unreachable");
        }();
        int ne = t.dim() / 2;
        DlmState d1 = DlmState::random(doc.alpha, ne, 2, init_rng);
        DlmState d2 = DlmState::random(doc.alpha, ne, 2, init_rng);
        net.add_processor(p.id, Processor(std::move(d1), std::move(t), std::move(d2), doc.mode));
    }
    for (const auto& p : doc.passives) net.add_passive(p.id, plane_rotation(p.phi_degrees));
    for (const auto& s : doc.sinks) net.add_sink(s.id);
    for (const auto& w : doc.wires) net.wire(w.from, w.from_channel, w.to, w.to_channel);
    for (const auto& s : doc.sinks) net.wire(s.node, s.channel, s.id, 0);
    for (const auto& t : doc.taps) net.add_tap(t.name, t.node, t.channel);
    net.set_slm_seed(mix_seed(doc.seed, 3));
    net.validate();
    return net;
}

} // namespace dlmsim
