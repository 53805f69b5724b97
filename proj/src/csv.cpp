#include "dlmsim/csv.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace dlmsim {

std::string format_fixed(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

std::string emit_csv(const std::vector<BeamSplitterPoint>& points) {
    if (points.empty()) throw std::invalid_argument("emit_csv: empty report list");
    std::ostringstream out;
    out << "psi0,psi1,N0,N1,f0,f1,p0,p1,max_dev\n";
    for (const auto& pt : points) {
        const auto& r = pt.report;
        out << format_fixed(pt.psi0) << ',' << format_fixed(pt.psi1) << ',' << r.counts[0]
            << ',' << r.counts[1] << ',' << format_fixed(r.frequencies[0]) << ','
            << format_fixed(r.frequencies[1]) << ',' << format_fixed(r.oracle_probs[0]) << ','
            << format_fixed(r.oracle_probs[1]) << ',' << format_fixed(r.max_deviation) << '\n';
    }
    return out.str();
}

std::string emit_csv(const std::vector<MziPoint>& points) {
    if (points.empty()) throw std::invalid_argument("emit_csv: empty report list");
    std::ostringstream out;
    out << "phi0,N0,N1,N2,N3,f0,f1,f2,f3,p0,p1,p2,p3,max_dev\n";
    for (const auto& pt : points) {
        const auto& a = pt.first_bs;
        const auto& b = pt.output;
        double max_dev = std::max(a.max_deviation, b.max_deviation);
        out << format_fixed(pt.phi0) << ',' << a.counts[0] << ',' << a.counts[1] << ','
            << b.counts[0] << ',' << b.counts[1] << ',' << format_fixed(a.frequencies[0]) << ','
            << format_fixed(a.frequencies[1]) << ',' << format_fixed(b.frequencies[0]) << ','
            << format_fixed(b.frequencies[1]) << ',' << format_fixed(a.oracle_probs[0]) << ','
            << format_fixed(a.oracle_probs[1]) << ',' << format_fixed(b.oracle_probs[0]) << ','
            << format_fixed(b.oracle_probs[1]) << ',' << format_fixed(max_dev) << '\n';
    }
    return out.str();
}

std::string emit_csv(const FrequencyReport& report, const std::vector<std::string>& labels) {
    if (labels.size() != report.counts.size())
        throw std::invalid_argument("emit_csv: label count mismatch");
    std::ostringstream out;
    for (std::size_t i = 0; i < labels.size(); ++i) out << 'N' << labels[i] << ',';
    for (std::size_t i = 0; i < labels.size(); ++i) out << 'f' << labels[i] << ',';
    for (std::size_t i = 0; i < labels.size(); ++i) out << 'p' << labels[i] << ',';
    out << "max_dev\n";
    for (auto c : report.counts) out << c << ',';
    for (auto f : report.frequencies) out << format_fixed(f) << ',';
    for (auto p : report.oracle_probs) out << format_fixed(p) << ',';
    out << format_fixed(report.max_deviation) << '\n';
    return out.str();
}

std::string emit_counts_csv(const std::vector<std::string>& names,
                            const std::vector<std::uint64_t>& counts) {
    if (names.empty() || names.size() != counts.size())
        throw std::invalid_argument("emit_counts_csv: name/count mismatch");
    std::ostringstream out;
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    out << "counter,count,fraction\n";
    for (std::size_t i = 0; i < names.size(); ++i) {
        double frac = total ? static_cast<double>(counts[i]) / static_cast<double>(total) : 0.0;
        out << names[i] << ',' << counts[i] << ',' << format_fixed(frac) << '\n';
    }
    return out.str();
}

} // namespace dlmsim
