#pragma once

#include <string>
#include <vector>

#include "dlmsim/experiments.hpp"

namespace dlmsim {

/// CSV emitters. Fixed 6-fraction-digit decimals and deterministic row
/// ordering, so identical runs produce byte-identical files.
std::string emit_csv(const std::vector<BeamSplitterPoint>& points);
std::string emit_csv(const std::vector<MziPoint>& points);
std::string emit_csv(const FrequencyReport& report, const std::vector<std::string>& labels);

/// Counter dump for netlist-driven runs (no oracle columns).
std::string emit_counts_csv(const std::vector<std::string>& names,
                            const std::vector<std::uint64_t>& counts);

std::string format_fixed(double value); // 6 fractional digits

} // namespace dlmsim
