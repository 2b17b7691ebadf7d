#ifndef SSEQ_CHART_HPP
#define SSEQ_CHART_HPP

#include <optional>
#include <string>

#include "sseq/couple.hpp"
#include "sseq/lines.hpp"

namespace sseq {

enum class ChartFormat { Text, Svg, Csv };

ChartFormat chart_format_from(const std::string& name);  // "text" | "svg" | "csv"

/* Deterministic chart rendering with t-s on the horizontal axis and s on the
** vertical axis.  CSV uses the exact header "s,t,dim", rows sorted by (s, t),
** LF line endings.  SVG draws the line s = m(t-s) + b when one is given. */
std::string emit_chart(const Page& page, ChartFormat format,
                       const std::optional<LineSpec>& line = std::nullopt);

}  // namespace sseq

#endif
