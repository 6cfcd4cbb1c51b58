#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netdec/timeutil.hpp"

namespace netdec {

struct ChartPoint {
    CivilDay day{};
    double value = 0.0;
};

// Fixed-canvas date/value line chart. Output is a plain-text SVG document
// whose bytes depend only on the arguments.
std::string render_line_chart(const std::vector<ChartPoint>& series, std::string_view title,
                              std::string_view y_label);

// Square matrix heatmap with a diverging scale over [-1, 1]. Undefined
// cells are hatched and carry no numeric annotation.
std::string render_heatmap(const std::vector<std::string>& labels,
                           const std::vector<std::vector<std::optional<double>>>& values,
                           std::string_view title);

}  // namespace netdec
