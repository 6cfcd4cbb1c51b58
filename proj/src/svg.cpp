#include "netdec/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "netdec/common.hpp"

namespace netdec {

namespace {

std::string fmt2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&':
                out += "&amp;";
                break;
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '"':
                out += "&quot;";
                break;
            default:
                out += c;
        }
    }
    return out;
}

// Diverging scale: -1 dark blue, 0 white, +1 dark red.
std::string heat_color(double v) {
    v = std::clamp(v, -1.0, 1.0);
    const double t = std::abs(v);
    const int br = v >= 0 ? 178 : 33;
    const int bg = v >= 0 ? 24 : 102;
    const int bb = v >= 0 ? 43 : 172;
    const auto mix = [t](int base) {
        return static_cast<int>(std::lround(255.0 + (base - 255.0) * t));
    };
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", mix(br), mix(bg), mix(bb));
    return buf;
}

}  // namespace

std::string render_line_chart(const std::vector<ChartPoint>& series, std::string_view title,
                              std::string_view y_label) {
    if (series.empty()) {
        throw DataError("empty chart series");
    }
    for (const auto& point : series) {
        if (!std::isfinite(point.value)) {
            throw DataError("non-finite chart value");
        }
    }

    constexpr double kWidth = 860.0;
    constexpr double kHeight = 420.0;
    constexpr double kLeft = 78.0;
    constexpr double kRight = 20.0;
    constexpr double kTop = 46.0;
    constexpr double kBottom = 56.0;
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;

    const auto day_serial = [](CivilDay day) {
        return static_cast<double>(day.time_since_epoch().count());
    };
    double x_min = day_serial(series.front().day);
    double x_max = x_min;
    double y_min = series.front().value;
    double y_max = y_min;
    for (const auto& point : series) {
        x_min = std::min(x_min, day_serial(point.day));
        x_max = std::max(x_max, day_serial(point.day));
        y_min = std::min(y_min, point.value);
        y_max = std::max(y_max, point.value);
    }
    if (y_min == y_max) {
        y_min -= 0.5;
        y_max += 0.5;
    } else {
        const double pad = 0.05 * (y_max - y_min);
        y_min -= pad;
        y_max += pad;
    }

    const auto x_of = [&](CivilDay day) {
        if (x_min == x_max) {
            return kLeft + plot_w / 2.0;
        }
        return kLeft + (day_serial(day) - x_min) / (x_max - x_min) * plot_w;
    };
    const auto y_of = [&](double v) {
        return kTop + plot_h - (v - y_min) / (y_max - y_min) * plot_h;
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"#ffffff\"/>\n";
    svg << "<text x=\"" << fmt2(kWidth / 2.0)
        << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
        << xml_escape(title) << "</text>\n";
    svg << "<text x=\"20\" y=\"" << fmt2(kTop + plot_h / 2.0)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "transform=\"rotate(-90 20 "
        << fmt2(kTop + plot_h / 2.0) << ")\">" << xml_escape(y_label) << "</text>\n";

    // Axes.
    svg << "<line x1=\"" << fmt2(kLeft) << "\" y1=\"" << fmt2(kTop) << "\" x2=\"" << fmt2(kLeft)
        << "\" y2=\"" << fmt2(kTop + plot_h) << "\" stroke=\"#333333\"/>\n";
    svg << "<line x1=\"" << fmt2(kLeft) << "\" y1=\"" << fmt2(kTop + plot_h) << "\" x2=\""
        << fmt2(kLeft + plot_w) << "\" y2=\"" << fmt2(kTop + plot_h)
        << "\" stroke=\"#333333\"/>\n";

    // Y ticks.
    for (int i = 0; i <= 4; ++i) {
        const double v = y_min + (y_max - y_min) * static_cast<double>(i) / 4.0;
        const double y = y_of(v);
        svg << "<line x1=\"" << fmt2(kLeft - 4.0) << "\" y1=\"" << fmt2(y) << "\" x2=\""
            << fmt2(kLeft) << "\" y2=\"" << fmt2(y) << "\" stroke=\"#333333\"/>\n";
        svg << "<text x=\"" << fmt2(kLeft - 8.0) << "\" y=\"" << fmt2(y + 4.0)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt_tick(v) << "</text>\n";
    }

    // X ticks: up to five distinct days across the span.
    std::vector<CivilDay> ticks;
    for (int i = 0; i <= 4; ++i) {
        const double s = x_min + (x_max - x_min) * static_cast<double>(i) / 4.0;
        const CivilDay day{std::chrono::days{static_cast<long>(std::lround(s))}};
        if (ticks.empty() || ticks.back() != day) {
            ticks.push_back(day);
        }
    }
    for (const CivilDay day : ticks) {
        const double x = x_of(day);
        svg << "<line x1=\"" << fmt2(x) << "\" y1=\"" << fmt2(kTop + plot_h) << "\" x2=\""
            << fmt2(x) << "\" y2=\"" << fmt2(kTop + plot_h + 4.0) << "\" stroke=\"#333333\"/>\n";
        svg << "<text x=\"" << fmt2(x) << "\" y=\"" << fmt2(kTop + plot_h + 18.0)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << format_day(day) << "</text>\n";
    }

    svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (i > 0) {
            svg << ' ';
        }
        svg << fmt2(x_of(series[i].day)) << ',' << fmt2(y_of(series[i].value));
    }
    svg << "\"/>\n";
    if (series.size() == 1) {
        svg << "<circle cx=\"" << fmt2(x_of(series[0].day)) << "\" cy=\""
            << fmt2(y_of(series[0].value)) << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string render_heatmap(const std::vector<std::string>& labels,
                           const std::vector<std::vector<std::optional<double>>>& values,
                           std::string_view title) {
    const std::size_t n = labels.size();
    if (n == 0) {
        throw DataError("empty heatmap");
    }
    if (values.size() != n) {
        throw DataError("heatmap matrix is not square");
    }
    for (const auto& row : values) {
        if (row.size() != n) {
            throw DataError("heatmap matrix is not square");
        }
    }

    constexpr double kCell = 56.0;
    constexpr double kLeft = 215.0;
    constexpr double kTop = 170.0;
    const double width = kLeft + kCell * static_cast<double>(n) + 20.0;
    const double height = kTop + kCell * static_cast<double>(n) + 20.0;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"#ffffff\"/>\n";
    svg << "<text x=\"20\" y=\"28\" font-family=\"sans-serif\" font-size=\"16\">"
        << xml_escape(title) << "</text>\n";

    for (std::size_t j = 0; j < n; ++j) {
        const double cx = kLeft + kCell * (static_cast<double>(j) + 0.5);
        svg << "<text x=\"" << fmt2(cx) << "\" y=\"" << fmt2(kTop - 8.0)
            << "\" text-anchor=\"start\" font-family=\"sans-serif\" font-size=\"11\" "
               "transform=\"rotate(-55 "
            << fmt2(cx) << ' ' << fmt2(kTop - 8.0) << ")\">" << xml_escape(labels[j])
            << "</text>\n";
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double cy = kTop + kCell * (static_cast<double>(i) + 0.5);
        svg << "<text x=\"" << fmt2(kLeft - 8.0) << "\" y=\"" << fmt2(cy + 4.0)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << xml_escape(labels[i]) << "</text>\n";
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double x = kLeft + kCell * static_cast<double>(j);
            const double y = kTop + kCell * static_cast<double>(i);
            const auto& cell = values[i][j];
            if (cell.has_value()) {
                svg << "<rect x=\"" << fmt2(x) << "\" y=\"" << fmt2(y) << "\" width=\""
                    << fmt2(kCell) << "\" height=\"" << fmt2(kCell) << "\" fill=\""
                    << heat_color(*cell) << "\" stroke=\"#cccccc\"/>\n";
                const bool dark = std::abs(*cell) >= 0.55;
                svg << "<text x=\"" << fmt2(x + kCell / 2.0) << "\" y=\""
                    << fmt2(y + kCell / 2.0 + 4.0)
                    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
                       "fill=\""
                    << (dark ? "#ffffff" : "#000000") << "\">" << fmt2(*cell) << "</text>\n";
            } else {
                svg << "<rect x=\"" << fmt2(x) << "\" y=\"" << fmt2(y) << "\" width=\""
                    << fmt2(kCell) << "\" height=\"" << fmt2(kCell)
                    << "\" fill=\"#e0e0e0\" stroke=\"#cccccc\"/>\n";
                svg << "<line x1=\"" << fmt2(x) << "\" y1=\"" << fmt2(y) << "\" x2=\""
                    << fmt2(x + kCell) << "\" y2=\"" << fmt2(y + kCell)
                    << "\" stroke=\"#999999\"/>\n";
            }
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace netdec
