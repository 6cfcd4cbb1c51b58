#include "netdec/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "netdec/csv.hpp"

namespace netdec {

FeatureTable assemble_timeseries(std::string token, std::string config_digest,
                                 std::vector<DayRecord> rows) {
    if (rows.empty()) {
        throw DataError("no analyzed days to assemble");
    }
    std::sort(rows.begin(), rows.end(), [](const DayRecord& a, const DayRecord& b) {
        return a.features.day < b.features.day;
    });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].features.day == rows[i - 1].features.day) {
            throw DataError("duplicate day in series: " + format_day(rows[i].features.day));
        }
    }
    FeatureTable table;
    table.token = std::move(token);
    table.config_digest = std::move(config_digest);
    table.rows = std::move(rows);
    return table;
}

namespace {

// Average ranks, ties sharing the mean rank of their run.
std::vector<double> rank_transform(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) {
            ++j;
        }
        const double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            ranks[order[k]] = shared;
        }
        i = j + 1;
    }
    return ranks;
}

std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        return std::nullopt;
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace

CorrelationMatrix correlation_matrix(const FeatureTable& table, CorrelationMethod method,
                                     bool extended) {
    if (table.rows.size() < 2) {
        throw DataError("correlation needs at least 2 days");
    }
    CorrelationMatrix matrix;
    matrix.labels.assign(std::begin(kFeatureNames), std::end(kFeatureNames));
    if (extended) {
        matrix.labels.push_back("daily_value");
        matrix.labels.push_back("daily_addresses");
    }
    const std::size_t k = matrix.labels.size();
    const std::size_t n = table.rows.size();

    std::vector<std::vector<double>> series(k, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const DayRecord& row = table.rows[i];
        series[0][i] = static_cast<double>(row.features.n_components);
        series[1][i] = row.features.largest_component_ratio;
        series[2][i] = row.features.modularity_score;
        series[3][i] = row.features.degree_centrality_std;
        series[4][i] = static_cast<double>(row.features.n_core);
        series[5][i] = row.features.avg_core_degree;
        if (extended) {
            series[6][i] = row.daily_value.convert_to<double>();
            series[7][i] = static_cast<double>(row.daily_addresses);
        }
    }
    if (method == CorrelationMethod::spearman) {
        for (auto& s : series) {
            s = rank_transform(s);
        }
    }

    matrix.values.assign(k, std::vector<std::optional<double>>(k));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            std::optional<double> r = pearson(series[i], series[j]);
            if (i == j && r.has_value()) {
                r = 1.0;
            }
            matrix.values[i][j] = r;
            matrix.values[j][i] = r;
        }
    }
    return matrix;
}

namespace {

std::string opt_double_field(const std::optional<double>& v) {
    return v.has_value() ? format_double(*v) : std::string{};
}

constexpr const char* kFeatureCsvHeader =
    "day,n_components,largest_component_ratio,modularity,degree_centrality_std,"
    "n_core,avg_core_degree,n_core_raw,avg_core_degree_raw,z_error,p_value,"
    "significant,daily_value_wei,daily_transfer_count,daily_address_count";

}  // namespace

std::string feature_table_csv(const FeatureTable& table) {
    std::ostringstream out;
    out << kFeatureCsvHeader << '\n';
    for (const DayRecord& row : table.rows) {
        const FeatureVector& f = row.features;
        out << format_day(f.day) << ',' << f.n_components << ','
            << format_double(f.largest_component_ratio) << ','
            << format_double(f.modularity_score) << ','
            << format_double(f.degree_centrality_std) << ',' << f.n_core << ','
            << format_double(f.avg_core_degree) << ',' << row.n_core_raw << ','
            << format_double(row.avg_core_degree_raw) << ',' << row.z_error << ','
            << opt_double_field(row.p_value) << ',' << (row.significant ? "true" : "false")
            << ',' << to_decimal(row.daily_value) << ',' << row.daily_transfers << ','
            << row.daily_addresses << '\n';
    }
    return out.str();
}

std::string correlation_csv(const CorrelationMatrix& matrix) {
    std::ostringstream out;
    out << "feature";
    for (const auto& label : matrix.labels) {
        out << ',' << csv_escape(label);
    }
    out << '\n';
    for (std::size_t i = 0; i < matrix.labels.size(); ++i) {
        out << csv_escape(matrix.labels[i]);
        for (std::size_t j = 0; j < matrix.labels.size(); ++j) {
            out << ',' << opt_double_field(matrix.values[i][j]);
        }
        out << '\n';
    }
    return out.str();
}

std::string profiles_csv(const std::vector<AddressProfile>& profiles) {
    std::ostringstream out;
    out << "address,label,kind,core_days,outlier\n";
    for (const AddressProfile& p : profiles) {
        out << to_string(p.address) << ',' << csv_escape(p.label) << ',' << kind_name(p.kind)
            << ',' << p.core_days << ',' << (p.outlier ? "true" : "false") << '\n';
    }
    return out.str();
}

namespace {

nlohmann::ordered_json day_record_json(const DayRecord& row) {
    nlohmann::ordered_json j;
    const FeatureVector& f = row.features;
    j["day"] = format_day(f.day);
    j["n_components"] = f.n_components;
    j["largest_component_ratio"] = f.largest_component_ratio;
    j["modularity"] = f.modularity_score;
    j["degree_centrality_std"] = f.degree_centrality_std;
    j["n_core"] = f.n_core;
    j["avg_core_degree"] = f.avg_core_degree;
    j["n_core_raw"] = row.n_core_raw;
    j["avg_core_degree_raw"] = row.avg_core_degree_raw;
    j["z_error"] = row.z_error;
    if (row.p_value.has_value()) {
        j["p_value"] = *row.p_value;
    } else {
        j["p_value"] = nullptr;
    }
    j["significant"] = row.significant;
    j["degenerate"] = row.degenerate;
    j["daily_value_wei"] = to_decimal(row.daily_value);
    j["daily_transfer_count"] = row.daily_transfers;
    j["daily_address_count"] = row.daily_addresses;
    return j;
}

std::string dump_json(const nlohmann::ordered_json& j) {
    return j.dump(2, ' ', true) + "\n";
}

}  // namespace

std::string feature_table_json(const FeatureTable& table) {
    nlohmann::ordered_json j;
    j["token"] = table.token;
    j["config_digest"] = table.config_digest;
    j["rows"] = nlohmann::ordered_json::array();
    for (const DayRecord& row : table.rows) {
        j["rows"].push_back(day_record_json(row));
    }
    return dump_json(j);
}

std::string correlation_json(const CorrelationMatrix& matrix) {
    nlohmann::ordered_json j;
    j["labels"] = matrix.labels;
    j["values"] = nlohmann::ordered_json::array();
    for (const auto& row : matrix.values) {
        nlohmann::ordered_json out_row = nlohmann::ordered_json::array();
        for (const auto& cell : row) {
            if (cell.has_value()) {
                out_row.push_back(*cell);
            } else {
                out_row.push_back(nullptr);
            }
        }
        j["values"].push_back(std::move(out_row));
    }
    return dump_json(j);
}

std::string profiles_json(const std::vector<AddressProfile>& profiles) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const AddressProfile& p : profiles) {
        nlohmann::ordered_json row;
        row["address"] = to_string(p.address);
        row["label"] = p.label;
        row["kind"] = std::string(kind_name(p.kind));
        row["core_days"] = p.core_days;
        row["outlier"] = p.outlier;
        j.push_back(std::move(row));
    }
    return dump_json(j);
}

}  // namespace netdec
