#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netdec/address_intel.hpp"
#include "netdec/common.hpp"
#include "netdec/features.hpp"

namespace netdec {

// One analyzed day: the six features plus the core-periphery evidence and
// the day's raw totals. n_core/avg_core_degree inside `features` carry the
// significance policy already applied; the _raw fields keep the unfiltered
// detection for side-by-side reporting.
struct DayRecord {
    FeatureVector features;
    std::uint64_t n_core_raw = 0;
    double avg_core_degree_raw = 0.0;
    std::uint64_t z_error = 0;
    std::optional<double> p_value;
    bool significant = false;
    bool degenerate = false;
    u256 daily_value = 0;
    std::uint64_t daily_transfers = 0;
    std::uint64_t daily_addresses = 0;
};

struct FeatureTable {
    std::string token;
    std::string config_digest;  // 16 hex digits
    std::vector<DayRecord> rows;  // strictly ascending by day
};

// Sorts rows by date and rejects duplicate days.
FeatureTable assemble_timeseries(std::string token, std::string config_digest,
                                 std::vector<DayRecord> rows);

// Symmetric matrix over the feature series; entries are absent when either
// series has zero variance.
struct CorrelationMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<std::optional<double>>> values;
};

enum class CorrelationMethod { pearson, spearman };

// Pairwise correlation across days of the six features; `extended` adds
// the daily value and address-count series. Needs at least two rows.
CorrelationMatrix correlation_matrix(const FeatureTable& table,
                                     CorrelationMethod method = CorrelationMethod::pearson,
                                     bool extended = false);

// Serializers. All output is LF-terminated with fixed column order;
// floating-point fields use shortest round-trip formatting.
std::string feature_table_csv(const FeatureTable& table);
std::string correlation_csv(const CorrelationMatrix& matrix);
std::string profiles_csv(const std::vector<AddressProfile>& profiles);
std::string feature_table_json(const FeatureTable& table);
std::string correlation_json(const CorrelationMatrix& matrix);
std::string profiles_json(const std::vector<AddressProfile>& profiles);

}  // namespace netdec
