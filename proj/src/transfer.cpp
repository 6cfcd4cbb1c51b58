#include "netdec/transfer.hpp"

#include "netdec/csv.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <sstream>
#include <utility>

namespace netdec {

namespace {

constexpr std::size_t kMaxStoredErrors = 20;

struct ColumnMap {
    int token = -1;
    int from = -1;
    int to = -1;
    int value = -1;
    int timestamp = -1;
};

ColumnMap map_header(const std::vector<std::string>& header) {
    ColumnMap cols;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const int idx = static_cast<int>(i);
        if (header[i] == "token_address") cols.token = idx;
        else if (header[i] == "from_address") cols.from = idx;
        else if (header[i] == "to_address") cols.to = idx;
        else if (header[i] == "value") cols.value = idx;
        else if (header[i] == "block_timestamp") cols.timestamp = idx;
    }
    if (cols.token < 0 || cols.from < 0 || cols.to < 0 || cols.value < 0 ||
        cols.timestamp < 0) {
        throw DataError(
            "missing header: need token_address, from_address, to_address, "
            "value, block_timestamp");
    }
    return cols;
}

// Returns an error message, or empty string on success.
std::string row_to_record(const std::string& token, const std::string& from,
                          const std::string& to, const std::string& value,
                          const std::string& timestamp, TransferRecord& out) {
    auto tok = parse_address(token);
    if (!tok) return "invalid token_address '" + token + "'";
    auto f = parse_address(from);
    if (!f) return "invalid from_address '" + from + "'";
    auto t = parse_address(to);
    if (!t) return "invalid to_address '" + to + "'";
    auto v = parse_u256(value);
    if (!v) return "invalid value '" + value + "'";
    auto ts = parse_timestamp_utc(timestamp);
    if (!ts) return "invalid block_timestamp '" + timestamp + "'";
    out = TransferRecord{*tok, *f, *t, std::move(*v), *ts};
    return {};
}

void report_row_error(ParseOutcome& outcome, RowErrorPolicy policy, std::size_t line,
                      const std::string& message) {
    const std::string full = "line " + std::to_string(line) + ": " + message;
    if (policy == RowErrorPolicy::abort) {
        throw DataError(full);
    }
    ++outcome.rows_skipped;
    if (outcome.row_errors.size() < kMaxStoredErrors) {
        outcome.row_errors.push_back(full);
    }
}

ParseOutcome parse_csv(std::istream& in, RowErrorPolicy policy) {
    ParseOutcome outcome;
    CsvReader reader(in);
    std::vector<std::string> fields;
    if (!reader.next(fields)) {
        throw DataError("empty input: missing CSV header");
    }
    const ColumnMap cols = map_header(fields);
    const std::size_t max_col = static_cast<std::size_t>(
        std::max({cols.token, cols.from, cols.to, cols.value, cols.timestamp}));

    while (reader.next(fields)) {
        if (fields.size() == 1 && fields[0].empty()) {
            continue;  // blank line
        }
        ++outcome.rows_read;
        if (fields.size() <= max_col) {
            report_row_error(outcome, policy, reader.record_line(),
                             "expected at least " + std::to_string(max_col + 1) +
                                 " fields, got " + std::to_string(fields.size()));
            continue;
        }
        TransferRecord rec;
        const std::string err =
            row_to_record(fields[cols.token], fields[cols.from], fields[cols.to],
                          fields[cols.value], fields[cols.timestamp], rec);
        if (!err.empty()) {
            report_row_error(outcome, policy, reader.record_line(), err);
            continue;
        }
        outcome.records.push_back(std::move(rec));
    }
    return outcome;
}

ParseOutcome parse_jsonl(std::istream& in, RowErrorPolicy policy) {
    ParseOutcome outcome;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        ++outcome.rows_read;
        nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object()) {
            report_row_error(outcome, policy, line_no, "invalid JSON object");
            continue;
        }
        std::array<const char*, 5> keys = {"token_address", "from_address", "to_address",
                                           "value", "block_timestamp"};
        bool missing = false;
        for (const char* k : keys) {
            if (!obj.contains(k)) {
                report_row_error(outcome, policy, line_no,
                                 std::string("missing field '") + k + "'");
                missing = true;
                break;
            }
        }
        if (missing) {
            continue;
        }
        auto text_of = [&](const char* key) -> std::string {
            const auto& v = obj.at(key);
            if (v.is_string()) return v.get<std::string>();
            if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
            return {};
        };
        const std::string value_text = text_of("value");
        if (value_text.empty()) {
            report_row_error(outcome, policy, line_no,
                             "value must be an unsigned integer or decimal string");
            continue;
        }
        TransferRecord rec;
        const std::string err =
            row_to_record(text_of("token_address"), text_of("from_address"),
                          text_of("to_address"), value_text, text_of("block_timestamp"), rec);
        if (!err.empty()) {
            report_row_error(outcome, policy, line_no, err);
            continue;
        }
        outcome.records.push_back(std::move(rec));
    }
    return outcome;
}

}  // namespace

ParseOutcome parse_transfers(std::istream& in, InputFormat format, RowErrorPolicy policy) {
    return format == InputFormat::csv ? parse_csv(in, policy) : parse_jsonl(in, policy);
}

std::vector<TransferRecord> filter_records(std::vector<TransferRecord> records,
                                           IngestStats& stats) {
    std::vector<TransferRecord> kept;
    kept.reserve(records.size());
    for (auto& rec : records) {
        if (is_null(rec.from) || is_null(rec.to)) {
            ++stats.rows_filtered_null;
            continue;
        }
        if (rec.from == rec.to) {
            ++stats.rows_filtered_selfloop;
            continue;
        }
        kept.push_back(std::move(rec));
    }
    return kept;
}

std::map<CivilDay, std::vector<TransferRecord>> bucket_by_day(
    std::vector<TransferRecord> records) {
    std::map<CivilDay, std::vector<TransferRecord>> buckets;
    for (auto& rec : records) {
        buckets[day_of(rec.timestamp)].push_back(std::move(rec));
    }
    return buckets;
}

}  // namespace netdec
