#pragma once

#include "netdec/address.hpp"
#include "netdec/common.hpp"
#include "netdec/timeutil.hpp"

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace netdec {

// One token transfer row. Addresses are canonical (lowercase) and the
// timestamp is Unix seconds, UTC.
struct TransferRecord {
    Address token;
    Address from;
    Address to;
    u256 value;
    std::int64_t timestamp = 0;
};

enum class InputFormat { csv, jsonl };
enum class RowErrorPolicy { abort, skip };

struct ParseOutcome {
    std::vector<TransferRecord> records;
    std::uint64_t rows_read = 0;     // data rows seen (header excluded)
    std::uint64_t rows_skipped = 0;  // malformed rows dropped under skip policy
    std::vector<std::string> row_errors;  // first few messages, for diagnostics
};

struct IngestStats {
    std::uint64_t rows_read = 0;
    std::uint64_t rows_skipped = 0;
    std::uint64_t rows_filtered_null = 0;
    std::uint64_t rows_filtered_selfloop = 0;
    std::uint64_t days = 0;
    std::optional<CivilDay> first_day;
    std::optional<CivilDay> last_day;
    std::uint64_t unique_addresses = 0;
    std::uint64_t total_transfers = 0;  // retained records
    u256 total_value = 0;               // sum over retained records

    std::int64_t duration_days() const {
        return (first_day && last_day) ? inclusive_day_span(*first_day, *last_day) : 0;
    }
};

// Required columns: token_address, from_address, to_address, value,
// block_timestamp. Extra columns are ignored. CSV input must carry a
// header row; JSONL carries one object per line.
ParseOutcome parse_transfers(std::istream& in, InputFormat format,
                             RowErrorPolicy policy = RowErrorPolicy::abort);

// Drops rows touching the null address (mint/burn/genesis events) and
// self-loop rows, counting each removal class separately.
std::vector<TransferRecord> filter_records(std::vector<TransferRecord> records,
                                           IngestStats& stats);

// Groups filtered records by UTC calendar date, keys ascending.
std::map<CivilDay, std::vector<TransferRecord>> bucket_by_day(
    std::vector<TransferRecord> records);

}  // namespace netdec
