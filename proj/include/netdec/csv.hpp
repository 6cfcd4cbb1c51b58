#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace netdec {

// RFC-4180 record reader: comma separators, double-quote quoting with
// doubled escapes, CRLF or LF terminators, newlines allowed inside quotes.
class CsvReader {
public:
    explicit CsvReader(std::istream& in) : in_(in) {}

    // Reads the next record into `fields`. Returns false at end of input.
    // Throws DataError on a bare quote inside an unquoted field or an
    // unterminated quoted field.
    bool next(std::vector<std::string>& fields);

    // 1-based line number where the last record started.
    std::size_t record_line() const { return record_line_; }

private:
    std::istream& in_;
    std::size_t line_ = 1;
    std::size_t record_line_ = 1;
};

// Quotes a value when it contains a comma, quote or newline.
std::string csv_escape(std::string_view value);

}  // namespace netdec
