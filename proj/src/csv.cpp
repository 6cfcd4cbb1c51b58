#include "netdec/csv.hpp"

#include "netdec/common.hpp"

namespace netdec {

bool CsvReader::next(std::vector<std::string>& fields) {
    fields.clear();
    int c = in_.get();
    if (c == std::istream::traits_type::eof()) {
        return false;
    }
    record_line_ = line_;
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    for (;;) {
        if (c == std::istream::traits_type::eof()) {
            if (in_quotes) {
                throw DataError("line " + std::to_string(record_line_) +
                                ": unterminated quoted field");
            }
            fields.push_back(std::move(field));
            return true;
        }
        const char ch = static_cast<char>(c);
        if (in_quotes) {
            if (ch == '"') {
                if (in_.peek() == '"') {
                    in_.get();
                    field += '"';
                } else {
                    in_quotes = false;
                }
            } else {
                if (ch == '\n') ++line_;
                field += ch;
            }
        } else if (ch == '"') {
            if (!field.empty() || field_was_quoted) {
                throw DataError("line " + std::to_string(line_) +
                                ": quote inside unquoted field");
            }
            in_quotes = true;
            field_was_quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
            field_was_quoted = false;
        } else if (ch == '\n') {
            ++line_;
            if (!field.empty() && field.back() == '\r') {
                field.pop_back();
            }
            fields.push_back(std::move(field));
            return true;
        } else {
            field += ch;
        }
        c = in_.get();
    }
}

std::string csv_escape(std::string_view value) {
    const bool needs_quotes =
        value.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) {
        return std::string(value);
    }
    std::string out;
    out.reserve(value.size() + 2);
    out += '"';
    for (char c : value) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace netdec
