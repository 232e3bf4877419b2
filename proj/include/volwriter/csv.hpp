#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace volwriter::csv {

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

/// Strict double parse; the whole field must be consumed.
/// Throws DataError with `context` on failure.
double parse_double(std::string_view field, const std::string& context);

long parse_long(std::string_view field, const std::string& context);

std::vector<std::string_view> split_line(std::string_view line);

/// Line-oriented reader that tracks file name and line number for
/// error reporting.
class Reader {
public:
    explicit Reader(const std::string& path);

    /// Reads the next non-empty line; returns false at EOF.
    bool next_row(std::vector<std::string_view>& fields);

    /// Reads and validates the header row against `expected`.
    void expect_header(const std::vector<std::string_view>& expected);

    [[nodiscard]] std::string where() const;

private:
    std::string path_;
    std::string content_;
    std::size_t pos_ = 0;
    long line_no_ = 0;
    std::string_view current_line_;
};

} // namespace volwriter::csv
