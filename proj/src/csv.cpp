#include "volwriter/csv.hpp"

#include "volwriter/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace volwriter::csv {

std::string format_double(double v) {
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

double parse_double(std::string_view field, const std::string& context) {
    double v = 0.0;
    auto r = std::from_chars(field.data(), field.data() + field.size(), v);
    if (r.ec != std::errc{} || r.ptr != field.data() + field.size())
        throw DataError(context + ": bad numeric field '" + std::string(field) + "'");
    return v;
}

long parse_long(std::string_view field, const std::string& context) {
    long v = 0;
    auto r = std::from_chars(field.data(), field.data() + field.size(), v);
    if (r.ec != std::errc{} || r.ptr != field.data() + field.size())
        throw DataError(context + ": bad integer field '" + std::string(field) + "'");
    return v;
}

std::vector<std::string_view> split_line(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

Reader::Reader(const std::string& path) : path_(path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    content_ = std::move(ss).str();
}

bool Reader::next_row(std::vector<std::string_view>& fields) {
    while (pos_ < content_.size()) {
        std::size_t eol = content_.find('\n', pos_);
        if (eol == std::string::npos)
            eol = content_.size();
        std::string_view line(content_.data() + pos_, eol - pos_);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        pos_ = eol + 1;
        ++line_no_;
        if (line.empty())
            continue;
        current_line_ = line;
        fields = split_line(line);
        return true;
    }
    return false;
}

void Reader::expect_header(const std::vector<std::string_view>& expected) {
    std::vector<std::string_view> fields;
    if (!next_row(fields))
        throw DataError(path_ + ": empty file, expected header row");
    if (fields != expected) {
        std::string want;
        for (auto f : expected) {
            if (!want.empty())
                want += ',';
            want += std::string(f);
        }
        throw DataError(where() + ": bad header, expected '" + want + "'");
    }
}

std::string Reader::where() const {
    return path_ + ":" + std::to_string(line_no_);
}

} // namespace volwriter::csv
