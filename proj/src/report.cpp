#include "sqfvar/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace sqfvar {

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double round12(double v) {
    if (!std::isfinite(v)) return v;
    return std::stod(format_number(v));
}

void CsvTable::add_row(std::vector<std::string> row) {
    if (row.size() != header_.size())
        throw std::logic_error("CSV row has " + std::to_string(row.size()) + " fields, schema has " +
                               std::to_string(header_.size()));
    rows_.push_back(std::move(row));
}

namespace {
void join(std::string& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += fields[i];
    }
    out += '\n';
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> f;
    std::string cur;
    std::istringstream is(line);
    while (std::getline(is, cur, ',')) f.push_back(cur);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    return f;
}
}  // namespace

std::string CsvTable::render() const {
    std::string out;
    join(out, header_);
    for (const auto& r : rows_) join(out, r);
    return out;
}

CsvTable CsvTable::parse(const std::string& text, const std::vector<std::string>& expected) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || split(line) != expected)
        throw std::runtime_error("CSV header does not match the expected schema");
    CsvTable t(expected);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto f = split(line);
        if (f.size() != expected.size()) throw std::runtime_error("CSV row has the wrong width: " + line);
        t.rows_.push_back(std::move(f));
    }
    return t;
}

}  // namespace sqfvar
