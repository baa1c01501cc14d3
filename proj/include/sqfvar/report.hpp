// report.hpp
// Byte-stable number formatting and fixed-schema CSV tables.

#pragma once
#include <string>
#include <vector>

namespace sqfvar {

// 12 significant digits, "%.12g".
std::string format_number(double v);

// v rounded to what format_number prints.
double round12(double v);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    // Throws std::logic_error when the row does not match the header width.
    void add_row(std::vector<std::string> row);

    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::vector<std::string>>& rows() const { return rows_; }

    // Header line then one line per row, '\n'-terminated.
    std::string render() const;

    // Parses render() output; throws std::runtime_error when the header
    // differs from `expected` or a row has the wrong width.
    static CsvTable parse(const std::string& text, const std::vector<std::string>& expected);

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace sqfvar
