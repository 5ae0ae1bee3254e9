#include "bo/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bo {

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add_row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_.size())
        throw std::invalid_argument("CsvTable: cell count does not match header");
    rows_.push_back(cells);
}

std::string CsvTable::number(double v) {
    char buffer[48];
    std::snprintf(buffer, sizeof buffer, "%.12g", v);
    return buffer;
}

std::string CsvTable::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < columns_.size(); ++i)
        os << columns_[i] << (i + 1 < columns_.size() ? "," : "");
    os << '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << row[i] << (i + 1 < row.size() ? "," : "");
        os << '\n';
    }
    return os.str();
}

void CsvTable::write_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("CsvTable: cannot open " + path);
    out << to_string();
}

} // namespace bo
