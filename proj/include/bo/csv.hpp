#ifndef BO_CSV_HPP
#define BO_CSV_HPP

#include <string>
#include <vector>

namespace bo {

/// Deterministic CSV assembly: fixed column order, numbers printed with 12
/// significant digits, rows emitted in insertion order.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns);

    void add_row(const std::vector<std::string>& cells);

    static std::string number(double v);

    std::string to_string() const;
    void write_file(const std::string& path) const;

    int row_count() const { return static_cast<int>(rows_.size()); }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

} // namespace bo

#endif
