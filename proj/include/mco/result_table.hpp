#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mco/errors.hpp"

namespace mco {

class IoError : public Error { using Error::Error; };

// A string or an extended real (+/-inf allowed, NaN rejected on output).
using Cell = std::variant<std::string, double>;

// Which columns to draw when a table is rendered as SVG.
struct PlotSpec {
    std::string x;
    std::string y;
    std::string err;    // optional: half-width is 3 * err
    std::string series; // optional: one polyline per distinct value
    std::string filter_column; // optional: keep rows where filter_column == filter_value
    std::string filter_value;
    std::string title;
};

class ResultTable {
public:
    ResultTable() = default;
    explicit ResultTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::vector<Cell>>& rows() const { return rows_; }
    const std::vector<std::pair<std::string, std::string>>& metadata() const { return metadata_; }

    void add_row(std::vector<Cell> row);
    void add_metadata(std::string key, std::string value);
    std::size_t column_index(const std::string& name) const;
    const Cell& at(std::size_t row, const std::string& column) const;
    double number(std::size_t row, const std::string& column) const;

    std::optional<PlotSpec> plot;

    // Equality of content; the plot hint is not part of the serialized table.
    friend bool operator==(const ResultTable& a, const ResultTable& b) {
        return a.columns_ == b.columns_ && a.rows_ == b.rows_ && a.metadata_ == b.metadata_;
    }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
    std::vector<std::pair<std::string, std::string>> metadata_;
};

// Metadata as "# key: value" lines, then a header row, then data rows.
// Reals use 17 significant digits; infinities are written as inf / -inf.
std::string to_csv(const ResultTable& table);
ResultTable parse_csv(const std::string& text);

// Line/scatter plot of table.plot with 3-SE error bars.
std::string to_svg(const ResultTable& table);

} // namespace mco
