#include "mco/result_table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

namespace mco {

void ResultTable::add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size()) throw DimensionError("row width does not match the header");
    rows_.push_back(std::move(row));
}

void ResultTable::add_metadata(std::string key, std::string value) {
    metadata_.emplace_back(std::move(key), std::move(value));
}

std::size_t ResultTable::column_index(const std::string& name) const {
    const auto it = std::find(columns_.begin(), columns_.end(), name);
    if (it == columns_.end()) throw DimensionError("no column named " + name);
    return static_cast<std::size_t>(it - columns_.begin());
}

const Cell& ResultTable::at(std::size_t row, const std::string& column) const {
    return rows_.at(row).at(column_index(column));
}

double ResultTable::number(std::size_t row, const std::string& column) const {
    const Cell& c = at(row, column);
    if (const auto* d = std::get_if<double>(&c)) return *d;
    throw PreconditionError("cell " + column + " is not numeric");
}

namespace {

bool parse_real(const std::string& s, double& out) {
    if (s == "inf") {
        out = std::numeric_limits<double>::infinity();
        return true;
    }
    if (s == "-inf") {
        out = -std::numeric_limits<double>::infinity();
        return true;
    }
    if (s.empty()) return false;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size() && std::isfinite(out);
}

std::string format_real(double v) {
    if (std::isnan(v)) throw DomainError("NaN cannot be written to a result table");
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
    const auto& s = std::get<std::string>(c);
    double ignored;
    const bool needs_quotes = s.empty() || s.find_first_of(",\"\n\r") != std::string::npos || s.front() == '#' ||
                              parse_real(s, ignored);
    if (!needs_quotes) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

// Splits one CSV record; quoted fields become strings.
std::vector<Cell> parse_record(const std::string& line) {
    std::vector<Cell> cells;
    std::size_t i = 0;
    for (;;) {
        if (i < line.size() && line[i] == '"') {
            std::string s;
            ++i;
            for (;; ++i) {
                if (i >= line.size()) throw IoError("unterminated quoted CSV field");
                if (line[i] == '"') {
                    if (i + 1 < line.size() && line[i + 1] == '"') {
                        s += '"';
                        ++i;
                    } else {
                        ++i;
                        break;
                    }
                } else {
                    s += line[i];
                }
            }
            cells.emplace_back(std::move(s));
        } else {
            const std::size_t end = std::min(line.find(',', i), line.size());
            const std::string field = line.substr(i, end - i);
            double v;
            if (parse_real(field, v))
                cells.emplace_back(v);
            else
                cells.emplace_back(field);
            i = end;
        }
        if (i >= line.size()) break;
        if (line[i] != ',') throw IoError("malformed CSV record");
        ++i;
    }
    return cells;
}

} // namespace

std::string to_csv(const ResultTable& table) {
    std::ostringstream os;
    for (const auto& [k, v] : table.metadata()) os << "# " << k << ": " << v << "\n";
    for (std::size_t i = 0; i < table.columns().size(); ++i) os << (i ? "," : "") << format_cell(table.columns()[i]);
    os << "\n";
    for (const auto& row : table.rows()) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
        os << "\n";
    }
    return os.str();
}

ResultTable parse_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<std::pair<std::string, std::string>> meta;
    ResultTable table;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!have_header && line.rfind("# ", 0) == 0) {
            const auto colon = line.find(": ", 2);
            if (colon == std::string::npos) throw IoError("malformed metadata line");
            meta.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
            continue;
        }
        if (!have_header) {
            std::vector<std::string> cols;
            for (auto& c : parse_record(line)) {
                if (const auto* s = std::get_if<std::string>(&c))
                    cols.push_back(*s);
                else
                    throw IoError("numeric column name in CSV header");
            }
            table = ResultTable(std::move(cols));
            for (auto& [k, v] : meta) table.add_metadata(k, v);
            have_header = true;
            continue;
        }
        if (line.empty()) continue;
        auto record = parse_record(line);
        if (record.size() != table.columns().size()) throw IoError("CSV row width does not match the header");
        table.add_row(std::move(record));
    }
    if (!have_header) throw IoError("CSV has no header row");
    return table;
}

std::string to_svg(const ResultTable& table) {
    if (!table.plot) throw PreconditionError("table has no plot specification");
    const PlotSpec& p = *table.plot;
    const std::size_t xi = table.column_index(p.x), yi = table.column_index(p.y);
    const std::optional<std::size_t> ei = p.err.empty() ? std::nullopt : std::optional(table.column_index(p.err));
    const std::optional<std::size_t> si =
        p.series.empty() ? std::nullopt : std::optional(table.column_index(p.series));
    const std::optional<std::size_t> fi =
        p.filter_column.empty() ? std::nullopt : std::optional(table.column_index(p.filter_column));

    struct Point { double x, y, half; };
    std::map<std::string, std::vector<Point>> series;
    auto text_of = [](const Cell& c) {
        if (const auto* s = std::get_if<std::string>(&c)) return *s;
        return format_real(std::get<double>(c));
    };
    for (const auto& row : table.rows()) {
        if (fi && text_of(row[*fi]) != p.filter_value) continue;
        const auto* x = std::get_if<double>(&row[xi]);
        const auto* y = std::get_if<double>(&row[yi]);
        if (!x || !y || !std::isfinite(*x) || !std::isfinite(*y)) continue;
        double half = 0.0;
        if (ei)
            if (const auto* e = std::get_if<double>(&row[*ei]); e && std::isfinite(*e)) half = 3.0 * *e;
        series[si ? text_of(row[*si]) : p.y].push_back({*x, *y, half});
    }

    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& [name, pts] : series)
        for (const auto& pt : pts) {
            x0 = std::min(x0, pt.x);
            x1 = std::max(x1, pt.x);
            y0 = std::min(y0, pt.y - pt.half);
            y1 = std::max(y1, pt.y + pt.half);
        }
    if (series.empty()) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (x1 == x0) x0 -= 0.5, x1 += 0.5;
    if (y1 == y0) y0 -= 0.5, y1 += 0.5;

    constexpr double W = 640, H = 420, L = 70, R = 150, T = 40, B = 50;
    auto sx = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
    auto sy = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

    std::ostringstream os;
    os.precision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << p.title << "</text>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << L << "\" y=\"" << H - B + 18 << "\" font-size=\"11\">" << x0 << "</text>\n";
    os << "<text x=\"" << W - R << "\" y=\"" << H - B + 18 << "\" font-size=\"11\" text-anchor=\"end\">" << x1
       << "</text>\n";
    os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" font-size=\"12\" text-anchor=\"middle\">"
       << p.x << "</text>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << H - B << "\" font-size=\"11\" text-anchor=\"end\">" << y0
       << "</text>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << T + 4 << "\" font-size=\"11\" text-anchor=\"end\">" << y1
       << "</text>\n";
    os << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" font-size=\"12\" transform=\"rotate(-90 16 "
       << (T + H - B) / 2 << ")\" text-anchor=\"middle\">" << p.y << "</text>\n";

    std::size_t c = 0;
    for (const auto& [name, pts] : series) {
        const char* col = colors[c % std::size(colors)];
        os << "<polyline fill=\"none\" stroke=\"" << col << "\" points=\"";
        for (const auto& pt : pts) os << sx(pt.x) << "," << sy(pt.y) << " ";
        os << "\"/>\n";
        for (const auto& pt : pts) {
            os << "<circle cx=\"" << sx(pt.x) << "\" cy=\"" << sy(pt.y) << "\" r=\"3\" fill=\"" << col << "\"/>\n";
            if (pt.half > 0.0)
                os << "<line x1=\"" << sx(pt.x) << "\" y1=\"" << sy(pt.y - pt.half) << "\" x2=\"" << sx(pt.x)
                   << "\" y2=\"" << sy(pt.y + pt.half) << "\" stroke=\"" << col << "\"/>\n";
        }
        os << "<text x=\"" << W - R + 10 << "\" y=\"" << T + 16 * (c + 1) << "\" font-size=\"11\" fill=\"" << col
           << "\">" << name << "</text>\n";
        ++c;
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace mco
