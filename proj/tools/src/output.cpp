#include "zlbcli/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace zlbcli {

void ScanResult::add_row(std::vector<Cell> row) {
    if (row.size() != header.size()) throw std::logic_error("row width does not match header");
    rows.push_back(std::move(row));
}

std::string format_number(double v) {
    if (std::isnan(v)) return {};
    if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string format_cell(const Cell& c) {
    struct Visitor {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(double v) const { return format_number(v); }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, c);
}

void write_csv(const ScanResult& r, std::ostream& os) {
    for (std::size_t k = 0; k < r.header.size(); ++k) os << (k ? "," : "") << r.header[k];
    os << '\n';
    for (const auto& row : r.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << format_cell(row[k]);
        os << '\n';
    }
}

void write_outputs(const ScanResult& r, const std::string& path) {
    std::ofstream csv(path, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot open " + path);
    write_csv(r, csv);
    std::ofstream meta(path + ".meta.json", std::ios::binary);
    if (!meta) throw std::runtime_error("cannot open " + path + ".meta.json");
    meta << r.meta.dump(2) << '\n';
}

}  // namespace zlbcli
