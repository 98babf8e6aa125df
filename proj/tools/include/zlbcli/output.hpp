#pragma once

#include <json.hpp>

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace zlbcli {

// Empty cells are written as an empty field.
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct ScanResult {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
    nlohmann::json meta = nlohmann::json::object();

    void add_row(std::vector<Cell> row);
};

// Shortest round-trip form (at most 17 significant digits); "+inf"/"-inf"; NaN as empty.
std::string format_number(double v);
std::string format_cell(const Cell& c);

void write_csv(const ScanResult& r, std::ostream& os);

// Writes `path` and `path`.meta.json.
void write_outputs(const ScanResult& r, const std::string& path);

}  // namespace zlbcli
