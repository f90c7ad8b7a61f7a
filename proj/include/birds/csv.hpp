#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace birds {

using CsvValue = std::variant<std::int64_t, double, std::string>;

/// Comma-separated, header first, doubles at 6 significant digits, LF.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<CsvValue>> rows;

    std::string render() const;
};

std::string format_double(double v);

/// Throws Error(Io) when the path cannot be written.
void emit_csv(const CsvTable& table, const std::string& path);

}  // namespace birds
