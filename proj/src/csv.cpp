#include "birds/csv.hpp"

#include <cstdio>
#include <fstream>

#include "birds/common.hpp"

namespace birds {

std::string format_double(double v) {
    if (v == 0.0) return "0";  // folds -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string CsvTable::render() const {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out += ',';
        out += columns[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        if (row.size() != columns.size()) {
            throw Error(ErrorKind::InvalidParameter, "csv row does not match the header");
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            std::visit(
                [&out](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) {
                        out += format_double(v);
                    } else if constexpr (std::is_same_v<T, std::string>) {
                        out += v;
                    } else {
                        out += std::to_string(v);
                    }
                },
                row[i]);
        }
        out += '\n';
    }
    return out;
}

void emit_csv(const CsvTable& table, const std::string& path) {
    const std::string text = table.render();
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw Error(ErrorKind::Io, "cannot write " + path);
    }
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f) {
        throw Error(ErrorKind::Io, "write failed for " + path);
    }
}

}  // namespace birds
