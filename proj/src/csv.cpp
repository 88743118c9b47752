// Copyright 2026 The qfock Authors
// SPDX-License-Identifier: Apache-2.0

#include "qfock/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace qfock {

std::string format_real(Real value) {
    if (value == 0) value = 0;  // drop the sign of -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
    if (columns_.empty()) throw std::invalid_argument("CsvTable: no columns");
}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != columns_.size()) throw std::invalid_argument("CsvTable: row width does not match the header");
    rows_.push_back(std::move(cells));
}

void CsvTable::add_row(const std::vector<Real>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (Real v : values) cells.push_back(format_real(v));
    add_row(std::move(cells));
}

std::string CsvTable::str() const {
    auto join = [](const std::vector<std::string>& cells) {
        std::string line;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) line += ',';
            line += cells[i];
        }
        return line + '\n';
    };
    std::string out = join(columns_);
    for (const auto& r : rows_) out += join(r);
    return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << contents;
        if (!out) throw std::runtime_error("failed writing " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw std::runtime_error("cannot rename " + tmp.string() + ": " + ec.message());
}

std::string format_metadata(const Metadata& meta) {
    std::string out;
    for (const auto& [k, v] : meta) out += k + " = " + v + '\n';
    return out;
}

}  // namespace qfock
