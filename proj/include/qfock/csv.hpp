// Copyright 2026 The qfock Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "qfock/types.hpp"

namespace qfock {

/// Fixed 17-significant-digit decimal, so output round-trips exactly.
std::string format_real(Real value);

/// CSV table whose first row is the column schema.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns);

    const std::vector<std::string>& columns() const { return columns_; }
    std::size_t rows() const { return rows_.size(); }

    /// Throws std::invalid_argument if the cell count differs from the header.
    void add_row(std::vector<std::string> cells);
    void add_row(const std::vector<Real>& values);

    std::string str() const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

/// Writes to a sibling temp file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

/// `key = value` lines in insertion order.
using Metadata = std::vector<std::pair<std::string, std::string>>;
std::string format_metadata(const Metadata& meta);

}  // namespace qfock
