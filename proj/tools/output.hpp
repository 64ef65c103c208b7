// Copyright (C) 2026 The jcorners authors
// Distributed under the MIT License (see LICENSE)

// Row tables written as CSV (17 significant digits) or as a JSON array of
// row objects with the same keys.

#ifndef JCORNERS_TOOLS_OUTPUT_HPP
#define JCORNERS_TOOLS_OUTPUT_HPP

#include <json.hpp>

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace jc::cli {

enum class Format { csv, json };

using Cell = std::variant<long long, double, std::string, bool>;

struct Table {
  std::string name;  // file stem
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

std::string format_double(double v);

// Writes <dir>/<name>.csv or <dir>/<name>.json and returns the path.
std::filesystem::path write_table(const Table& t, const std::filesystem::path& dir, Format fmt);

void write_json(const nlohmann::ordered_json& j, const std::filesystem::path& path);

// Creates the directory, reporting the path on failure.
void ensure_dir(const std::filesystem::path& dir);

}  // namespace jc::cli

#endif
