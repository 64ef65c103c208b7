// Copyright (C) 2026 The jcorners authors
// Distributed under the MIT License (see LICENSE)

#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace jc::cli {

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("table " + name + ": row width mismatch");
  rows.push_back(std::move(row));
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string csv_cell(const Cell& c) {
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

nlohmann::ordered_json json_cell(const Cell& c) {
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  if (const auto* d = std::get_if<double>(&c)) {
    if (std::isfinite(*d)) return *d;
    return format_double(*d);
  }
  if (const auto* b = std::get_if<bool>(&c)) return *b;
  return std::get<std::string>(c);
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

std::filesystem::path write_table(const Table& t, const std::filesystem::path& dir, Format fmt) {
  const std::filesystem::path path = dir / (t.name + (fmt == Format::csv ? ".csv" : ".json"));
  if (fmt == Format::json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
      nlohmann::ordered_json obj;
      for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = json_cell(row[i]);
      arr.push_back(std::move(obj));
    }
    write_json(arr, path);
    return path;
  }
  std::ofstream out = open_out(path);
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << '\n';
  }
  finish(out, path);
  return path;
}

void write_json(const nlohmann::ordered_json& j, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
  finish(out, path);
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
}

}  // namespace jc::cli
