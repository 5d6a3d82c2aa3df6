#include "ferrohyst/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include <fmt/format.h>

#include "ferrohyst/error.hpp"

namespace ferrohyst {

namespace {

void append_row(std::string& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out += ',';
    fmt::format_to(std::back_inserter(out), "{:.17g}", v);
    first = false;
  }
  out += '\n';
}

}  // namespace

std::string point_trajectory_csv(std::span<const PointRecord> records) {
  std::string out = "t,eps,E,q,P,U,sigma,D,F,diss\n";
  for (const auto& r : records) {
    append_row(out, {r.t, r.eps, r.E, r.q, r.P, r.U, r.sigma, r.D, r.F, r.diss});
  }
  return out;
}

std::string beam_snapshots_csv(const BeamMesh& mesh, std::span<const BeamSnapshot> snapshots) {
  std::string out = "t,x,u,v,eps,sigma,E,P\n";
  const std::size_t n_el = mesh.elements;
  auto at_node = [n_el](const std::vector<double>& el, std::size_t i) {
    if (i == 0) return el.front();
    if (i == n_el) return el.back();
    return 0.5 * (el[i - 1] + el[i]);
  };
  for (const auto& s : snapshots) {
    for (std::size_t i = 0; i < mesh.nodes(); ++i) {
      append_row(out, {s.t, mesh.x(i), s.u[i], s.v[i], at_node(s.eps, i), at_node(s.sigma, i),
                       at_node(s.E, i), at_node(s.P, i)});
    }
  }
  return out;
}

std::string beam_energy_csv(std::span<const EnergyRow> rows) {
  std::string out = "t,K,F,diss_hyst,diss_visc,work_boundary,residual\n";
  for (const auto& r : rows) {
    append_row(out, {r.t, r.K, r.F, r.diss_hyst, r.diss_visc, r.work_boundary, r.residual});
  }
  return out;
}

std::string table_csv(std::span<const std::string> header, std::span<const std::vector<double>> rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i > 0) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      fmt::format_to(std::back_inserter(out), "{:.17g}", row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::Io, "cannot move output into " + path.string());
  }
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw Error(ErrorCode::InvalidParameter, "no column '" + std::string(name) + "'");
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  CsvTable table;
  std::string line;
  if (!std::getline(in, line) || line.empty()) {
    throw Error(ErrorCode::Io, path.string() + " has no header");
  }
  std::stringstream hs(line);
  for (std::string cell; std::getline(hs, cell, ',');) table.header.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p <= end) {
      const char* comma = std::find(p, end, ',');
      double v = 0.0;
      auto [ptr, err] = std::from_chars(p, comma, v);
      if (err != std::errc() || ptr != comma) {
        throw Error(ErrorCode::Io, "malformed number in " + path.string());
      }
      row.push_back(v);
      p = comma + 1;
    }
    if (row.size() != table.header.size()) {
      throw Error(ErrorCode::Io, "ragged row in " + path.string());
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace ferrohyst
