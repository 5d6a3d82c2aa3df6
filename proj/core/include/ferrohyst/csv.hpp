#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ferrohyst/beam.hpp"
#include "ferrohyst/constitutive.hpp"

namespace ferrohyst {

// Every number is printed with "{:.17g}", rows end in '\n'.

[[nodiscard]] std::string point_trajectory_csv(std::span<const PointRecord> records);

/// Rows (t, x, u, v, eps, sigma, E, P) per snapshot and node; element fields
/// are averaged onto the nodes, end nodes take their single element.
[[nodiscard]] std::string beam_snapshots_csv(const BeamMesh& mesh,
                                             std::span<const BeamSnapshot> snapshots);

[[nodiscard]] std::string beam_energy_csv(std::span<const EnergyRow> rows);

[[nodiscard]] std::string table_csv(std::span<const std::string> header,
                                    std::span<const std::vector<double>> rows);

/// Writes through a temporary sibling and renames it into place. Creates
/// missing parent directories. Throws io on failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Header and numeric rows of a CSV file written by this library.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  [[nodiscard]] std::size_t column(std::string_view name) const;
};
[[nodiscard]] CsvTable read_csv(const std::filesystem::path& path);

}  // namespace ferrohyst
