#pragma once

#include <string>
#include <vector>

#include "geometry.hpp"

namespace dbm {

struct CsvDataset {
  PointCloud cloud;
  LensMap lens;
  std::vector<std::string> columns;  // coordinate column names
};

// Reads a point cloud with one row per point. A header row is required. A
// column named `lens` (or `lens_column`, when non-empty) supplies the Morse
// values and is excluded from the coordinates; otherwise the last column is
// used as both the lens and a coordinate.
CsvDataset read_csv(const std::string& path, const std::string& lens_column = "");

// Writes coordinates plus an explicit final `lens` column.
void write_csv(const std::string& path, const PointCloud& cloud, const LensMap& lens,
               const std::vector<std::string>& columns = {});

}  // namespace dbm
