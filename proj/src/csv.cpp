#include "csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dbm {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // Trim surrounding whitespace.
    std::size_t b = field.find_first_not_of(" \t\r");
    std::size_t e = field.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_number(const std::string& s, std::size_t row, const std::string& path) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    fail(errc::io, path + ": row " + std::to_string(row) + ": '" + s + "' is not a number");
  }
  return value;
}

}  // namespace

CsvDataset read_csv(const std::string& path, const std::string& lens_column) {
  std::ifstream in(path);
  require(in.good(), errc::io, "cannot open '" + path + "'");

  std::string line;
  require(static_cast<bool>(std::getline(in, line)), errc::io,
          path + ": missing header row");
  std::vector<std::string> header = split_line(line);
  require(!header.empty(), errc::io, path + ": empty header row");

  std::string wanted = lens_column.empty() ? "lens" : lens_column;
  int lens_index = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == wanted) lens_index = static_cast<int>(i);
  }
  if (lens_index < 0 && !lens_column.empty()) {
    fail(errc::invalid_parameter,
         path + ": no column named '" + lens_column +
             "'; the lens comes from a column named 'lens', a column selected with"
             " --lens-column, or (as both coordinate and lens) the last column");
  }
  // Without an explicit lens column the last column doubles as a coordinate.
  bool lens_is_coordinate = lens_index < 0;
  if (lens_index < 0) lens_index = static_cast<int>(header.size()) - 1;
  require(lens_is_coordinate || header.size() >= 2, errc::invalid_parameter,
          path + ": a dedicated lens column needs at least one coordinate column");

  std::vector<std::string> columns;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (lens_is_coordinate || static_cast<int>(i) != lens_index) columns.push_back(header[i]);
  }

  std::vector<double> coords;
  std::vector<double> lens;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<std::string> fields = split_line(line);
    require(fields.size() == header.size(), errc::io,
            path + ": row " + std::to_string(row) + " has " +
                std::to_string(fields.size()) + " fields, expected " +
                std::to_string(header.size()));
    for (std::size_t i = 0; i < fields.size(); ++i) {
      double v = parse_number(fields[i], row, path);
      if (static_cast<int>(i) == lens_index) {
        lens.push_back(v);
        if (!lens_is_coordinate) continue;
      }
      coords.push_back(v);
    }
  }
  require(!lens.empty(), errc::io, path + ": no data rows");

  return {PointCloud(std::move(coords), columns.size()), LensMap(std::move(lens)),
          std::move(columns)};
}

void write_csv(const std::string& path, const PointCloud& cloud, const LensMap& lens,
               const std::vector<std::string>& columns) {
  require(lens.size() == cloud.size(), errc::invalid_parameter,
          "lens must match the point cloud");
  std::ofstream out(path);
  require(out.good(), errc::io, "cannot write '" + path + "'");

  for (std::size_t d = 0; d < cloud.dim(); ++d) {
    if (d < columns.size()) {
      out << columns[d];
    } else {
      out << "x" << d;
    }
    out << ',';
  }
  out << "lens\n";

  char buf[32];
  auto emit = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
  };
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (std::size_t d = 0; d < cloud.dim(); ++d) {
      emit(cloud.coord(i, d));
      out << ',';
    }
    emit(lens[i]);
    out << '\n';
  }
  require(out.good(), errc::io, "failed writing '" + path + "'");
}

}  // namespace dbm
