#pragma once

#include <string>

#include "mapper.hpp"
#include "persistence.hpp"

namespace dbm {

std::string graph_to_dot(const MapperGraph& graph);
std::string graph_to_json(const MapperGraph& graph);
std::string graph_to_graphml(const MapperGraph& graph);

// 2-d layout: each vertex at the mean of its members' first two coordinates.
struct LayoutVertex {
  double x = 0.0;
  double y = 0.0;
};
std::vector<LayoutVertex> layout_graph(const MapperGraph& graph, const PointCloud& cloud);

std::string graph_to_svg(const MapperGraph& graph, const PointCloud& cloud);

// One JSON object per line: {"birth": ..., "death": ..., "kind": "..."}.
std::string diagram_to_jsonl(const PersistenceDiagram& diagram);
PersistenceDiagram diagram_from_jsonl(const std::string& text);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace dbm
