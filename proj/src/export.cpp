#include "export.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dbm {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string graph_to_dot(const MapperGraph& graph) {
  std::ostringstream out;
  out << (graph.is_multigraph ? "graph multinerve {\n" : "graph mapper {\n");
  for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
    const MapperVertex& v = graph.vertices[i];
    out << "  v" << i << " [label=\"" << v.interval_index << ":" << v.cluster_id
        << "\", fbar=" << num(v.fbar) << ", size=" << v.members.size() << "];\n";
  }
  for (const MapperEdge& e : graph.edges) {
    out << "  v" << e.a << " -- v" << e.b << " [weight=" << num(e.weight)
        << ", multiplicity=" << e.multiplicity << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string graph_to_json(const MapperGraph& graph) {
  nlohmann::ordered_json j;
  j["multigraph"] = graph.is_multigraph;
  j["vertices"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
    const MapperVertex& v = graph.vertices[i];
    nlohmann::ordered_json vj;
    vj["id"] = i;
    vj["interval"] = v.interval_index;
    vj["cluster"] = v.cluster_id;
    vj["fbar"] = v.fbar;
    vj["members"] = v.members;
    j["vertices"].push_back(std::move(vj));
  }
  j["edges"] = nlohmann::ordered_json::array();
  for (const MapperEdge& e : graph.edges) {
    nlohmann::ordered_json ej;
    ej["source"] = e.a;
    ej["target"] = e.b;
    ej["weight"] = e.weight;
    ej["multiplicity"] = e.multiplicity;
    j["edges"].push_back(std::move(ej));
  }
  return j.dump(2) + "\n";
}

std::string graph_to_graphml(const MapperGraph& graph) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      << "  <key id=\"fbar\" for=\"node\" attr.name=\"fbar\" attr.type=\"double\"/>\n"
      << "  <key id=\"interval\" for=\"node\" attr.name=\"interval\" attr.type=\"int\"/>\n"
      << "  <key id=\"cluster\" for=\"node\" attr.name=\"cluster\" attr.type=\"int\"/>\n"
      << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n"
      << "  <key id=\"multiplicity\" for=\"edge\" attr.name=\"multiplicity\" attr.type=\"int\"/>\n"
      << "  <graph id=\"G\" edgedefault=\"undirected\">\n";
  for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
    const MapperVertex& v = graph.vertices[i];
    out << "    <node id=\"v" << i << "\">"
        << "<data key=\"fbar\">" << num(v.fbar) << "</data>"
        << "<data key=\"interval\">" << v.interval_index << "</data>"
        << "<data key=\"cluster\">" << v.cluster_id << "</data>"
        << "</node>\n";
  }
  for (std::size_t k = 0; k < graph.edges.size(); ++k) {
    const MapperEdge& e = graph.edges[k];
    out << "    <edge id=\"e" << k << "\" source=\"v" << e.a << "\" target=\"v" << e.b
        << "\"><data key=\"weight\">" << num(e.weight) << "</data>"
        << "<data key=\"multiplicity\">" << e.multiplicity << "</data></edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
  return out.str();
}

std::vector<LayoutVertex> layout_graph(const MapperGraph& graph, const PointCloud& cloud) {
  std::vector<LayoutVertex> layout(graph.vertices.size());
  for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
    const MapperVertex& v = graph.vertices[i];
    double sx = 0.0, sy = 0.0;
    for (int p : v.members) {
      sx += cloud.coord(static_cast<std::size_t>(p), 0);
      if (cloud.dim() > 1) sy += cloud.coord(static_cast<std::size_t>(p), 1);
    }
    double n = static_cast<double>(v.members.size());
    layout[i] = {sx / n, sy / n};
  }
  return layout;
}

namespace {

struct Box {
  double lo_x = 0.0, lo_y = 0.0, hi_x = 1.0, hi_y = 1.0;
};

Box bounding_box(const std::vector<LayoutVertex>& layout) {
  Box box;
  if (layout.empty()) return box;
  box.lo_x = box.hi_x = layout.front().x;
  box.lo_y = box.hi_y = layout.front().y;
  for (const auto& v : layout) {
    box.lo_x = std::min(box.lo_x, v.x);
    box.hi_x = std::max(box.hi_x, v.x);
    box.lo_y = std::min(box.lo_y, v.y);
    box.hi_y = std::max(box.hi_y, v.y);
  }
  if (box.hi_x == box.lo_x) box.hi_x = box.lo_x + 1.0;
  if (box.hi_y == box.lo_y) box.hi_y = box.lo_y + 1.0;
  return box;
}

void render_graph(std::ostringstream& out, const MapperGraph& graph,
                  const std::vector<LayoutVertex>& layout, double px, double py,
                  double width, double height) {
  Box box = bounding_box(layout);
  double margin = 0.08 * std::min(width, height);
  auto sx = [&](double x) {
    return px + margin + (x - box.lo_x) / (box.hi_x - box.lo_x) * (width - 2 * margin);
  };
  auto sy = [&](double y) {
    // SVG y grows downward.
    return py + height - margin -
           (y - box.lo_y) / (box.hi_y - box.lo_y) * (height - 2 * margin);
  };
  for (const MapperEdge& e : graph.edges) {
    out << "<line x1=\"" << num(sx(layout[e.a].x)) << "\" y1=\"" << num(sy(layout[e.a].y))
        << "\" x2=\"" << num(sx(layout[e.b].x)) << "\" y2=\"" << num(sy(layout[e.b].y))
        << "\" stroke=\"#555\" stroke-width=\"1\"/>\n";
  }
  for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
    double r = 2.0 + std::sqrt(static_cast<double>(graph.vertices[i].members.size()));
    out << "<circle cx=\"" << num(sx(layout[i].x)) << "\" cy=\"" << num(sy(layout[i].y))
        << "\" r=\"" << num(std::min(r, 8.0)) << "\" fill=\"#2a6fb0\"/>\n";
  }
}

}  // namespace

std::string graph_to_svg(const MapperGraph& graph, const PointCloud& cloud) {
  std::ostringstream out;
  double width = 480, height = 360;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  std::vector<LayoutVertex> layout = layout_graph(graph, cloud);
  render_graph(out, graph, layout, 0, 0, width, height);
  out << "</svg>\n";
  return out.str();
}

std::string diagram_to_jsonl(const PersistenceDiagram& diagram) {
  std::ostringstream out;
  for (const PersistencePoint& p : diagram.points) {
    nlohmann::ordered_json j;
    j["birth"] = p.birth;
    j["death"] = p.death;
    j["kind"] = point_kind_name(p.kind);
    out << j.dump() << '\n';
  }
  return out.str();
}

PersistenceDiagram diagram_from_jsonl(const std::string& text) {
  PersistenceDiagram diagram;
  std::istringstream in(text);
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    try {
      nlohmann::json j = nlohmann::json::parse(line);
      PersistencePoint p;
      p.birth = j.at("birth").get<double>();
      p.death = j.at("death").get<double>();
      p.kind = point_kind_from_name(j.at("kind").get<std::string>());
      diagram.points.push_back(p);
    } catch (const nlohmann::json::exception& e) {
      fail(errc::io, "diagram line " + std::to_string(row) + ": " + e.what());
    }
  }
  return diagram;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  require(out.good(), errc::io, "cannot write '" + path + "'");
  out << text;
  require(out.good(), errc::io, "failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::io, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace dbm
