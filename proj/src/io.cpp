/* Apache License, Version 2.0 */

#include "gbpd/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "gbpd/error.hpp"
#include "json.hpp"

namespace gbpd {

namespace {

using nlohmann::json;

std::string trim(std::string s) {
  const auto not_space = [](unsigned char ch) { return !std::isspace(ch); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_real(const std::string& s, std::string_view source, int line, const char* field) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v))
    throw Error(ErrorKind::InvalidInput, std::string(source) + ":" + std::to_string(line) + ": bad value for " +
                                             field + ": '" + s + "'");
  return v;
}

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  if (std::isnan(v)) return "\"nan\"";
  return format_double(v);
}

double read_num(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw Error(ErrorKind::InvalidInput, "unexpected string '" + s + "' where a number was expected");
  }
  return j.get<double>();
}

std::string_view end_kind_name(EndKind k) {
  switch (k) {
    case EndKind::Vertex: return "vertex";
    case EndKind::Unbounded: return "unbounded";
    case EndKind::Loop: return "loop";
  }
  return "?";
}

EndKind end_kind_of(const std::string& s) {
  if (s == "vertex") return EndKind::Vertex;
  if (s == "unbounded") return EndKind::Unbounded;
  if (s == "loop") return EndKind::Loop;
  throw Error(ErrorKind::InvalidInput, "unknown endpoint kind '" + s + "'");
}

std::string_view component_name(ComponentKind k) {
  switch (k) {
    case ComponentKind::Loop: return "loop";
    case ComponentKind::Arc: return "arc";
    case ComponentKind::Line: return "line";
  }
  return "?";
}

ComponentKind component_of(const std::string& s) {
  if (s == "loop") return ComponentKind::Loop;
  if (s == "arc") return ComponentKind::Arc;
  if (s == "line") return ComponentKind::Line;
  throw Error(ErrorKind::InvalidInput, "unknown component kind '" + s + "'");
}

template <class T>
std::string int_list(const std::vector<T>& v) {
  std::string s = "[";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(v[k]);
  }
  return s + "]";
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Scene read_scene_csv(std::istream& is, std::string_view source) {
  static const std::vector<std::string> kHeader{"id", "px", "py", "m11", "m12", "m22", "w"};
  Scene scene;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto cells = split_csv(line);
    if (!have_header) {
      if (cells != kHeader)
        throw Error(ErrorKind::InvalidInput,
                    std::string(source) + ":" + std::to_string(line_no) + ": expected header id,px,py,m11,m12,m22,w");
      have_header = true;
      continue;
    }
    if (cells.size() != kHeader.size())
      throw Error(ErrorKind::InvalidInput, std::string(source) + ":" + std::to_string(line_no) + ": expected 7 fields, got " +
                                               std::to_string(cells.size()));
    Generator g;
    const double id = parse_real(cells[0], source, line_no, "id");
    if (id != std::floor(id) || std::abs(id) > 2e9)
      throw Error(ErrorKind::InvalidInput, std::string(source) + ":" + std::to_string(line_no) + ": id must be an integer");
    g.id = static_cast<int>(id);
    g.p = {parse_real(cells[1], source, line_no, "px"), parse_real(cells[2], source, line_no, "py")};
    g.m = {parse_real(cells[3], source, line_no, "m11"), parse_real(cells[4], source, line_no, "m12"),
           parse_real(cells[5], source, line_no, "m22")};
    g.w = parse_real(cells[6], source, line_no, "w");
    if (!g.m.positive_definite())
      throw Error(ErrorKind::InvalidInput,
                  std::string(source) + ":" + std::to_string(line_no) + ": matrix is not positive definite");
    scene.push_back(g);
  }
  if (!have_header) throw Error(ErrorKind::InvalidInput, std::string(source) + ": empty scene file");
  std::stable_sort(scene.begin(), scene.end(), [](const Generator& a, const Generator& b) { return a.id < b.id; });
  validate_scene(scene);
  return scene;
}

void write_scene_csv(std::ostream& os, const Scene& scene) {
  os << "id,px,py,m11,m12,m22,w\n";
  for (const Generator& g : scene)
    os << g.id << ',' << format_double(g.p.x) << ',' << format_double(g.p.y) << ',' << format_double(g.m.m11) << ','
       << format_double(g.m.m12) << ',' << format_double(g.m.m22) << ',' << format_double(g.w) << '\n';
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  return read_scene_csv(in, path);
}

void save_scene(const std::string& path, const Scene& scene) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  write_scene_csv(out, scene);
}

void write_diagram_json(std::ostream& os, const DiagramGraph& g) {
  const auto gid = [&](int index) { return g.generators[index].id; };
  os << "{\n  \"generators\": [";
  for (std::size_t k = 0; k < g.generators.size(); ++k) {
    const Generator& gen = g.generators[k];
    os << (k ? ",\n    " : "\n    ") << "{\"id\": " << gen.id << ", \"px\": " << num(gen.p.x)
       << ", \"py\": " << num(gen.p.y) << ", \"m11\": " << num(gen.m.m11) << ", \"m12\": " << num(gen.m.m12)
       << ", \"m22\": " << num(gen.m.m22) << ", \"w\": " << num(gen.w) << "}";
  }
  os << "\n  ],\n  \"vertices\": [";
  for (std::size_t k = 0; k < g.vertices.size(); ++k) {
    const Vertex& v = g.vertices[k];
    std::vector<int> ids;
    for (int i : v.gens) ids.push_back(gid(i));
    os << (k ? ",\n    " : "\n    ") << "{\"id\": " << k << ", \"x\": " << num(v.pos.x) << ", \"y\": " << num(v.pos.y)
       << ", \"gens\": " << int_list(ids) << ", \"params\": [";
    bool first = true;
    for (const auto& [pair, t] : v.param_on) {
      os << (first ? "" : ", ") << "{\"pair\": [" << gid(pair.first) << "," << gid(pair.second)
         << "], \"t\": " << num(t) << "}";
      first = false;
    }
    os << "]}";
  }
  os << "\n  ],\n  \"edges\": [";
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    const EdgeSegment& e = g.edges[k];
    const Bisector& b = g.bisector(e.i, e.j);
    const ConicImplicit& c = b.implicit;
    os << (k ? ",\n    " : "\n    ") << "{\"id\": " << k << ", \"pair\": [" << gid(e.i) << "," << gid(e.j)
       << "], \"a11\": " << num(c.a11) << ", \"a12\": " << num(c.a12) << ", \"a22\": " << num(c.a22)
       << ", \"b11\": " << num(c.b11) << ", \"b12\": " << num(c.b12) << ", \"c\": " << num(c.c) << ", \"kind\": \""
       << to_string(b.cls()) << "\", \"component\": " << e.component << ", \"component_kind\": \""
       << component_name(e.kind) << "\", \"t_a\": " << num(e.t_a()) << ", \"t_b\": " << num(e.t_b())
       << ", \"wraps\": " << (e.wraps() ? "true" : "false") << ", \"u_a\": " << num(e.u_a) << ", \"u_b\": " << num(e.u_b)
       << ", \"full\": " << (e.full ? "true" : "false") << ", \"start\": "
       << (e.start_vertex >= 0 ? std::to_string(e.start_vertex) : "null") << ", \"end\": "
       << (e.end_vertex >= 0 ? std::to_string(e.end_vertex) : "null") << ", \"start_kind\": \""
       << end_kind_name(e.start_kind) << "\", \"end_kind\": \"" << end_kind_name(e.end_kind) << "\"}";
  }
  os << "\n  ],\n  \"adjacency\": [";
  for (std::size_t k = 0; k < g.adjacency.size(); ++k)
    os << (k ? ", " : "") << "[" << gid(g.adjacency[k].first) << "," << gid(g.adjacency[k].second) << "]";
  os << "],\n  \"cells\": [";
  for (std::size_t k = 0; k < g.cells.size(); ++k) {
    const CellInfo& c = g.cells[k];
    os << (k ? ",\n    " : "\n    ") << "{\"id\": " << gid(static_cast<int>(k)) << ", \"edges\": " << int_list(c.edges)
       << ", \"components\": [";
    for (std::size_t m = 0; m < c.components.size(); ++m) os << (m ? ", " : "") << int_list(c.components[m]);
    os << "], \"empty\": " << (c.empty ? "true" : "false") << ", \"n_neighbors\": " << c.n_neighbors
       << ", \"n_regions\": " << c.n_regions << "}";
  }
  os << "\n  ]\n}\n";
}

DiagramGraph read_diagram_json(std::istream& is) {
  json doc;
  try {
    doc = json::parse(is);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("diagram JSON: ") + e.what());
  }
  try {
    DiagramGraph g;
    std::map<int, int> index_of;
    for (const json& jg : doc.at("generators")) {
      Generator gen;
      gen.id = jg.at("id").get<int>();
      gen.p = {read_num(jg.at("px")), read_num(jg.at("py"))};
      gen.m = {read_num(jg.at("m11")), read_num(jg.at("m12")), read_num(jg.at("m22"))};
      gen.w = read_num(jg.at("w"));
      index_of[gen.id] = static_cast<int>(g.generators.size());
      g.generators.push_back(gen);
    }
    validate_scene(g.generators);
    const int n = static_cast<int>(g.generators.size());
    const auto idx = [&](const json& j) {
      const auto it = index_of.find(j.get<int>());
      if (it == index_of.end()) throw Error(ErrorKind::InvalidInput, "diagram JSON references an unknown generator");
      return it->second;
    };
    g.bisectors.resize(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) g.bisectors[pair_index(i, j, n)] = make_bisector(g.generators, i, j);

    for (const json& jv : doc.at("vertices")) {
      Vertex v;
      v.pos = {read_num(jv.at("x")), read_num(jv.at("y"))};
      for (const json& id : jv.at("gens")) v.gens.push_back(idx(id));
      if (jv.contains("params"))
        for (const json& jp : jv.at("params")) v.param_on[{idx(jp.at("pair")[0]), idx(jp.at("pair")[1])}] = read_num(jp.at("t"));
      g.vertices.push_back(std::move(v));
    }
    for (const json& je : doc.at("edges")) {
      EdgeSegment e;
      e.i = idx(je.at("pair")[0]);
      e.j = idx(je.at("pair")[1]);
      e.component = je.at("component").get<int>();
      e.kind = component_of(je.at("component_kind").get<std::string>());
      e.u_a = read_num(je.at("u_a"));
      e.u_b = read_num(je.at("u_b"));
      e.full = je.at("full").get<bool>();
      e.start_vertex = je.at("start").is_null() ? -1 : je.at("start").get<int>();
      e.end_vertex = je.at("end").is_null() ? -1 : je.at("end").get<int>();
      e.start_kind = end_kind_of(je.at("start_kind").get<std::string>());
      e.end_kind = end_kind_of(je.at("end_kind").get<std::string>());
      if (e.i >= e.j) throw Error(ErrorKind::InvalidInput, "edge pair must be ordered");
      if (e.component < 0 || e.component >= static_cast<int>(g.bisector(e.i, e.j).components().size()))
        throw Error(ErrorKind::InvalidInput, "edge component out of range");
      g.edges.push_back(e);
    }
    for (const json& ja : doc.at("adjacency")) g.adjacency.emplace_back(idx(ja[0]), idx(ja[1]));
    g.cells.assign(n, CellInfo{});
    for (const json& jc : doc.at("cells")) {
      CellInfo& c = g.cells.at(idx(jc.at("id")));
      c.edges = jc.at("edges").get<std::vector<int>>();
      c.components = jc.at("components").get<std::vector<std::vector<int>>>();
      c.empty = jc.at("empty").get<bool>();
      c.n_neighbors = jc.value("n_neighbors", 0);
      c.n_regions = jc.value("n_regions", 0);
    }
    return g;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("diagram JSON: ") + e.what());
  }
}

void write_measure_csv(std::ostream& os, const std::vector<CellMeasure>& cells) {
  os << "cell_id,area,perimeter,n_components,n_neighbors\n";
  for (const CellMeasure& m : cells)
    os << m.cell_id << ',' << format_double(m.area) << ',' << format_double(m.perimeter) << ',' << m.n_components
       << ',' << m.n_neighbors << '\n';
}

}  // namespace gbpd
