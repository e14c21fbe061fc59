/* Apache License, Version 2.0 */

#include "gbpd/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <thread>

#include "gbpd/clip.hpp"
#include "gbpd/error.hpp"

namespace gbpd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Runs body(k) for k in [0, count) on `threads` workers; results must be
// written to per-k slots so the outcome does not depend on scheduling.
void parallel_for(int count, int threads, const std::function<void(int)>& body) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int k = 0; k < count; ++k) body(k);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int k = t; k < count; k += threads) body(k);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct Candidate {
  Vec2 pos;
  std::array<int, 3> triple;
};

double rational_param(ComponentKind kind, double u) {
  if (kind == ComponentKind::Line) return u;
  const double w = std::remainder(u, kTwoPi);
  if (std::abs(std::abs(w) - kPi) <= 1e-15) return kInf;
  return std::tan(0.5 * w);
}

double representative_param(ComponentKind kind, double lo, double hi, double span) {
  if (kind != ComponentKind::Line) return 0.5 * (lo + hi);
  if (std::isinf(lo) && std::isinf(hi)) return 0.0;
  if (std::isinf(lo)) return hi - span;
  if (std::isinf(hi)) return lo + span;
  return 0.5 * (lo + hi);
}

}  // namespace

double EdgeSegment::t_a() const { return rational_param(kind, u_a); }
double EdgeSegment::t_b() const { return rational_param(kind, u_b); }

bool EdgeSegment::wraps() const {
  if (kind == ComponentKind::Line) return false;
  if (full && kind == ComponentKind::Loop) return true;
  const double k = std::ceil((u_a - kPi) / kTwoPi);
  const double crossing = kPi + kTwoPi * k;
  return crossing > u_a && crossing < u_b;
}

std::size_t pair_index(int i, int j, int n) {
  if (i > j) std::swap(i, j);
  const std::size_t si = i;
  return si * (2 * static_cast<std::size_t>(n) - si - 1) / 2 + static_cast<std::size_t>(j - i - 1);
}

const Bisector& DiagramGraph::bisector(int i, int j) const {
  return bisectors[pair_index(i, j, static_cast<int>(generators.size()))];
}

Curve DiagramGraph::curve(const EdgeSegment& e) const {
  const Bisector& b = bisector(e.i, e.j);
  return b.curve(b.components()[e.component]);
}

double DiagramGraph::representative(const EdgeSegment& e) const {
  return representative_param(e.kind, e.u_a, e.u_b, bisector(e.i, e.j).frame.scale);
}

double scene_scale(const Scene& scene) {
  if (scene.empty()) return 1.0;
  double xmin = kInf, ymin = kInf, xmax = -kInf, ymax = -kInf, axis = 0.0;
  for (const Generator& g : scene) {
    xmin = std::min(xmin, g.p.x);
    xmax = std::max(xmax, g.p.x);
    ymin = std::min(ymin, g.p.y);
    ymax = std::max(ymax, g.p.y);
    const SymEigen2 e = eigen_sym2(g.m);
    if (e.values[1] > 0.0) axis = std::max(axis, 1.0 / std::sqrt(e.values[1]));
  }
  return std::max({std::hypot(xmax - xmin, ymax - ymin), axis, 1.0});
}

bool pair_visible_at(const Vec2& q, int i, int j, const Scene& scene) {
  const double d = 0.5 * (dist_g(q, scene[i]) + dist_g(q, scene[j]));
  const double limit = d - 1e-12 * (1.0 + std::abs(d));
  for (int k = 0; k < static_cast<int>(scene.size()); ++k) {
    if (k == i || k == j) continue;
    if (dist_g(q, scene[k]) < limit) return false;
  }
  return true;
}

std::vector<EdgeSegment> visible_segments(const Bisector& b, int component, const std::vector<SplitPoint>& splits,
                                          const Scene& scene) {
  const auto comps = b.components();
  const Component& c = comps.at(component);
  const Curve curve = b.curve(c);

  std::vector<EdgeSegment> candidates;
  const auto add = [&](double lo, double hi, EndKind sk, EndKind ek, int sv, int ev, bool full) {
    EdgeSegment e;
    e.i = b.i;
    e.j = b.j;
    e.component = component;
    e.kind = c.kind;
    e.u_a = lo;
    e.u_b = hi;
    e.full = full;
    e.start_kind = sk;
    e.end_kind = ek;
    e.start_vertex = sv;
    e.end_vertex = ev;
    candidates.push_back(e);
  };

  if (splits.empty()) {
    if (c.kind == ComponentKind::Loop)
      add(c.lo, c.lo + kTwoPi, EndKind::Loop, EndKind::Loop, -1, -1, true);
    else
      add(c.lo, c.hi, EndKind::Unbounded, EndKind::Unbounded, -1, -1, true);
  } else if (c.kind == ComponentKind::Loop) {
    for (std::size_t k = 0; k < splits.size(); ++k) {
      const SplitPoint& s0 = splits[k];
      const SplitPoint& s1 = splits[(k + 1) % splits.size()];
      const double hi = k + 1 < splits.size() ? s1.u : s1.u + kTwoPi;
      add(s0.u, hi, EndKind::Vertex, EndKind::Vertex, s0.vertex, s1.vertex, false);
    }
  } else {
    add(c.lo, splits.front().u, EndKind::Unbounded, EndKind::Vertex, -1, splits.front().vertex, false);
    for (std::size_t k = 0; k + 1 < splits.size(); ++k)
      add(splits[k].u, splits[k + 1].u, EndKind::Vertex, EndKind::Vertex, splits[k].vertex, splits[k + 1].vertex,
          false);
    add(splits.back().u, c.hi, EndKind::Vertex, EndKind::Unbounded, splits.back().vertex, -1, false);
  }

  std::vector<EdgeSegment> out;
  for (const EdgeSegment& e : candidates) {
    const double rep = representative_param(c.kind, e.u_a, e.u_b, b.frame.scale);
    if (pair_visible_at(curve.point(rep), b.i, b.j, scene)) out.push_back(e);
  }
  return out;
}

DiagramGraph build_diagram(const Scene& scene, const BuildOptions& opt) {
  validate_scene(scene);
  const int n = static_cast<int>(scene.size());
  const int threads = std::max(1, opt.threads);
  const ToleranceSet& tol = opt.tol;
  DiagramGraph g;
  g.generators = scene;

  const std::size_t n_pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
  g.bisectors.resize(n_pairs);
  parallel_for(n, threads, [&](int i) {
    for (int j = i + 1; j < n; ++j) g.bisectors[pair_index(i, j, n)] = make_bisector(scene, i, j, {tol.rank});
  });

  const double scale = scene_scale(scene);
  const auto usable = [](const Bisector& b) {
    return b.cls() != ConicClass::Empty && b.cls() != ConicClass::WholePlane;
  };

  // Vertex candidates from every triple.
  std::vector<std::vector<Candidate>> per_i(n);
  parallel_for(n, threads, [&](int i) {
    for (int j = i + 1; j < n; ++j) {
      const Bisector& bij = g.bisector(i, j);
      if (!usable(bij)) continue;
      for (int k = j + 1; k < n; ++k) {
        const Bisector& bik = g.bisector(i, k);
        const Bisector& bjk = g.bisector(j, k);
        if (!usable(bik) || !usable(bjk)) continue;
        IntersectOptions io;
        io.frame.origin = (scene[i].p + scene[j].p + scene[k].p) / 3.0;
        io.frame.scale = std::max({bij.frame.scale, bik.frame.scale, bjk.frame.scale});
        io.eps_rank = tol.rank;
        io.eps_res = tol.res;
        io.dedup = tol.dedup * scale;
        std::vector<Vec2> pts;
        try {
          pts = conic_conic_intersections(bij.implicit, bik.implicit, io);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::OverlappingConics) throw;
          try {
            pts = conic_conic_intersections(bij.implicit, bjk.implicit, io);
          } catch (const Error& e2) {
            if (e2.kind() != ErrorKind::OverlappingConics) throw;
            continue;
          }
        }
        for (const Vec2& p : pts) {
          const Vec2 v = polish_vertex(p, scene[i], scene[j], scene[k]);
          if (is_gbpd_vertex(v, {i, j, k}, scene, tol.vert)) per_i[i].push_back({v, {i, j, k}});
        }
      }
    }
  });

  std::vector<Candidate> cand;
  for (auto& v : per_i) cand.insert(cand.end(), v.begin(), v.end());
  std::stable_sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) {
    return a.pos.x < b.pos.x || (a.pos.x == b.pos.x && a.pos.y < b.pos.y);
  });

  // Merge candidates closer than the merge tolerance (union-find over an x sweep).
  const double merge = tol.vertex_merge * scale;
  std::vector<int> parent(cand.size());
  std::iota(parent.begin(), parent.end(), 0);
  const std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
  for (std::size_t a = 0; a < cand.size(); ++a) {
    for (std::size_t b = a + 1; b < cand.size() && cand[b].pos.x - cand[a].pos.x <= merge; ++b) {
      if (norm(cand[b].pos - cand[a].pos) <= merge) {
        const int ra = find(static_cast<int>(a));
        const int rb = find(static_cast<int>(b));
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
      }
    }
  }
  std::map<int, Vertex> clusters;
  for (std::size_t a = 0; a < cand.size(); ++a) {
    Vertex& v = clusters[find(static_cast<int>(a))];
    if (v.gens.empty()) v.pos = cand[a].pos;
    v.gens.insert(v.gens.end(), cand[a].triple.begin(), cand[a].triple.end());
  }
  for (auto& [root, v] : clusters) {
    double dmin = kInf;
    for (const Generator& gen : scene) dmin = std::min(dmin, dist_g(v.pos, gen));
    const double limit = dmin + tol.vert * (1.0 + std::abs(dmin));
    for (int k = 0; k < n; ++k)
      if (dist_g(v.pos, scene[k]) <= limit) v.gens.push_back(k);
    std::sort(v.gens.begin(), v.gens.end());
    v.gens.erase(std::unique(v.gens.begin(), v.gens.end()), v.gens.end());
    g.vertices.push_back(std::move(v));
  }
  std::stable_sort(g.vertices.begin(), g.vertices.end(), [](const Vertex& a, const Vertex& b) {
    return a.pos.x < b.pos.x || (a.pos.x == b.pos.x && a.pos.y < b.pos.y);
  });

  // Vertex parameters on each bisector component.
  std::map<std::size_t, std::map<int, std::vector<SplitPoint>>> splits;
  const double locate_tol = 1e-6 * scale;
  for (int vid = 0; vid < static_cast<int>(g.vertices.size()); ++vid) {
    Vertex& v = g.vertices[vid];
    for (std::size_t x = 0; x < v.gens.size(); ++x) {
      for (std::size_t y = x + 1; y < v.gens.size(); ++y) {
        const int a = v.gens[x];
        const int b = v.gens[y];
        const Bisector& bis = g.bisector(a, b);
        if (!usable(bis)) continue;
        const auto comps = bis.components();
        int best = -1;
        double best_u = 0.0, best_d = kInf;
        for (int c = 0; c < static_cast<int>(comps.size()); ++c) {
          const auto u = bis.locate(comps[c], v.pos, locate_tol);
          if (!u) continue;
          const double d = norm(bis.curve(comps[c]).point(*u) - v.pos);
          if (d < best_d) {
            best = c;
            best_u = *u;
            best_d = d;
          }
        }
        if (best < 0) continue;
        splits[pair_index(a, b, n)][best].push_back({best_u, vid});
        v.param_on[{a, b}] = rational_param(comps[best].kind, best_u);
      }
    }
  }

  // Visible intervals of every pair, in pair order.
  std::vector<std::vector<EdgeSegment>> per_pair(n_pairs);
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(n_pairs);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  parallel_for(static_cast<int>(n_pairs), threads, [&](int p) {
    const Bisector& bis = g.bisectors[p];
    if (!usable(bis)) return;
    const auto comps = bis.components();
    const auto it = splits.find(static_cast<std::size_t>(p));
    for (int c = 0; c < static_cast<int>(comps.size()); ++c) {
      std::vector<SplitPoint> sp;
      if (it != splits.end()) {
        const auto jt = it->second.find(c);
        if (jt != it->second.end()) sp = jt->second;
      }
      std::sort(sp.begin(), sp.end(), [](const SplitPoint& a, const SplitPoint& b) {
        return a.u < b.u || (a.u == b.u && a.vertex < b.vertex);
      });
      const double merge_u = comps[c].kind == ComponentKind::Line ? tol.param_merge * bis.frame.scale : tol.param_merge;
      std::vector<SplitPoint> merged;
      for (const SplitPoint& s : sp)
        if (merged.empty() || s.u - merged.back().u > merge_u) merged.push_back(s);
      if (comps[c].kind == ComponentKind::Loop && merged.size() > 1 &&
          merged.front().u + kTwoPi - merged.back().u <= merge_u)
        merged.pop_back();
      auto segs = visible_segments(bis, c, merged, scene);
      per_pair[p].insert(per_pair[p].end(), segs.begin(), segs.end());
    }
  });
  for (auto& segs : per_pair) g.edges.insert(g.edges.end(), segs.begin(), segs.end());

  assemble_cells(g);
  return g;
}

void assemble_cells(DiagramGraph& g) {
  const int n = static_cast<int>(g.generators.size());
  g.cells.assign(n, CellInfo{});
  std::set<std::pair<int, int>> adj;
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    const EdgeSegment& edge = g.edges[e];
    g.cells[edge.i].edges.push_back(e);
    g.cells[edge.j].edges.push_back(e);
    adj.insert({edge.i, edge.j});
  }
  g.adjacency.assign(adj.begin(), adj.end());

  for (int c = 0; c < n; ++c) {
    CellInfo& cell = g.cells[c];
    std::set<int> partners;
    for (int e : cell.edges) partners.insert(g.edges[e].i == c ? g.edges[e].j : g.edges[e].i);
    cell.n_neighbors = static_cast<int>(partners.size());
    // Without edges a cell is either empty or the whole plane.
    cell.empty = n >= 2 && cell.edges.empty() && nearest_generator(g.generators, g.generators[c].p) != c;

    // Group edges that share an endpoint vertex.
    const int m = static_cast<int>(cell.edges.size());
    std::vector<int> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    const std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
    std::map<int, int> first_at_vertex;
    for (int k = 0; k < m; ++k) {
      const EdgeSegment& e = g.edges[cell.edges[k]];
      for (int v : {e.start_vertex, e.end_vertex}) {
        if (v < 0) continue;
        const auto [it, inserted] = first_at_vertex.emplace(v, k);
        if (!inserted) {
          const int ra = find(it->second);
          const int rb = find(k);
          if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
        }
      }
    }
    std::map<int, std::vector<int>> groups;
    for (int k = 0; k < m; ++k) groups[find(k)].push_back(cell.edges[k]);
    for (auto& [root, edges] : groups) cell.components.push_back(std::move(edges));
  }

  if (n == 1) {
    g.cells[0].n_regions = 1;
    return;
  }
  const ClippedDiagram clipped = clip_to_window(g, enclosing_window(g));
  for (int c = 0; c < n; ++c) g.cells[c].n_regions = clipped.cells[c].n_regions;
}

}  // namespace gbpd
