/* Apache License, Version 2.0 */

#include "gbpd/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "gbpd/error.hpp"

namespace gbpd {

namespace {

double chord_deviation(const Vec2& a, const Vec2& b, const Vec2& m) {
  const Vec2 d = b - a;
  const double len = norm(d);
  if (len == 0.0) return norm(m - a);
  return std::abs(cross(d, m - a)) / len;
}

void subdivide(const Curve& c, double u0, const Vec2& p0, double u1, const Vec2& p1, double tol, int depth,
               std::vector<Vec2>& out) {
  const double um = 0.5 * (u0 + u1);
  const Vec2 pm = c.point(um);
  // Quarter points guard against S-shaped spans whose midpoint sits on the chord.
  const Vec2 q1 = c.point(0.5 * (u0 + um));
  const Vec2 q3 = c.point(0.5 * (um + u1));
  const double dev = std::max({chord_deviation(p0, p1, pm), chord_deviation(p0, p1, q1), chord_deviation(p0, p1, q3)});
  if (depth >= 24 || dev <= tol) {
    out.push_back(p1);
    return;
  }
  subdivide(c, u0, p0, um, pm, tol, depth + 1, out);
  subdivide(c, um, pm, u1, p1, tol, depth + 1, out);
}

std::string colour(int k) {
  // Golden-angle hue walk, fixed saturation and lightness.
  const double h = std::fmod(k * 137.50776405, 360.0);
  char buf[48];
  std::snprintf(buf, sizeof buf, "hsl(%.1f,55%%,78%%)", h);
  return buf;
}

}  // namespace

std::vector<Vec2> flatten(const Curve& c, double u0, double u1, double chord_tol) {
  std::vector<Vec2> out{c.point(u0)};
  if (c.straight()) {
    out.push_back(c.point(u1));
    return out;
  }
  // A few uniform spans first so that closed loops are not mistaken for a point.
  constexpr int kSpans = 8;
  Vec2 prev = out.front();
  for (int k = 1; k <= kSpans; ++k) {
    const double a = u0 + (u1 - u0) * (k - 1) / kSpans;
    const double b = u0 + (u1 - u0) * k / kSpans;
    const Vec2 pb = c.point(b);
    subdivide(c, a, prev, b, pb, chord_tol, 0, out);
    prev = pb;
  }
  return out;
}

std::vector<Vec2> flatten_loop(const PlanarPieces& pp, const Loop& loop, double chord_tol) {
  std::vector<Vec2> poly;
  for (const OrientedPiece& op : loop.pieces) {
    const Piece& p = pp.pieces[op.piece];
    std::vector<Vec2> pts = flatten(p.curve, op.reversed ? p.u1 : p.u0, op.reversed ? p.u0 : p.u1, chord_tol);
    poly.insert(poly.end(), pts.begin(), pts.end() - 1);
  }
  return poly;
}

LabelImage rasterize_diagram(const ClippedDiagram& clipped, int width, int height, double chord_tol_px) {
  LabelImage img = blank_image(clipped.window, width, height, static_cast<int>(clipped.generators.size()));
  const Vec2 px = img.pixel_size();
  const double tol = chord_tol_px * std::min(px.x, px.y);
  struct Segment {
    Vec2 a, b;
  };
  for (int c = 0; c < static_cast<int>(clipped.cells.size()); ++c) {
    std::vector<Segment> segs;
    for (const Loop& loop : clipped.cells[c].loops) {
      const auto poly = flatten_loop(clipped, loop, tol);
      for (std::size_t k = 0; k < poly.size(); ++k) segs.push_back({poly[k], poly[(k + 1) % poly.size()]});
    }
    if (segs.empty()) continue;
    std::vector<std::pair<double, int>> xs;
    for (int row = 0; row < height; ++row) {
      const double y = img.pixel_center(0, row).y;
      xs.clear();
      for (const Segment& s : segs) {
        // Half-open rule on y so that shared polyline nodes count once.
        const bool up = s.a.y <= y && s.b.y > y;
        const bool down = s.b.y <= y && s.a.y > y;
        if (!up && !down) continue;
        const double x = s.a.x + (y - s.a.y) / (s.b.y - s.a.y) * (s.b.x - s.a.x);
        xs.emplace_back(x, up ? 1 : -1);
      }
      if (xs.empty()) continue;
      std::sort(xs.begin(), xs.end());
      int winding = 0;
      for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        winding += xs[k].second;
        if (winding == 0) continue;
        const double x0 = xs[k].first;
        const double x1 = xs[k + 1].first;
        // Pixel columns whose centres fall in [x0, x1).
        const int c0 = std::max(0, static_cast<int>(std::ceil((x0 - img.window.xmin) / px.x - 0.5)));
        const int c1 = std::min(width - 1, static_cast<int>(std::ceil((x1 - img.window.xmin) / px.x - 0.5)) - 1);
        for (int col = c0; col <= c1; ++col) img.at(col, row) = c;
      }
    }
  }
  return img;
}

std::string render_svg(const DiagramGraph& g, const ClippedDiagram& clipped, const SvgOptions& opt) {
  const Window& win = clipped.window;
  const double sx = opt.width / win.width();
  const double sy = opt.height / win.height();
  const double tol = opt.chord_tol_px / std::max(sx, sy);
  const auto X = [&](double x) { return (x - win.xmin) * sx; };
  const auto Y = [&](double y) { return (win.ymax - y) * sy; };
  char buf[256];
  std::string svg;
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" viewBox=\"0 0 %d %d\">\n",
                opt.width, opt.height, opt.width, opt.height);
  svg += buf;
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  const auto path_of = [&](const std::vector<Vec2>& pts, bool close) {
    std::string d;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%c%.3f %.3f", k ? 'L' : 'M', X(pts[k].x), Y(pts[k].y));
      d += buf;
    }
    if (close) d += "Z";
    return d;
  };

  if (opt.fill_cells) {
    for (int c = 0; c < static_cast<int>(clipped.cells.size()); ++c) {
      std::string d;
      for (const Loop& loop : clipped.cells[c].loops) d += path_of(flatten_loop(clipped, loop, tol), true);
      if (d.empty()) continue;
      svg += "<path fill-rule=\"nonzero\" stroke=\"none\" fill=\"" + colour(c) + "\" d=\"" + d + "\"/>\n";
    }
  }
  for (const Piece& p : clipped.pieces) {
    if (p.b < 0) continue;
    svg += "<path fill=\"none\" stroke=\"black\" stroke-width=\"1\" d=\"" +
           path_of(flatten(p.curve, p.u0, p.u1, tol), p.closed) + "\"/>\n";
  }
  if (opt.ellipses) {
    for (const Generator& gen : g.generators) {
      try {
        const EllipseGeom e = generator_to_ellipse(gen, true);
        const double ca = std::cos(e.angle);
        const double sa = std::sin(e.angle);
        const Curve contour = Curve::conic({TrigRow{e.semi_axes[0] * ca, -e.semi_axes[1] * sa, e.center.x},
                                            TrigRow{e.semi_axes[0] * sa, e.semi_axes[1] * ca, e.center.y},
                                            TrigRow{0.0, 0.0, 1.0}});
        auto pts = flatten(contour, -std::numbers::pi, std::numbers::pi, tol);
        pts.pop_back();
        svg += "<path fill=\"none\" stroke=\"#555\" stroke-width=\"0.6\" d=\"" + path_of(pts, true) + "\"/>\n";
      } catch (const Error&) {
        // Contour does not exist for 1 + w <= 0.
      }
      std::snprintf(buf, sizeof buf, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"1.5\" fill=\"#555\"/>\n", X(gen.p.x),
                    Y(gen.p.y));
      svg += buf;
    }
  }
  if (opt.vertices) {
    for (const Vertex& v : g.vertices) {
      if (!win.contains(v.pos)) continue;
      std::snprintf(buf, sizeof buf, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"2.5\" fill=\"red\"/>\n", X(v.pos.x),
                    Y(v.pos.y));
      svg += buf;
    }
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace gbpd
