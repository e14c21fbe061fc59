/* Apache License, Version 2.0 */

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gbpd/clip.hpp"
#include "gbpd/diagram.hpp"
#include "gbpd/error.hpp"
#include "gbpd/fit.hpp"
#include "gbpd/io.hpp"
#include "gbpd/measure.hpp"
#include "gbpd/oracle.hpp"
#include "gbpd/render.hpp"

using namespace gbpd;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInput = 2, kGeometry = 3, kIo = 4, kCheckFailed = 5 };

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput:
    case ErrorKind::DimensionMismatch:
      return kInput;
    case ErrorKind::Io:
      return kIo;
    default:
      return kGeometry;
  }
}

struct Common {
  std::string input;
  std::string out;
  std::vector<double> window{0.0, 0.0, 400.0, 400.0};
  int width = 400, height = 400;
  int threads = 1;
  std::uint64_t seed = 1;
  double tol = -1.0;
};

Window to_window(const std::vector<double>& w) {
  if (w.size() != 4 || !(w[0] < w[2]) || !(w[1] < w[3]))
    throw Error(ErrorKind::InvalidInput, "--window needs x0 y0 x1 y1 with x0 < x1 and y0 < y1");
  return {w[0], w[1], w[2], w[3]};
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Writes through `fn` to the file, or to stdout for an empty path or "-".
template <class Fn>
void emit(const std::string& path, Fn fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::Io, "cannot write " + path);
  fn(f);
  if (!f) throw Error(ErrorKind::Io, "write failed: " + path);
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::Io, "cannot open " + path);
  return f;
}

DiagramGraph load_or_build(const std::string& path, const BuildOptions& opt) {
  if (ends_with(path, ".json")) {
    auto f = open_in(path);
    return read_diagram_json(f);
  }
  return build_diagram(load_scene(path), opt);
}

LabelImage load_pgm(const std::string& path) {
  auto f = open_in(path);
  return read_pgm(f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized balanced power diagrams: analytic construction, rasterization and measurement"};
  app.require_subcommand(1);
  Common c;

  const auto add_window = [&](CLI::App* sub) {
    sub->add_option("--window", c.window, "Window x0 y0 x1 y1 (default 0 0 400 400)")->expected(4);
  };
  const auto add_size = [&](CLI::App* sub) {
    sub->add_option("--width", c.width, "Image width in pixels")->check(CLI::PositiveNumber);
    sub->add_option("--height", c.height, "Image height in pixels")->check(CLI::PositiveNumber);
  };
  const auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", c.threads, "Worker threads (results do not depend on it)")->check(CLI::PositiveNumber);
  };

  auto* gen = app.add_subcommand("gen", "Generate a random scene CSV");
  std::string preset = "paper-random";
  int n = 16;
  gen->add_option("--preset", preset, "paper-random | paper-weights | isotropic");
  gen->add_option("-n,--n", n, "Number of generators")->check(CLI::PositiveNumber);
  gen->add_option("--seed", c.seed, "Random seed");
  gen->add_option("--out", c.out, "Output CSV (stdout if omitted)");
  add_window(gen);

  auto* compute = app.add_subcommand("compute", "Build the diagram of a scene and write JSON (and SVG)");
  std::string svg;
  bool no_vertices = false;
  compute->add_option("--input", c.input, "Scene CSV")->required();
  compute->add_option("--out", c.out, "Diagram JSON (stdout if omitted)");
  compute->add_option("--svg", svg, "Also render an SVG of the clipped diagram");
  compute->add_flag("--no-vertex-markers", no_vertices, "Omit vertex markers in the SVG");
  compute->add_option("--tol", c.tol, "Relative implicit residual for accepting vertices (default 1e-8)");
  add_window(compute);
  add_size(compute);
  add_threads(compute);

  auto* raster = app.add_subcommand("raster", "Label image (PGM P2) of a scene or diagram");
  bool analytic = false;
  raster->add_option("--input", c.input, "Scene CSV, or diagram JSON with --analytic")->required();
  raster->add_option("--out", c.out, "Output PGM (stdout if omitted)");
  raster->add_flag("--analytic", analytic, "Rasterize the analytic diagram instead of brute force");
  add_window(raster);
  add_size(raster);
  add_threads(raster);

  auto* measure = app.add_subcommand("measure", "Per-cell area and perimeter inside the window");
  measure->add_option("--input", c.input, "Scene CSV or diagram JSON")->required();
  measure->add_option("--out", c.out, "Output CSV (stdout if omitted)");
  measure->add_option("--tol", c.tol, "Quadrature tolerance (default 1e-10)");
  add_window(measure);
  add_threads(measure);

  auto* compare = app.add_subcommand("compare", "Compare two label images");
  std::string against;
  compare->add_option("--input", c.input, "Reference PGM (distances are measured to its label boundaries)")
      ->required();
  compare->add_option("--against", against, "Second PGM")->required();
  compare->add_option("--tol", c.tol, "Fail (exit 5) if the mismatch fraction exceeds this");
  compare->add_option("--out", c.out, "Report file (stdout if omitted)");

  auto* fit = app.add_subcommand("fit", "Fit one generator per label of a PGM label image");
  double scale = 1.0, weight = 0.0;
  fit->add_option("--input", c.input, "Label PGM")->required();
  fit->add_option("--out", c.out, "Output scene CSV (stdout if omitted)");
  fit->add_option("--scale", scale, "Covariance-to-matrix scale: M = U diag(1/(scale e)) U^T")
      ->check(CLI::PositiveNumber);
  fit->add_option("--weight", weight, "Weight given to every fitted generator");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const Window win = to_window(c.window);
    BuildOptions opt;
    opt.threads = c.threads;

    if (*gen) {
      const Scene scene = generate_scene(parse_preset(preset), n, c.seed, win);
      emit(c.out, [&](std::ostream& os) { write_scene_csv(os, scene); });
    } else if (*compute) {
      if (c.tol > 0.0) opt.tol.res = c.tol;
      const DiagramGraph g = build_diagram(load_scene(c.input), opt);
      emit(c.out, [&](std::ostream& os) { write_diagram_json(os, g); });
      if (!svg.empty()) {
        SvgOptions so;
        so.width = c.width;
        so.height = c.height;
        so.vertices = !no_vertices;
        const std::string doc = render_svg(g, clip_to_window(g, win), so);
        emit(svg, [&](std::ostream& os) { os << doc; });
      }
    } else if (*raster) {
      LabelImage img;
      if (analytic) {
        const DiagramGraph g = load_or_build(c.input, opt);
        img = rasterize_diagram(clip_to_window(g, win), c.width, c.height);
      } else {
        img = rasterize(load_scene(c.input), win, c.width, c.height, c.threads);
      }
      emit(c.out, [&](std::ostream& os) { write_pgm(os, img); });
    } else if (*measure) {
      const DiagramGraph g = load_or_build(c.input, opt);
      const auto cells = measure_cells(g, clip_to_window(g, win), c.tol > 0.0 ? c.tol : 1e-10);
      emit(c.out, [&](std::ostream& os) { write_measure_csv(os, cells); });
    } else if (*compare) {
      const MismatchStats st = compare_labels(load_pgm(c.input), load_pgm(against));
      emit(c.out, [&](std::ostream& os) {
        os << "mismatched " << st.mismatched << "\ntotal " << st.total << "\nfraction " << format_double(st.fraction)
           << "\nwithin_one_pixel " << st.within_one << "\ndistance_histogram";
        for (long long h : st.distance_histogram) os << ' ' << h;
        os << '\n';
      });
      if (c.tol >= 0.0 && st.fraction > c.tol) {
        std::cerr << "mismatch fraction " << st.fraction << " exceeds " << c.tol << '\n';
        return kCheckFailed;
      }
    } else if (*fit) {
      const auto fits = fit_generators_from_labels(load_pgm(c.input), scale, weight);
      for (const FittedGenerator& f : fits)
        if (f.degenerate)
          std::cerr << "warning: label " << f.gen.id << " (" << f.pixels
                    << " pixels) is degenerate; isotropic fallback used\n";
      emit(c.out, [&](std::ostream& os) { write_scene_csv(os, fitted_scene(fits)); });
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  }
  return kOk;
}
