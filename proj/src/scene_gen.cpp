/* Apache License, Version 2.0 */

#include <numbers>
#include <random>

#include "gbpd/error.hpp"
#include "gbpd/io.hpp"

namespace gbpd {

namespace {

// Uniform double in [lo, hi) from the top 53 bits, independent of the
// standard library's distribution implementations.
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : rng_(seed) {}
  double operator()(double lo, double hi) {
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

Preset parse_preset(std::string_view name) {
  if (name == "paper-random") return Preset::PaperRandom;
  if (name == "paper-weights") return Preset::PaperWeights;
  if (name == "isotropic") return Preset::Isotropic;
  throw Error(ErrorKind::InvalidInput, "unknown preset '" + std::string(name) +
                                           "' (expected paper-random, paper-weights or isotropic)");
}

Scene generate_scene(Preset preset, int n, std::uint64_t seed, const Window& win) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "scene size must be at least 1");
  Uniform uni(seed);
  Scene scene;
  for (int k = 0; k < n; ++k) {
    Generator g;
    g.id = k;
    g.p = {uni(win.xmin, win.xmax), uni(win.ymin, win.ymax)};
    if (preset == Preset::Isotropic) {
      g.m = SymMat2::identity();
      g.w = 0.0;
    } else {
      const double theta = uni(0.0, std::numbers::pi);
      const double major = uni(10.0, 20.0);
      const double minor = uni(0.5, 10.0);
      g.m = compose_sym2(theta, 1.0 / (major * major), 1.0 / (minor * minor));
      g.w = preset == Preset::PaperRandom ? uni(0.0, 50.0) : uni(-1.0, 3.0);
    }
    scene.push_back(g);
  }
  return scene;
}

}  // namespace gbpd
