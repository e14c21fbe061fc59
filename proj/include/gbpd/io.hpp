/* Apache License, Version 2.0 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "gbpd/clip.hpp"
#include "gbpd/core.hpp"
#include "gbpd/diagram.hpp"
#include "gbpd/measure.hpp"

namespace gbpd {

/// CSV with header id,px,py,m11,m12,m22,w. Rows are returned sorted by id.
/// Parse errors carry the source name and line number.
Scene read_scene_csv(std::istream& is, std::string_view source = "<input>");
void write_scene_csv(std::ostream& os, const Scene& scene);

Scene load_scene(const std::string& path);
void save_scene(const std::string& path, const Scene& scene);

/// Diagram as JSON with 17 significant digits; infinite parameters are the
/// strings "inf" / "-inf".
void write_diagram_json(std::ostream& os, const DiagramGraph& g);
/// Rebuilds bisectors from the generators and takes topology from the file.
DiagramGraph read_diagram_json(std::istream& is);

void write_measure_csv(std::ostream& os, const std::vector<CellMeasure>& cells);

/// printf("%.17g") of a double.
std::string format_double(double v);

enum class Preset { PaperRandom, PaperWeights, Isotropic };

/// Throws InvalidInput for unknown names.
Preset parse_preset(std::string_view name);

/// Deterministic random scene: ids 0..n-1, centres uniform in the window.
Scene generate_scene(Preset preset, int n, std::uint64_t seed, const Window& win = {});

}  // namespace gbpd
