/* Apache License, Version 2.0 */

#include "gbpd/oracle.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <deque>
#include <istream>
#include <limits>
#include <set>
#include <ostream>
#include <sstream>
#include <thread>

#include "gbpd/error.hpp"

namespace gbpd {

Vec2 LabelImage::pixel_center(int col, int row) const {
  const Vec2 s = pixel_size();
  return {window.xmin + (col + 0.5) * s.x, window.ymax - (row + 0.5) * s.y};
}

LabelImage blank_image(const Window& win, int width, int height, int background) {
  if (width < 1 || height < 1) throw Error(ErrorKind::InvalidInput, "image size must be positive");
  LabelImage img;
  img.width = width;
  img.height = height;
  img.window = win;
  img.background = background;
  img.labels.assign(static_cast<std::size_t>(width) * height, background);
  return img;
}

LabelImage rasterize(const Scene& scene, const Window& win, int width, int height, int threads) {
  LabelImage img = blank_image(win, width, height, static_cast<int>(scene.size()));
  if (scene.empty()) return img;
  threads = std::clamp(threads, 1, height);
  const auto rows = [&](int t) {
    for (int row = t; row < height; row += threads)
      for (int col = 0; col < width; ++col) img.at(col, row) = nearest_generator(scene, img.pixel_center(col, row));
  };
  if (threads == 1) {
    rows(0);
    return img;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(rows, t);
  for (auto& th : pool) th.join();
  return img;
}

void write_pgm(std::ostream& os, const LabelImage& img) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "# gbpd window %.17g %.17g %.17g %.17g\n", img.window.xmin, img.window.ymin,
                img.window.xmax, img.window.ymax);
  os << "P2\n" << buf << img.width << ' ' << img.height << '\n' << img.background << '\n';
  for (int row = 0; row < img.height; ++row) {
    for (int col = 0; col < img.width; ++col) {
      if (col) os << ' ';
      os << img.at(col, row);
    }
    os << '\n';
  }
}

LabelImage read_pgm(std::istream& is) {
  std::vector<std::string> tokens;
  Window win{0.0, 0.0, 0.0, 0.0};
  bool have_window = false;
  std::string line;
  std::size_t header_tokens = 0;
  LabelImage img;
  // Header: magic, width, height, maxval, with comments allowed between tokens.
  while (header_tokens < 4 && std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      std::istringstream cs(line.substr(hash + 1));
      std::string word;
      if (cs >> word && word == "gbpd" && cs >> word && word == "window" && cs >> win.xmin >> win.ymin >> win.xmax >> win.ymax)
        have_window = true;
      line.resize(hash);
    }
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      tokens.push_back(tok);
      ++header_tokens;
    }
  }
  if (tokens.size() < 4 || tokens[0] != "P2") throw Error(ErrorKind::InvalidInput, "not an ASCII PGM (P2) image");
  try {
    img.width = std::stoi(tokens[1]);
    img.height = std::stoi(tokens[2]);
    img.background = std::stoi(tokens[3]);
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidInput, "malformed PGM header");
  }
  if (img.width < 1 || img.height < 1) throw Error(ErrorKind::InvalidInput, "PGM size must be positive");
  img.window = have_window ? win : Window{0.0, 0.0, static_cast<double>(img.width), static_cast<double>(img.height)};
  const std::size_t count = static_cast<std::size_t>(img.width) * img.height;
  img.labels.reserve(count);
  for (std::size_t k = 4; k < tokens.size(); ++k) img.labels.push_back(std::stoi(tokens[k]));
  long long value;
  while (img.labels.size() < count && is >> value) {
    if (value < 0 || value > img.background) throw Error(ErrorKind::InvalidInput, "PGM value out of range");
    img.labels.push_back(static_cast<int>(value));
  }
  if (img.labels.size() != count) throw Error(ErrorKind::InvalidInput, "PGM has too few pixels");
  return img;
}

MismatchStats compare_labels(const LabelImage& a, const LabelImage& b) {
  if (a.width != b.width || a.height != b.height)
    throw Error(ErrorKind::DimensionMismatch, "label images differ in size");
  constexpr int kBins = 16;
  const int w = a.width;
  const int h = a.height;
  MismatchStats st;
  st.total = static_cast<long long>(w) * h;
  st.distance_histogram.assign(kBins + 1, 0);

  // Chebyshev distance to the nearest boundary pixel of `a` (a pixel whose
  // 4-neighbourhood holds a different label), by multi-source BFS.
  std::vector<int> dist(static_cast<std::size_t>(w) * h, std::numeric_limits<int>::max());
  std::deque<int> queue;
  for (int row = 0; row < h; ++row) {
    for (int col = 0; col < w; ++col) {
      const int l = a.at(col, row);
      const bool edge = (col > 0 && a.at(col - 1, row) != l) || (col + 1 < w && a.at(col + 1, row) != l) ||
                        (row > 0 && a.at(col, row - 1) != l) || (row + 1 < h && a.at(col, row + 1) != l);
      if (edge) {
        dist[static_cast<std::size_t>(row) * w + col] = 0;
        queue.push_back(row * w + col);
      }
    }
  }
  while (!queue.empty()) {
    const int k = queue.front();
    queue.pop_front();
    const int col = k % w;
    const int row = k / w;
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        const int c2 = col + dc;
        const int r2 = row + dr;
        if (c2 < 0 || r2 < 0 || c2 >= w || r2 >= h) continue;
        const std::size_t k2 = static_cast<std::size_t>(r2) * w + c2;
        if (dist[k2] > dist[k] + 1) {
          dist[k2] = dist[k] + 1;
          queue.push_back(static_cast<int>(k2));
        }
      }
    }
  }

  for (std::size_t k = 0; k < a.labels.size(); ++k) {
    if (a.labels[k] == b.labels[k]) continue;
    ++st.mismatched;
    const int d = dist[k];
    ++st.distance_histogram[std::min(d, kBins)];
    if (d <= 1) ++st.within_one;
  }
  st.fraction = st.total ? static_cast<double>(st.mismatched) / static_cast<double>(st.total) : 0.0;
  return st;
}

RasterStats raster_cell_stats(const LabelImage& img) {
  RasterStats st;
  int max_label = img.background;
  for (int l : img.labels) max_label = std::max(max_label, l);
  st.counts.assign(static_cast<std::size_t>(max_label) + 1, 0);
  for (int l : img.labels) ++st.counts[l];
  // Every pixel of a 2x2 block holding three or more labels is a junction pixel.
  const auto block_labels = [&](int col, int row, std::array<int, 4>& ls) {
    ls = {img.at(col, row), img.at(col + 1, row), img.at(col, row + 1), img.at(col + 1, row + 1)};
    std::sort(ls.begin(), ls.end());
    return static_cast<int>(std::unique(ls.begin(), ls.end()) - ls.begin());
  };
  std::vector<char> marked(img.labels.size(), 0);
  std::array<int, 4> ls{};
  for (int row = 0; row + 1 < img.height; ++row)
    for (int col = 0; col + 1 < img.width; ++col)
      if (block_labels(col, row, ls) >= 3)
        for (int dr = 0; dr < 2; ++dr)
          for (int dc = 0; dc < 2; ++dc) marked[static_cast<std::size_t>(row + dr) * img.width + col + dc] = 1;
  for (int row = 0; row < img.height; ++row) {
    for (int col = 0; col < img.width; ++col) {
      if (!marked[static_cast<std::size_t>(row) * img.width + col]) continue;
      Junction j;
      j.row = row;
      j.col = col;
      j.pos = img.pixel_center(col, row);
      std::set<int> all;
      for (int r0 = std::max(row - 1, 0); r0 <= std::min(row, img.height - 2); ++r0)
        for (int c0 = std::max(col - 1, 0); c0 <= std::min(col, img.width - 2); ++c0) {
          const int k = block_labels(c0, r0, ls);
          if (k >= 3) all.insert(ls.begin(), ls.begin() + k);
        }
      j.labels.assign(all.begin(), all.end());
      st.junctions.push_back(std::move(j));
    }
  }
  return st;
}

}  // namespace gbpd
