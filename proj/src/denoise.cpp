#include "snn/denoise.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "snn/graph.hpp"
#include "snn/tree_metric.hpp"

namespace snn {

std::string to_string(LabelSpace s) { return s == LabelSpace::full ? "full" : "image"; }

std::vector<Rgb> image_palette(const Image& img) {
  std::vector<Rgb> pal = img.pixels;
  std::sort(pal.begin(), pal.end());
  pal.erase(std::unique(pal.begin(), pal.end()), pal.end());
  return pal;
}

namespace {

std::vector<double> to_coords(const Rgb& c) { return {double(c[0]), double(c[1]), double(c[2])}; }

Rgb to_rgb(const std::vector<double>& x) {
  Rgb c{};
  for (std::size_t a = 0; a < 3; ++a) c[a] = static_cast<std::uint8_t>(std::clamp(std::lround(x[a]), 0L, 255L));
  return c;
}

}  // namespace

PixelDenoiseResult denoise_pixels(const Image& noisy, LabelSpace space, std::uint64_t seed,
                                  const TreeLabelingOptions& options) {
  if (noisy.empty()) throw std::invalid_argument("denoise_pixels: empty image");
  std::vector<std::vector<double>> queries;
  queries.reserve(noisy.pixels.size());
  for (const auto& p : noisy.pixels) queries.push_back(to_coords(p));
  const CompatGraph grid = grid_graph(noisy.width, noisy.height);

  PixelDenoiseResult out;
  TreeMetric tm;
  if (space == LabelSpace::full) {
    tm = TreeMetric::over_lattice(3, 0, 255, seed);
    out.run.label_count = std::size_t{256} * 256 * 256;
  } else {
    const auto pal = image_palette(noisy);
    std::vector<std::vector<double>> pts;
    for (const auto& c : pal) pts.push_back(to_coords(c));
    out.run.label_count = pts.size();
    tm = TreeMetric::over_points(std::move(pts), seed);
  }
  const TreeLabeling lab = tree_labeling(tm, queries, grid, seed, {}, {}, options);
  out.output = Image(noisy.width, noisy.height);
  for (std::size_t i = 0; i < lab.labels.size(); ++i) out.output.pixels[i] = to_rgb(lab.labels[i]);
  out.run.space = space;
  out.run.seed = seed;
  out.run.nn_cost = lab.nn_cost;
  out.run.pw_cost = lab.pw_cost;
  out.run.cost = lab.total;
  return out;
}

SnnInstance pixel_instance(const Image& noisy, const std::vector<Rgb>& labels) {
  std::vector<std::vector<double>> pts;
  pts.reserve(labels.size() + noisy.pixels.size());
  for (const auto& c : labels) pts.push_back(to_coords(c));
  for (const auto& c : noisy.pixels) pts.push_back(to_coords(c));
  SnnInstance inst;
  inst.space = MetricSpace::euclidean(std::move(pts));
  for (std::size_t l = 0; l < labels.size(); ++l) inst.labels.push_back(static_cast<PointId>(l));
  for (std::size_t i = 0; i < noisy.pixels.size(); ++i) inst.queries.push_back(static_cast<PointId>(labels.size() + i));
  inst.graph = grid_graph(noisy.width, noisy.height);
  return inst;
}

CostSeries summarize(std::vector<double> values) {
  CostSeries s;
  s.values = std::move(values);
  if (s.values.empty()) return s;
  s.mean = std::accumulate(s.values.begin(), s.values.end(), 0.0) / static_cast<double>(s.values.size());
  if (s.values.size() > 1 && s.mean != 0.0) {
    double ss = 0.0;
    for (double v : s.values) ss += (v - s.mean) * (v - s.mean);
    s.rel_spread_pct = 100.0 * std::sqrt(ss / static_cast<double>(s.values.size() - 1)) / s.mean;
  }
  return s;
}

DenoiseReport denoise_experiment(const Image& noisy, const std::vector<std::uint64_t>& seeds, std::string name,
                                 const TreeLabelingOptions& options) {
  if (seeds.empty()) throw std::invalid_argument("denoise_experiment: no seeds");
  std::vector<double> full, image;
  for (auto seed : seeds) {
    full.push_back(denoise_pixels(noisy, LabelSpace::full, seed, options).run.cost);
    image.push_back(denoise_pixels(noisy, LabelSpace::image, seed, options).run.cost);
  }
  DenoiseReport r;
  r.name = std::move(name);
  r.full = summarize(std::move(full));
  r.image = summarize(std::move(image));
  r.empirical_gap = r.full.mean > 0.0 ? r.image.mean / r.full.mean : 1.0;
  r.seeds = seeds;
  return r;
}

nlohmann::json report_to_json(const DenoiseReport& r) {
  auto series = [](const CostSeries& s) {
    return nlohmann::json{{"mean", s.mean}, {"rel_spread_pct", s.rel_spread_pct}, {"values", s.values}};
  };
  return {{"schema", "snn-denoise-report/1"},
          {"name", r.name},
          {"full", series(r.full)},
          {"image", series(r.image)},
          {"empirical_gap", r.empirical_gap},
          {"seeds", r.seeds}};
}

std::string report_table(const std::vector<DenoiseReport>& reports) {
  std::ostringstream out;
  out << "name | avg cost full color | avg cost image color | empirical pruning gap\n";
  char buf[256];
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof buf, "%s | %.0f \xC2\xB1 %.1f%% | %.0f \xC2\xB1 %.1f%% | %.3f\n", r.name.c_str(), r.full.mean,
                  r.full.rel_spread_pct, r.image.mean, r.image.rel_spread_pct, r.empirical_gap);
    out << buf;
  }
  return out.str();
}

double patch_distance(const Image& a, int ax, int ay, const Image& b, int bx, int by) {
  double s = 0.0;
  for (int dy = 0; dy < kPatchSize; ++dy) {
    for (int dx = 0; dx < kPatchSize; ++dx) {
      const Rgb& p = a.at(ax + dx, ay + dy);
      const Rgb& q = b.at(bx + dx, by + dy);
      for (std::size_t c = 0; c < 3; ++c) {
        const double d = static_cast<double>(p[c]) - static_cast<double>(q[c]);
        s += d * d;
      }
    }
  }
  return s;
}

namespace {

// Patches flattened to 75 doubles for the scan.
std::vector<double> flatten_patches(const Image& img, int x0, int cols, int rows) {
  constexpr int len = kPatchSize * kPatchSize * 3;
  std::vector<double> out(static_cast<std::size_t>(cols) * static_cast<std::size_t>(rows) * len);
  std::size_t o = 0;
  for (int y = 0; y < rows; ++y)
    for (int x = 0; x < cols; ++x)
      for (int dy = 0; dy < kPatchSize; ++dy)
        for (int dx = 0; dx < kPatchSize; ++dx)
          for (std::size_t c = 0; c < 3; ++c) out[o++] = img.at(x0 + x + dx, y + dy)[c];
  return out;
}

}  // namespace

PatchDenoiseResult denoise_patches_noisy(const Image& clean, const Image& noisy) {
  if (clean.width != noisy.width || clean.height != noisy.height) throw std::invalid_argument("denoise_patches: size mismatch");
  const int half = clean.width / 2;
  if (half < kPatchSize || clean.width - half < kPatchSize || clean.height < kPatchSize) {
    throw std::invalid_argument("denoise_patches: image too small for one patch per half");
  }
  constexpr std::size_t len = kPatchSize * kPatchSize * 3;
  const int db_cols = half - kPatchSize + 1;
  const int q_cols = clean.width - half - kPatchSize + 1;
  const int rows = clean.height - kPatchSize + 1;
  const auto db = flatten_patches(clean, 0, db_cols, rows);
  const auto qs = flatten_patches(noisy, half, q_cols, rows);
  const std::size_t n_db = static_cast<std::size_t>(db_cols) * static_cast<std::size_t>(rows);
  const std::size_t n_q = static_cast<std::size_t>(q_cols) * static_cast<std::size_t>(rows);

  auto sq = [&](const double* a, const double* b) {
    double s = 0.0;
    for (std::size_t t = 0; t < len; ++t) {
      const double d = a[t] - b[t];
      s += d * d;
    }
    return s;
  };

  PatchDenoiseResult out;
  out.noisy = noisy;
  out.database_size = n_db;
  out.query_count = n_q;
  out.query_cols = q_cols;
  out.query_rows = rows;
  out.chosen.resize(n_q);
  for (int y = 0; y < rows; ++y) {
    for (int x = 0; x < q_cols; ++x) {
      const std::size_t n = static_cast<std::size_t>(y) * static_cast<std::size_t>(q_cols) + static_cast<std::size_t>(x);
      const double* q = qs.data() + n * len;
      std::vector<const double*> nbrs;
      if (x > 0) nbrs.push_back(q - len);
      if (x + 1 < q_cols) nbrs.push_back(q + len);
      if (y > 0) nbrs.push_back(q - static_cast<std::size_t>(q_cols) * len);
      if (y + 1 < rows) nbrs.push_back(q + static_cast<std::size_t>(q_cols) * len);
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_p = 0;
      for (std::size_t p = 0; p < n_db; ++p) {
        const double* cand = db.data() + p * len;
        double score = sq(q, cand);
        if (score >= best) continue;
        for (const double* a : nbrs) score += sq(a, cand) / 5.0;
        if (score < best) {
          best = score;
          best_p = p;
        }
      }
      out.cost += best;
      out.chosen[n] = {static_cast<int>(best_p % static_cast<std::size_t>(db_cols)),
                       static_cast<int>(best_p / static_cast<std::size_t>(db_cols))};
    }
  }

  // Average the chosen patches over every right-half pixel they cover.
  const int right_w = clean.width - half;
  std::vector<std::array<double, 3>> acc(static_cast<std::size_t>(right_w) * static_cast<std::size_t>(clean.height), {0, 0, 0});
  std::vector<int> cover(acc.size(), 0);
  for (int y = 0; y < rows; ++y) {
    for (int x = 0; x < q_cols; ++x) {
      const auto [px, py] = out.chosen[static_cast<std::size_t>(y) * static_cast<std::size_t>(q_cols) + static_cast<std::size_t>(x)];
      for (int dy = 0; dy < kPatchSize; ++dy) {
        for (int dx = 0; dx < kPatchSize; ++dx) {
          const std::size_t o = static_cast<std::size_t>(y + dy) * static_cast<std::size_t>(right_w) + static_cast<std::size_t>(x + dx);
          const Rgb& c = clean.at(px + dx, py + dy);
          for (std::size_t ch = 0; ch < 3; ++ch) acc[o][ch] += c[ch];
          ++cover[o];
        }
      }
    }
  }
  out.output = clean;
  for (int y = 0; y < clean.height; ++y) {
    for (int x = 0; x < right_w; ++x) {
      const std::size_t o = static_cast<std::size_t>(y) * static_cast<std::size_t>(right_w) + static_cast<std::size_t>(x);
      Rgb c{};
      for (std::size_t ch = 0; ch < 3; ++ch) c[ch] = static_cast<std::uint8_t>(std::lround(acc[o][ch] / cover[o]));
      out.output.at(half + x, y) = c;
    }
  }
  return out;
}

PatchDenoiseResult denoise_patches(const Image& clean, std::uint64_t seed, NoiseKind kind, double noise_param) {
  const int half = clean.width / 2;
  const Image noised = add_noise(clean, kind, noise_param, seed);
  Image noisy = clean;
  for (int y = 0; y < clean.height; ++y)
    for (int x = half; x < clean.width; ++x) noisy.at(x, y) = noised.at(x, y);
  return denoise_patches_noisy(clean, noisy);
}

}  // namespace snn
