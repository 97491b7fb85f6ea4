#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "snn/image.hpp"
#include "snn/instance.hpp"
#include "snn/tree_labeling.hpp"

namespace snn {

/// full: every color of {0..255}^3 is a label. image: only colors present in
/// the (noisy) input, i.e. the pruned label set.
enum class LabelSpace { full, image };

std::string to_string(LabelSpace s);

struct DenoiseRun {
  LabelSpace space = LabelSpace::full;
  std::uint64_t seed = 0;
  double nn_cost = 0.0;
  double pw_cost = 0.0;
  double cost = 0.0;
  std::size_t label_count = 0;  // palette size, or 256^3 for full
};

struct PixelDenoiseResult {
  Image output;
  DenoiseRun run;
};

/// Distinct colors of an image, sorted.
std::vector<Rgb> image_palette(const Image& img);

/// Pixel labeling over a 4-connected grid with unit weights and Euclidean
/// RGB distance, solved by tree_labeling on a random-split kd-tree (the full
/// lattice or the image palette).
PixelDenoiseResult denoise_pixels(const Image& noisy, LabelSpace space, std::uint64_t seed,
                                  const TreeLabelingOptions& options = {});

/// Euclidean SNN instance for an image: labels are `labels` (space ids
/// 0..|labels|-1), queries are the pixels in row-major order (ids following),
/// graph is the 4-connected grid.
SnnInstance pixel_instance(const Image& noisy, const std::vector<Rgb>& labels);

struct CostSeries {
  std::vector<double> values;
  double mean = 0.0;
  /// Sample standard deviation over the mean, in percent.
  double rel_spread_pct = 0.0;
};

CostSeries summarize(std::vector<double> values);

struct DenoiseReport {
  std::string name;
  CostSeries full;
  CostSeries image;
  /// mean image-palette cost / mean full-lattice cost.
  double empirical_gap = 0.0;
  std::vector<std::uint64_t> seeds;
};

/// Runs both label spaces for each kd-tree seed on the same noisy image.
DenoiseReport denoise_experiment(const Image& noisy, const std::vector<std::uint64_t>& seeds, std::string name = "image",
                                 const TreeLabelingOptions& options = {});

nlohmann::json report_to_json(const DenoiseReport& r);
/// Rows in the layout "name | full mean +- spread% | image mean +- spread% | gap".
std::string report_table(const std::vector<DenoiseReport>& reports);

inline constexpr int kPatchSize = 5;

struct PatchDenoiseResult {
  Image noisy;   // input with the right half noised
  Image output;  // left half untouched, right half reconstructed
  double cost = 0.0;
  std::size_t database_size = 0;
  std::size_t query_count = 0;
  int query_cols = 0;
  int query_rows = 0;
  /// Chosen database patch (top-left x, y in the left half) per query patch, row-major.
  std::vector<std::pair<int, int>> chosen;
};

/// Sum over the 25 pixel pairs of squared RGB distance.
double patch_distance(const Image& a, int ax, int ay, const Image& b, int bx, int by);

/// Noises the right half, then for every 5x5 patch inside the right half picks
///   argmin_p dist(q, p) + sum over the 4 adjacent query patches q' of dist(q', p) / 5
/// from all 5x5 patches of the clean left half (stride 1). Each right-half
/// pixel becomes the rounded average of the chosen patches covering it.
PatchDenoiseResult denoise_patches(const Image& clean, std::uint64_t seed, NoiseKind kind = NoiseKind::salt_and_pepper,
                                   double noise_param = 0.05);

/// Same, with the right half already noised by the caller.
PatchDenoiseResult denoise_patches_noisy(const Image& clean, const Image& noisy);

}  // namespace snn
