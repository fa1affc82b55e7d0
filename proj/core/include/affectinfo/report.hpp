// Copyright 2026 The affectinfo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Deterministic SVG emitters: valence-colored word cloud, weighted valence
// histograms and information-bin bars. Every figure also carries a JSON
// description of what was drawn.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "affectinfo/infotheory.hpp"
#include "affectinfo/stats.hpp"

namespace affectinfo::report {

struct Rgb {
  double r = 0.0;  // each channel in [0, 1]
  double g = 0.0;
  double b = 0.0;
};

// Hue in degrees: 0 (red) at v = -1, 60 at v = 0, 120 (green) at v = 1.
// Valences outside [-1, 1] are clamped.
double valence_hue(double valence);
Rgb valence_color(double valence);
std::string to_hex(const Rgb& color);

// Shortest fixed-point text with at most three decimals.
std::string format_number(double value);
std::string xml_escape(std::string_view text);

struct Canvas {
  double width = 800.0;
  double height = 600.0;
};

struct Box {
  double x = 0.0;  // top-left corner
  double y = 0.0;
  double width = 0.0;
  double height = 0.0;

  // Open-interval intersection; boxes that only share an edge do not overlap.
  bool overlaps(const Box& other) const noexcept {
    return x < other.x + other.width && other.x < x + width && y < other.y + other.height &&
           other.y < y + height;
  }
};

struct CloudEntry {
  std::string word;
  double frequency = 0.0;
  double valence = 0.0;
};

struct CloudOptions {
  double size_exponent = 0.5;   // font size ~ frequency^exponent
  double max_font_size = 0.0;   // 0 selects canvas height / 8
  double glyph_width = 0.6;     // advance per grapheme, in font-size units
  std::size_t max_steps = 10'000;
  double rotate_fraction = 0.25;
};

struct CloudWord {
  std::string word;
  double frequency = 0.0;
  double valence = 0.0;
  double font_size = 0.0;
  Rgb color;
  double x = 0.0;  // center
  double y = 0.0;
  int rotation = 0;  // 0 or 90
  Box box;
};

struct WordCloud {
  Canvas canvas;
  std::vector<CloudWord> placed;     // in placement order (descending frequency)
  std::vector<std::string> dropped;  // no free spot within max_steps
  std::string svg;

  nlohmann::json geometry() const;
};

double cloud_font_size(double frequency, double max_frequency, double max_font_size, double exponent);

// Words are placed by descending frequency along an outward spiral from the
// canvas center; the seed picks the spiral phase and which words rotate.
WordCloud wordcloud(std::span<const CloudEntry> entries, const Canvas& canvas, std::uint64_t seed,
                    const CloudOptions& options = {});

struct Figure {
  std::string svg;
  nlohmann::json data;
};

// Panel geometry of the histogram figure; exposed so callers can locate
// the median markers.
struct HistogramLayout {
  static constexpr double kWidth = 970.0;
  static constexpr double kHeight = 380.0;
  static constexpr double kPanelWidth = 400.0;
  static constexpr double kPanelHeight = 260.0;
  static constexpr double kLeft = 50.0;
  static constexpr double kGap = 70.0;
  static constexpr double kTop = 60.0;

  static double panel_left(std::size_t panel) { return kLeft + static_cast<double>(panel) * (kPanelWidth + kGap); }
  static double x_for(std::size_t panel, double valence) {
    return panel_left(panel) + (valence + 1.0) / 2.0 * kPanelWidth;
  }
};

// Left panel unweighted, right panel weighted; dashed lines mark medians and
// the inset shows the positive/negative mass ratio.
Figure histogram_figure(const stats::WeightedDistribution& unweighted,
                        const stats::WeightedDistribution& weighted, std::size_t bins);

struct BinRow {
  std::string label;  // "I", "I2", ...
  std::vector<info::InfoBin> bins;
};

// One column of bars per row, bins top to bottom in ascending information.
Figure info_bins_figure(std::span<const BinRow> rows);

}  // namespace affectinfo::report
