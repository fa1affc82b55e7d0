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

#include "affectinfo/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "affectinfo/error.hpp"
#include "affectinfo/text.hpp"

namespace affectinfo::report {

namespace {

constexpr const char* kSvgHeader = "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";

void open_svg(std::ostringstream& out, double width, double height) {
  out << kSvgHeader << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << format_number(width) << "\" height=\"" << format_number(height) << "\" viewBox=\"0 0 "
      << format_number(width) << ' ' << format_number(height) << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << format_number(width) << "\" height=\"" << format_number(height)
      << "\" fill=\"#ffffff\"/>\n";
}

std::string comment_safe(std::string_view s) {
  std::string out(s);
  for (std::size_t pos = out.find("--"); pos != std::string::npos; pos = out.find("--", pos)) {
    out.replace(pos, 2, "- -");
  }
  return out;
}

nlohmann::json color_json(const Rgb& c) { return to_hex(c); }

}  // namespace

double valence_hue(double valence) {
  const double v = std::clamp(valence, -1.0, 1.0);
  return 60.0 * (v + 1.0);
}

Rgb valence_color(double valence) {
  const double hue = valence_hue(valence);
  // Fully saturated hue between red and green.
  if (hue <= 60.0) return {1.0, hue / 60.0, 0.0};
  return {(120.0 - hue) / 60.0, 1.0, 0.0};
}

std::string to_hex(const Rgb& color) {
  const auto channel = [](double c) {
    return static_cast<unsigned>(std::lround(std::clamp(c, 0.0, 1.0) * 255.0));
  };
  static constexpr char digits[] = "0123456789abcdef";
  std::string out = "#";
  for (const unsigned c : {channel(color.r), channel(color.g), channel(color.b)}) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xF]);
  }
  return out;
}

std::string format_number(double value) {
  if (std::abs(value) < 0.0005) value = 0.0;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, 3);
  std::string out(buf, res.ptr);
  while (!out.empty() && out.back() == '0') out.pop_back();
  if (!out.empty() && out.back() == '.') out.pop_back();
  if (out == "-0") out = "0";
  return out;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

double cloud_font_size(double frequency, double max_frequency, double max_font_size, double exponent) {
  return max_font_size * std::pow(frequency / max_frequency, exponent);
}

nlohmann::json WordCloud::geometry() const {
  nlohmann::json words = nlohmann::json::array();
  for (const auto& w : placed) {
    words.push_back({{"word", w.word},
                     {"frequency", w.frequency},
                     {"valence", w.valence},
                     {"font_size", w.font_size},
                     {"color", color_json(w.color)},
                     {"x", w.x},
                     {"y", w.y},
                     {"rotation", w.rotation},
                     {"box", {{"x", w.box.x}, {"y", w.box.y}, {"width", w.box.width}, {"height", w.box.height}}}});
  }
  return {{"canvas", {{"width", canvas.width}, {"height", canvas.height}}},
          {"words", std::move(words)},
          {"dropped", dropped}};
}

WordCloud wordcloud(std::span<const CloudEntry> entries, const Canvas& canvas, std::uint64_t seed,
                    const CloudOptions& options) {
  if (entries.empty()) throw Error(ErrorCode::empty_input, "word cloud needs at least one word");
  if (!(canvas.width > 0.0 && canvas.height > 0.0)) {
    throw Error(ErrorCode::domain, "canvas dimensions must be positive");
  }
  if (!(options.size_exponent > 0.0)) throw Error(ErrorCode::domain, "size exponent must be positive");
  for (const auto& e : entries) {
    if (!(e.frequency > 0.0) || !std::isfinite(e.frequency)) {
      throw Error(ErrorCode::domain, "word cloud frequencies must be positive");
    }
  }

  std::vector<std::size_t> order(entries.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (entries[a].frequency != entries[b].frequency) return entries[a].frequency > entries[b].frequency;
    return entries[a].word < entries[b].word;
  });

  const double max_frequency = entries[order.front()].frequency;
  const double max_font = options.max_font_size > 0.0 ? options.max_font_size : canvas.height / 8.0;
  const double cx = canvas.width / 2.0;
  const double cy = canvas.height / 2.0;
  const double aspect = canvas.width / canvas.height;
  constexpr double kAngleStep = 0.1;
  const double half_diagonal = std::hypot(cx, cy);
  const double radius_per_radian =
      half_diagonal / (std::max<double>(1.0, static_cast<double>(options.max_steps)) * kAngleStep) * 1.5;

  std::mt19937_64 rng(seed);
  const auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  WordCloud cloud;
  cloud.canvas = canvas;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const auto& e = entries[order[rank]];
    CloudWord w;
    w.word = e.word;
    w.frequency = e.frequency;
    w.valence = e.valence;
    w.font_size = cloud_font_size(e.frequency, max_frequency, max_font, options.size_exponent);
    w.color = valence_color(e.valence);
    const double phase = uniform() * 2.0 * std::numbers::pi;
    const bool rotate = rank > 0 && uniform() < options.rotate_fraction;
    w.rotation = rotate ? 90 : 0;

    const double glyphs = static_cast<double>(std::max<std::size_t>(1, text::grapheme_count(e.word)));
    const double text_w = glyphs * options.glyph_width * w.font_size;
    const double text_h = w.font_size;
    const double bw = rotate ? text_h : text_w;
    const double bh = rotate ? text_w : text_h;

    bool found = false;
    for (std::size_t step = 0; step <= options.max_steps && !found; ++step) {
      const double theta = static_cast<double>(step) * kAngleStep;
      const double r = radius_per_radian * theta;
      const double x = cx + r * aspect * std::cos(theta + phase);
      const double y = cy + r * std::sin(theta + phase);
      const Box box{x - bw / 2.0, y - bh / 2.0, bw, bh};
      if (box.x < 0.0 || box.y < 0.0 || box.x + bw > canvas.width || box.y + bh > canvas.height) continue;
      const bool clash = std::any_of(cloud.placed.begin(), cloud.placed.end(),
                                     [&](const CloudWord& p) { return p.box.overlaps(box); });
      if (clash) continue;
      w.x = x;
      w.y = y;
      w.box = box;
      found = true;
    }
    if (found) {
      cloud.placed.push_back(std::move(w));
    } else {
      cloud.dropped.push_back(e.word);
    }
  }

  std::ostringstream svg;
  open_svg(svg, canvas.width, canvas.height);
  for (const auto& w : cloud.placed) {
    svg << "<text x=\"" << format_number(w.x) << "\" y=\"" << format_number(w.y)
        << "\" font-family=\"monospace\" font-size=\"" << format_number(w.font_size) << "\" fill=\""
        << to_hex(w.color) << "\" text-anchor=\"middle\" dominant-baseline=\"central\"";
    if (w.rotation != 0) {
      svg << " transform=\"rotate(" << w.rotation << ' ' << format_number(w.x) << ' ' << format_number(w.y)
          << ")\"";
    }
    svg << '>' << xml_escape(w.word) << "</text>\n";
  }
  if (!cloud.dropped.empty()) {
    svg << "<!-- dropped:";
    for (const auto& d : cloud.dropped) svg << ' ' << comment_safe(d);
    svg << " -->\n";
  }
  svg << "</svg>\n";
  cloud.svg = std::move(svg).str();
  return cloud;
}

Figure histogram_figure(const stats::WeightedDistribution& unweighted,
                        const stats::WeightedDistribution& weighted, std::size_t bins) {
  using L = HistogramLayout;
  const std::array<const stats::WeightedDistribution*, 2> panels{&unweighted, &weighted};
  const std::array<const char*, 2> names{"unweighted", "weighted"};
  const std::array<const char*, 2> titles{"Lexicon valence", "Frequency-weighted valence"};

  std::array<std::vector<double>, 2> masses;
  double max_mass = 0.0;
  for (std::size_t p = 0; p < 2; ++p) {
    masses[p] = stats::histogram(*panels[p], bins);
    max_mass = std::max(max_mass, *std::max_element(masses[p].begin(), masses[p].end()));
  }

  Figure fig;
  std::vector<double> edges;
  for (std::size_t i = 0; i <= bins; ++i) edges.push_back(-1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(bins));
  fig.data["bins"] = bins;
  fig.data["edges"] = edges;

  std::ostringstream svg;
  open_svg(svg, L::kWidth, L::kHeight);
  const double bottom = L::kTop + L::kPanelHeight;
  const double bar_w = L::kPanelWidth / static_cast<double>(bins);
  for (std::size_t p = 0; p < 2; ++p) {
    const double left = L::panel_left(p);
    const double median = stats::weighted_median(*panels[p]);
    const double mean = stats::weighted_mean(*panels[p]);
    nlohmann::json ratio_json = nullptr;
    std::string ratio_text = "n/a";
    try {
      const double ratio = stats::pos_neg_ratio(*panels[p]);
      ratio_json = ratio;
      char buf[32];
      const auto res = std::to_chars(buf, buf + sizeof buf, ratio, std::chars_format::fixed, 2);
      ratio_text.assign(buf, res.ptr);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::undefined_ratio) throw;
    }

    svg << "<g id=\"panel-" << names[p] << "\">\n";
    svg << "<text x=\"" << format_number(left + L::kPanelWidth / 2.0) << "\" y=\"" << format_number(L::kTop - 25.0)
        << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">" << titles[p] << "</text>\n";
    svg << "<line x1=\"" << format_number(left) << "\" y1=\"" << format_number(bottom) << "\" x2=\""
        << format_number(left + L::kPanelWidth) << "\" y2=\"" << format_number(bottom)
        << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    for (std::size_t b = 0; b < bins; ++b) {
      const double h = max_mass > 0.0 ? masses[p][b] / max_mass * L::kPanelHeight : 0.0;
      const double center = -1.0 + (static_cast<double>(b) + 0.5) * 2.0 / static_cast<double>(bins);
      svg << "<rect x=\"" << format_number(left + static_cast<double>(b) * bar_w) << "\" y=\""
          << format_number(bottom - h) << "\" width=\"" << format_number(bar_w) << "\" height=\""
          << format_number(h) << "\" fill=\"" << to_hex(valence_color(center))
          << "\" stroke=\"#444444\" stroke-width=\"0.5\"/>\n";
    }
    for (const double tick : {-1.0, 0.0, 1.0}) {
      svg << "<text x=\"" << format_number(L::x_for(p, tick)) << "\" y=\"" << format_number(bottom + 16.0)
          << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << format_number(tick)
          << "</text>\n";
    }
    const double mx = L::x_for(p, median);
    svg << "<line id=\"median-" << names[p] << "\" x1=\"" << format_number(mx) << "\" y1=\""
        << format_number(L::kTop) << "\" x2=\"" << format_number(mx) << "\" y2=\"" << format_number(bottom)
        << "\" stroke=\"#000000\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";
    svg << "<text id=\"ratio-" << names[p] << "\" x=\"" << format_number(left + 12.0) << "\" y=\""
        << format_number(L::kTop + 16.0) << "\" font-family=\"sans-serif\" font-size=\"12\">" << ratio_text
        << "</text>\n";
    svg << "</g>\n";

    fig.data[names[p]] = {{"masses", masses[p]},
                          {"mean", mean},
                          {"median", median},
                          {"median_x", mx},
                          {"pos_neg_ratio", ratio_json}};
  }
  svg << "</svg>\n";
  fig.svg = std::move(svg).str();
  return fig;
}

Figure info_bins_figure(std::span<const BinRow> rows) {
  if (rows.empty()) throw Error(ErrorCode::empty_input, "no information bins to draw");
  constexpr double kColumn = 200.0;
  constexpr double kMaxLength = 170.0;
  constexpr double kMinFraction = 0.1;
  constexpr double kBarHeight = 22.0;
  constexpr double kBarGap = 6.0;
  constexpr double kTop = 50.0;
  constexpr double kLeft = 30.0;

  std::size_t max_bins = 0;
  for (const auto& row : rows) {
    if (row.bins.empty()) throw Error(ErrorCode::empty_input, "row '" + row.label + "' has no bins");
    max_bins = std::max(max_bins, row.bins.size());
  }
  const double width = 2.0 * kLeft + kColumn * static_cast<double>(rows.size());
  const double height = kTop + static_cast<double>(max_bins) * (kBarHeight + kBarGap) + 30.0;

  Figure fig;
  fig.data["rows"] = nlohmann::json::array();
  std::ostringstream svg;
  open_svg(svg, width, height);
  std::ostringstream defs;
  std::ostringstream body;

  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    std::vector<double> means;
    for (const auto& bin : row.bins) means.push_back(bin.mean_info);
    std::vector<double> scaled(means.size(), 1.0);
    try {
      scaled = info::rescale_for_display(means);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::degenerate_input) throw;
    }

    const double left = kLeft + kColumn * static_cast<double>(r);
    body << "<text x=\"" << format_number(left) << "\" y=\"" << format_number(kTop - 18.0)
         << "\" font-family=\"sans-serif\" font-size=\"14\">" << xml_escape(row.label) << "</text>\n";
    nlohmann::json bars = nlohmann::json::array();
    for (std::size_t b = 0; b < row.bins.size(); ++b) {
      const auto& bin = row.bins[b];
      const double length = kMaxLength * (kMinFraction + (1.0 - kMinFraction) * scaled[b]);
      const double y = kTop + static_cast<double>(b) * (kBarHeight + kBarGap);
      const std::string id = "grad-" + std::to_string(r) + "-" + std::to_string(b);
      const Rgb low = valence_color(bin.mean_valence - bin.valence_stderr);
      const Rgb mid = valence_color(bin.mean_valence);
      const Rgb high = valence_color(bin.mean_valence + bin.valence_stderr);
      defs << "<linearGradient id=\"" << id << "\" x1=\"0\" y1=\"0\" x2=\"0\" y2=\"1\">"
           << "<stop offset=\"0\" stop-color=\"" << to_hex(low) << "\"/>"
           << "<stop offset=\"0.5\" stop-color=\"" << to_hex(mid) << "\"/>"
           << "<stop offset=\"1\" stop-color=\"" << to_hex(high) << "\"/></linearGradient>\n";
      body << "<rect id=\"bar-" << r << '-' << b << "\" x=\"" << format_number(left) << "\" y=\""
           << format_number(y) << "\" width=\"" << format_number(length) << "\" height=\""
           << format_number(kBarHeight) << "\" fill=\"url(#" << id << ")\" stroke=\"#444444\" stroke-width=\"0.5\"/>\n";
      bars.push_back({{"bin", b},
                      {"length", length},
                      {"y", y},
                      {"mean_info", bin.mean_info},
                      {"display_info", scaled[b]},
                      {"mean_valence", bin.mean_valence},
                      {"valence_stderr", bin.valence_stderr},
                      {"fill_center", to_hex(mid)},
                      {"words", bin.members.size()}});
    }
    fig.data["rows"].push_back({{"label", row.label}, {"bars", std::move(bars)}});
  }
  svg << "<defs>\n" << defs.str() << "</defs>\n" << body.str() << "</svg>\n";
  fig.svg = std::move(svg).str();
  return fig;
}

}  // namespace affectinfo::report
