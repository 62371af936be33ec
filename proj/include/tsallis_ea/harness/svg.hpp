#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "tsallis_ea/error.hpp"
#include "tsallis_ea/harness/csv.hpp"
#include "tsallis_ea/harness/experiment.hpp"

namespace tsallis_ea::harness {

namespace detail {

inline std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string fixed(double value, int decimals = 2) {
  char buffer[48];
  std::snprintf(buffer, sizeof buffer, "%.*f", decimals, value);
  return buffer;
}

inline std::string tick_label(double value) {
  char buffer[48];
  std::snprintf(buffer, sizeof buffer, "%.4g", value);
  return buffer;
}

}  // namespace detail

/// Line chart of mean best-so-far energy against generation, one polyline
/// and one legend entry per aggregate. Linear axes, y from 0.
inline std::string render_convergence_svg(std::span<const AggregateTrace> aggregates) {
  tsallis_ea::detail::require(!aggregates.empty(), "nothing to plot");
  constexpr double width = 860.0;
  constexpr double height = 480.0;
  constexpr double left = 80.0;
  constexpr double right = 620.0;
  constexpr double top = 50.0;
  constexpr double bottom = 420.0;
  constexpr std::array<std::string_view, 8> colors{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                   "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

  double x_min = 1.0;
  double x_max = 1.0;
  double y_max = 0.0;
  for (const AggregateTrace& aggregate : aggregates) {
    for (const AggregateRecord& row : aggregate.records) {
      x_max = std::max(x_max, static_cast<double>(row.generation));
      if (std::isfinite(row.best_so_far_mean)) y_max = std::max(y_max, row.best_so_far_mean);
    }
  }
  if (x_max <= x_min) {
    x_min -= 0.5;
    x_max += 0.5;
  }
  y_max = y_max > 0.0 ? y_max * 1.05 : 1.0;
  const auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * (right - left); };
  const auto py = [&](double y) { return bottom - y / y_max * (bottom - top); };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fixed(width, 0) +
         "\" height=\"" + detail::fixed(height, 0) + "\" viewBox=\"0 0 " +
         detail::fixed(width, 0) + " " + detail::fixed(height, 0) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const AggregateTrace& first = aggregates.front();
  svg += "<text x=\"" + detail::fixed((left + right) / 2) +
         "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
         detail::xml_escape(first.config.objective) + ": mean best-so-far energy over " +
         std::to_string(first.runs) + " run" + (first.runs == 1 ? "" : "s") + "</text>\n";

  // Axes, grid and ticks.
  svg += "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  svg += "<line x1=\"" + detail::fixed(left) + "\" y1=\"" + detail::fixed(bottom) + "\" x2=\"" +
         detail::fixed(right) + "\" y2=\"" + detail::fixed(bottom) + "\"/>\n";
  svg += "<line x1=\"" + detail::fixed(left) + "\" y1=\"" + detail::fixed(top) + "\" x2=\"" +
         detail::fixed(left) + "\" y2=\"" + detail::fixed(bottom) + "\"/>\n";
  svg += "</g>\n";
  svg += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  constexpr int ticks = 5;
  for (int i = 0; i <= ticks; ++i) {
    const double x = x_min + (x_max - x_min) * i / ticks;
    const double y = y_max * i / ticks;
    svg += "<line x1=\"" + detail::fixed(px(x)) + "\" y1=\"" + detail::fixed(bottom) +
           "\" x2=\"" + detail::fixed(px(x)) + "\" y2=\"" + detail::fixed(bottom + 5) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + detail::fixed(px(x)) + "\" y=\"" + detail::fixed(bottom + 20) +
           "\" text-anchor=\"middle\">" + detail::tick_label(x) + "</text>\n";
    svg += "<line x1=\"" + detail::fixed(left) + "\" y1=\"" + detail::fixed(py(y)) + "\" x2=\"" +
           detail::fixed(right) + "\" y2=\"" + detail::fixed(py(y)) +
           "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + detail::fixed(left - 8) + "\" y=\"" + detail::fixed(py(y) + 4) +
           "\" text-anchor=\"end\">" + detail::tick_label(y) + "</text>\n";
  }
  svg += "<text x=\"" + detail::fixed((left + right) / 2) + "\" y=\"" +
         detail::fixed(bottom + 45) + "\" text-anchor=\"middle\">generation</text>\n";
  svg += "<text x=\"20\" y=\"" + detail::fixed((top + bottom) / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " +
         detail::fixed((top + bottom) / 2) + ")\">best-so-far energy</text>\n";
  svg += "</g>\n";

  for (std::size_t s = 0; s < aggregates.size(); ++s) {
    const AggregateTrace& aggregate = aggregates[s];
    const std::string_view color = colors[s % colors.size()];
    svg += "<polyline class=\"series\" fill=\"none\" stroke-width=\"2\" stroke=\"";
    svg += color;
    svg += "\" points=\"";
    for (std::size_t i = 0; i < aggregate.records.size(); ++i) {
      const AggregateRecord& row = aggregate.records[i];
      if (i != 0) svg += ' ';
      svg += detail::fixed(px(static_cast<double>(row.generation))) + "," +
             detail::fixed(py(row.best_so_far_mean));
    }
    svg += "\"/>\n";
  }

  svg += "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"13\">\n";
  for (std::size_t s = 0; s < aggregates.size(); ++s) {
    const double y = top + 10.0 + 22.0 * static_cast<double>(s);
    const std::string_view color = colors[s % colors.size()];
    svg += "<line x1=\"" + detail::fixed(right + 20) + "\" y1=\"" + detail::fixed(y) +
           "\" x2=\"" + detail::fixed(right + 50) + "\" y2=\"" + detail::fixed(y) +
           "\" stroke-width=\"2\" stroke=\"";
    svg += color;
    svg += "\"/>\n";
    svg += "<text class=\"legend-entry\" x=\"" + detail::fixed(right + 58) + "\" y=\"" +
           detail::fixed(y + 4) + "\">" + detail::xml_escape(config_title(aggregates[s].config)) +
           "</text>\n";
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

inline void render_convergence_plot(std::span<const AggregateTrace> aggregates,
                                    const std::filesystem::path& path) {
  const std::string svg = render_convergence_svg(aggregates);
  if (path.has_parent_path()) detail::ensure_directory(path.parent_path());
  detail::write_file(path, svg);
}

}  // namespace tsallis_ea::harness
