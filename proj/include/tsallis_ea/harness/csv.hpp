#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "tsallis_ea/engine.hpp"
#include "tsallis_ea/error.hpp"
#include "tsallis_ea/harness/experiment.hpp"

namespace tsallis_ea::harness {

inline constexpr std::string_view kAggregateCsvHeader =
    "generation,beta,q,best_so_far_mean,best_so_far_std,pop_mean_energy_mean,"
    "pop_mean_energy_std,selection_entropy_mean";

inline constexpr std::string_view kTraceCsvHeader =
    "generation,beta,q,best_energy,mean_energy,best_so_far,selection_entropy";

// 17 significant digits, enough to round-trip any double.
inline std::string format_real(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

namespace detail {

inline void append_row(std::string& out, const AggregateRecord& row) {
  out += std::to_string(row.generation);
  for (double value : {row.beta, row.q, row.best_so_far_mean, row.best_so_far_std,
                       row.pop_mean_energy_mean, row.pop_mean_energy_std,
                       row.selection_entropy_mean}) {
    out += ',';
    out += format_real(value);
  }
  out += '\n';
}

inline void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

inline void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir.string() + "'" +
                  (ec ? ": " + ec.message() : std::string()));
  }
}

}  // namespace detail

inline std::string format_aggregate_csv(const AggregateTrace& aggregate) {
  std::string out(kAggregateCsvHeader);
  out += '\n';
  for (const AggregateRecord& row : aggregate.records) detail::append_row(out, row);
  return out;
}

// Same columns as the per-config files behind a leading `config` label column.
inline std::string format_combined_csv(std::span<const AggregateTrace> aggregates) {
  std::string out = "config,";
  out += kAggregateCsvHeader;
  out += '\n';
  for (const AggregateTrace& aggregate : aggregates) {
    for (const AggregateRecord& row : aggregate.records) {
      out += aggregate.label;
      out += ',';
      detail::append_row(out, row);
    }
  }
  return out;
}

inline std::string format_trace_csv(const RunTrace& trace) {
  std::string out(kTraceCsvHeader);
  out += '\n';
  for (const GenerationRecord& r : trace.records) {
    out += std::to_string(r.generation);
    for (double value : {r.beta, r.q, r.best_energy, r.mean_energy, r.best_so_far,
                         r.selection_entropy}) {
      out += ',';
      out += format_real(value);
    }
    out += '\n';
  }
  return out;
}

/// Writes `<objective>_<label>.csv` per aggregate and `<objective>_combined.csv`
/// into `dir`, returning the paths in that order.
inline std::vector<std::filesystem::path> write_csv(std::span<const AggregateTrace> aggregates,
                                                    const std::filesystem::path& dir) {
  tsallis_ea::detail::require(!aggregates.empty(), "nothing to write");
  detail::ensure_directory(dir);
  const std::string prefix = aggregates.front().config.objective + "_";
  std::vector<std::filesystem::path> written;
  for (const AggregateTrace& aggregate : aggregates) {
    written.push_back(dir / (prefix + aggregate.label + ".csv"));
    detail::write_file(written.back(), format_aggregate_csv(aggregate));
  }
  written.push_back(dir / (prefix + "combined.csv"));
  detail::write_file(written.back(), format_combined_csv(aggregates));
  return written;
}

}  // namespace tsallis_ea::harness
