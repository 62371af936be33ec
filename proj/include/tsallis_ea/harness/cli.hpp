#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "tsallis_ea/engine.hpp"
#include "tsallis_ea/error.hpp"
#include "tsallis_ea/harness/experiment.hpp"

namespace tsallis_ea::harness {

// Thrown for an explicit --help; carries the text to print (exit status 0).
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultMasterSeed = 2004;

namespace detail {

inline std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return std::string(text.substr(first, last - first + 1));
}

inline std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    items.push_back(trim(text.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return items;
}

inline double parse_real(const std::string& text, std::string_view what) {
  double value = 0.0;
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw UsageError("cannot parse " + std::string(what) + " value '" + text + "' as a number");
  }
  return value;
}

inline const std::set<std::string, std::less<>>& flag_keys() {
  static const std::set<std::string, std::less<>> keys{"constant-q", "no-energy-shift", "plot"};
  return keys;
}

inline const std::set<std::string, std::less<>>& value_keys() {
  static const std::set<std::string, std::less<>> keys{
      "function", "selection", "q0",   "beta0", "alpha", "pop-size", "generations", "runs",
      "vars",     "bits",      "pc",   "pbit",  "seed",  "out",      "compare",     "threads"};
  return keys;
}

inline bool parse_bool(const std::string& text, const std::string& key) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw UsageError("config key '" + key + "' expects a boolean, got '" + text + "'");
}

}  // namespace detail

/// Reads `key = value` lines (keys are the long flag names without dashes;
/// `#` starts a comment) and returns the equivalent flag tokens.
inline std::vector<std::string> config_file_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::vector<std::string> tokens;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(number) + ": expected 'key = value'");
    }
    const std::string key = detail::trim(std::string_view(line).substr(0, eq));
    const std::string value = detail::trim(std::string_view(line).substr(eq + 1));
    if (detail::flag_keys().contains(key)) {
      if (detail::parse_bool(value, key)) tokens.push_back("--" + key);
    } else if (detail::value_keys().contains(key)) {
      tokens.push_back("--" + key);
      tokens.push_back(value);
    } else {
      throw UsageError(path + ":" + std::to_string(number) + ": unknown key '" + key + "'");
    }
  }
  return tokens;
}

/// Builds an experiment from command-line arguments (without the program
/// name). Precedence: flags, then `--config` file values, then defaults.
inline ExperimentConfig parse_cli(const std::vector<std::string>& args) {
  EngineConfig base;
  std::string function;
  std::string selection;
  std::string compare;
  std::string q0_text;
  std::string output_dir = "results";
  std::uint64_t seed = kDefaultMasterSeed;
  std::size_t runs = 20;
  std::size_t threads = 0;
  bool constant_q = false;
  bool no_energy_shift = false;
  bool plot = false;
  std::string config_path;

  CLI::App app{"Evolutionary algorithm with Tsallis, Boltzmann and proportionate selection",
               "tsallis-ea"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.add_option("--function", function, "Objective: ackley | rastrigin | griewangk");
  app.add_option("--selection", selection, "Selection: proportionate | boltzmann | tsallis");
  app.add_option("--compare", compare, "Comma-separated selection schemes to compare");
  app.add_option("--q0", q0_text, "Initial q for tsallis (comma list runs one config per value)");
  app.add_flag("--constant-q", constant_q, "Hold q at q0 instead of decaying it to 1");
  app.add_option("--beta0", base.beta0, "Annealing scale beta0")->capture_default_str();
  app.add_option("--alpha", base.alpha, "Annealing exponent alpha (> 1)")->capture_default_str();
  app.add_option("--pop-size", base.population_size, "Population size n")->capture_default_str();
  app.add_option("--generations", base.generations, "Generations T")->capture_default_str();
  app.add_option("--runs", runs, "Replicate runs per configuration")->capture_default_str();
  app.add_option("--vars", base.variables, "Number of variables l")->capture_default_str();
  app.add_option("--bits", base.bits_per_var, "Bits per variable")->capture_default_str();
  app.add_option("--pc", base.variation.p_crossover, "Uniform crossover probability")
      ->capture_default_str();
  app.add_option("--pbit", base.variation.p_bit_mutation, "Per-bit mutation probability")
      ->capture_default_str();
  app.add_flag("--no-energy-shift", no_energy_shift,
               "Apply tsallis weights to raw energies instead of E - min(E)");
  app.add_option("--seed", seed, "Master seed")->capture_default_str();
  app.add_option("--out", output_dir, "Output directory")->capture_default_str();
  app.add_flag("--plot", plot, "Also write an SVG convergence plot");
  app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)")
      ->capture_default_str();
  app.add_option("--config", config_path, "key = value file with the same keys as the flags");

  if (args.empty()) {
    throw UsageError("no arguments given\n" + app.help());
  }

  // Splice the config file in front of the command line; TakeLast lets flags win.
  std::vector<std::string> tokens;
  std::vector<std::string> cli;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[++i];
    } else if (args[i].starts_with("--config=")) {
      config_path = args[i].substr(9);
    } else {
      cli.push_back(args[i]);
    }
  }
  if (!config_path.empty()) tokens = config_file_tokens(config_path);
  tokens.insert(tokens.end(), cli.begin(), cli.end());

  try {
    // CLI11 consumes arguments from the back.
    std::vector<std::string> reversed(tokens.rbegin(), tokens.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(std::string(e.what()) + "\n" + app.help());
  }

  if (function.empty()) throw UsageError("--function is required\n" + app.help());
  find_objective(function);
  if (selection.empty() == compare.empty()) {
    throw UsageError("exactly one of --selection or --compare is required\n" + app.help());
  }

  std::vector<SelectionScheme> schemes;
  for (const std::string& name : compare.empty() ? std::vector{selection} : detail::split_list(compare)) {
    const SelectionScheme scheme = parse_scheme(name);
    if (std::find(schemes.begin(), schemes.end(), scheme) != schemes.end()) {
      throw UsageError("selection scheme '" + name + "' listed twice");
    }
    schemes.push_back(scheme);
  }
  const bool wants_tsallis =
      std::find(schemes.begin(), schemes.end(), SelectionScheme::tsallis) != schemes.end();

  std::vector<double> q0_values;
  if (!q0_text.empty()) {
    for (const std::string& item : detail::split_list(q0_text)) {
      q0_values.push_back(detail::parse_real(item, "--q0"));
    }
  }
  if (wants_tsallis && q0_values.empty()) {
    throw UsageError("tsallis selection requires --q0");
  }
  if (!wants_tsallis && !q0_values.empty()) {
    throw UsageError("--q0 only applies to tsallis selection");
  }
  if (!wants_tsallis && constant_q) {
    throw UsageError("--constant-q only applies to tsallis selection");
  }

  base.objective = function;
  base.constant_q = constant_q;
  base.energy_shift = no_energy_shift ? EnergyShift::off : EnergyShift::on;

  ExperimentConfig experiment;
  experiment.runs = runs;
  experiment.master_seed = seed;
  experiment.output_dir = output_dir;
  experiment.plot = plot;
  experiment.threads = threads;
  for (SelectionScheme scheme : schemes) {
    EngineConfig config = base;
    config.scheme = scheme;
    if (scheme == SelectionScheme::tsallis) {
      for (double q0 : q0_values) {
        config.q0 = q0;
        experiment.configs.push_back(config);
      }
    } else {
      experiment.configs.push_back(config);
    }
  }
  experiment.validate();
  return experiment;
}

}  // namespace tsallis_ea::harness
