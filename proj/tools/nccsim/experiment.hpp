#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nccsim/montecarlo.hpp"

namespace nccsim::cli {

enum class OutputFormat { kCsv, kJson };

/// One modulation/code cell of an experiment; presets may expand to several.
struct ModulationCell {
  unsigned m = 16;
  std::optional<RsParams> rs;
};

struct ExperimentSpec {
  Topology topology = Topology::kX;
  std::vector<Scenario> scenarios;
  std::vector<ModulationCell> cells;
  std::size_t frame_len = 1000;
  std::size_t iterations = 1000;
  std::vector<double> snr_grid_db;  // empty = default 0..26 step 2
  std::uint64_t seed = kDefaultSeed;
  EqualizerMode equalizer = EqualizerMode::kZeroForcing;
  SymbolMapping mapping = SymbolMapping::kNatural;
  unsigned threads = 0;
  std::string out_path;  // empty = derived from format
  OutputFormat format = OutputFormat::kCsv;
};

struct Preset {
  std::string name;
  std::string description;
  ExperimentSpec spec;
};

const std::vector<Preset>& presets();
const Preset* find_preset(const std::string& name);
void print_presets(std::ostream& os);

/// Fills unset fields with defaults (scenarios, cells, output path).
void finish_spec(ExperimentSpec& spec);

/// Runs every (cell, scenario) sweep, writes the output file, prints the
/// summary. Returns a process exit code.
int run_experiment(const ExperimentSpec& spec, std::ostream& summary);

/// Serialization, exposed for tests.
void write_csv(std::ostream& os, const std::vector<SerCurve>& curves);
void write_json(std::ostream& os, const std::vector<SerCurve>& curves);

}  // namespace nccsim::cli
