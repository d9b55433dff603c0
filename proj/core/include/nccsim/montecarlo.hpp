#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "nccsim/topology.hpp"

namespace nccsim {

/// Default master seed so bare invocations reproduce bit for bit.
inline constexpr std::uint64_t kDefaultSeed = 0xecc0de5eedULL;

/// 0, 2, ..., 26 dB: the standard fourteen-point sweep.
std::vector<double> default_snr_grid();

struct RsParams {
  unsigned n = 0;
  unsigned k = 0;
};

/// One experiment cell: topology x scenario x modulation x code, plus the
/// Monte Carlo protocol knobs.
struct ScenarioConfig {
  Topology topology = Topology::kX;
  Scenario scenario = Scenario::kDirectAf;
  unsigned m = 16;  // constellation order, 8/16/32
  SymbolMapping mapping = SymbolMapping::kNatural;
  std::optional<RsParams> rs;         // required for RS scenarios
  std::size_t frame_len = 1000;       // message symbols per source per frame
  std::size_t iterations = 1000;      // frames averaged per SNR point
  std::vector<double> snr_grid_db;    // empty means the default grid
  std::vector<double> source_powers;  // empty means all 1
  double relay_power = 1.0;
  double relay2_power = 1.0;
  std::uint64_t seed = kDefaultSeed;
  EqualizerMode equalizer = EqualizerMode::kZeroForcing;
  unsigned threads = 0;  // 0 = hardware concurrency; NCC_SIM_THREADS caps it

  std::vector<double> grid() const;

  /// Throws std::invalid_argument naming the violated constraint: grid
  /// strictly increasing, iterations/frame_len positive, m in {8,16,32},
  /// RS params self-consistent with m and frame_len, powers positive.
  void validate() const;
};

/// Pooled SER estimate at one SNR. ser * symbols equals errors exactly.
struct SerPoint {
  double snr_db = 0.0;
  std::uint64_t errors = 0;   // message-symbol mismatches over all destinations
  std::uint64_t symbols = 0;  // iterations * frame_len * destinations
  double ser = 0.0;
  double ci95 = 0.0;               // 95% Wilson half-width
  bool under_resolved = false;     // fewer than 10 error events
  std::vector<std::uint64_t> per_dest_errors;
  FrameDiagnostics diag;           // aggregated over frames
  std::size_t slots_per_frame = 0;
};

struct SerCurve {
  ScenarioConfig config;
  std::vector<SerPoint> points;
};

/// Half-width of the 95% Wilson score interval for errors/trials.
double wilson_halfwidth(std::uint64_t errors, std::uint64_t trials);

/// Seam for substituting the frame pipeline (reference links, fault
/// injection). The default runner is run_frame.
using FrameRunner = std::function<FrameResult(const FrameConfig&, const StreamProvider&)>;

/// Runs config.iterations frames at one SNR and pools the counts.
/// Deterministic in (config, seed, snr_index); frames execute on a worker
/// pool but integer accumulation makes the result order-independent.
SerPoint estimate_ser(const ScenarioConfig& cfg, double snr_db,
                      std::uint32_t snr_index = 0);
SerPoint estimate_ser_with(const FrameRunner& runner, const ScenarioConfig& cfg,
                           double snr_db, std::uint32_t snr_index = 0);

/// estimate_ser at every grid point, each with its own derived streams.
SerCurve snr_sweep(const ScenarioConfig& cfg);
SerCurve snr_sweep_with(const FrameRunner& runner, const ScenarioConfig& cfg);

struct ComparedCurves {
  SerCurve scheme1;
  SerCurve scheme2;
  std::vector<double> ser_ratio;  // scheme-1 SER / scheme-2 SER per grid point
};

/// Paired sweeps differing only in the scheme, sharing the master seed so
/// both see common random numbers.
ComparedCurves compare_schemes(const ScenarioConfig& base);

/// Reference pipeline: one uncoded source-to-destination fading link, no
/// relay. Used to calibrate against the analytic Rayleigh M-PSK SER.
FrameResult run_frame_point_to_point(const FrameConfig& cfg, const StreamProvider& streams);

}  // namespace nccsim
