#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "nccsim/channel.hpp"
#include "nccsim/psk.hpp"
#include "nccsim/rng.hpp"
#include "nccsim/rs.hpp"

namespace nccsim {

/// Network shapes. X forms use one relay, butterfly forms two relays in
/// series; extended forms carry four source-destination pairs instead of two.
enum class Topology { kX, kExtendedX, kButterfly, kExtendedButterfly };

/// Transmission scenarios.
///  kDirectAf       uncoded, each pair served through the relay chain (AF)
///  kDirectAfRs     same chain, RS coded at the source, decoded at the sink
///  kNccUncoded     relay XORs hard demodulated symbols, no channel code
///  kNccRsScheme1   relay XORs the coded symbols without decoding them;
///                  destinations XOR first, then RS-decode
///  kNccRsScheme2   relay RS-decodes, XORs messages, re-encodes; destinations
///                  RS-decode every observation, then XOR
enum class Scenario { kDirectAf, kDirectAfRs, kNccUncoded, kNccRsScheme1, kNccRsScheme2 };

unsigned pair_count(Topology t);   // 2 or 4
unsigned relay_count(Topology t);  // 1 or 2

bool scenario_uses_rs(Scenario s);
bool scenario_is_ncc(Scenario s);

std::string to_string(Topology t);
std::string to_string(Scenario s);

/// Accepts the CLI spellings: "x", "ext-x", "butterfly", "ext-butterfly" and
/// "direct", "direct-rs", "ncc", "scheme1", "scheme2". Throws
/// std::invalid_argument on anything else.
Topology parse_topology(std::string_view name);
Scenario parse_scenario(std::string_view name);

/// Exact rational, kept reduced with positive denominator.
struct Ratio {
  long long num = 0;
  long long den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

Ratio make_ratio(long long num, long long den);

struct TopologyMetrics {
  Ratio throughput_gain;
  unsigned diversity_order = 0;
};

/// Throughput gain and diversity order for N source-destination pairs:
/// X (4/3, 2); extended X (2N/(N+1), N); butterfly (3/2, 2); extended
/// butterfly (3N/(N+2), N). Throws for N < 2.
TopologyMetrics theoretical_metrics(Topology t, unsigned n_pairs);

/// System outage probability from per-link error rates: at least two of the
/// three links (source 1, source 2, relay) failing,
/// p1*p2 + p1*pR + p2*pR - 2*p1*p2*pR. Equal rates reduce to 3p^2 - 2p^3.
/// Rates outside [0, 1] throw.
double outage_probability(double p1, double p2, double pR);

/// Time slots one frame occupies: N*(1+relays) without network coding,
/// N+relays with it. The ratio of the two is the throughput gain.
std::size_t slots_per_frame(Topology t, Scenario s);

struct LinkStats {
  std::uint64_t errors = 0;
  std::uint64_t symbols = 0;

  double rate() const { return symbols ? static_cast<double>(errors) / symbols : 0.0; }
  LinkStats& operator+=(const LinkStats& o) {
    errors += o.errors;
    symbols += o.symbols;
    return *this;
  }
};

struct FrameDiagnostics {
  std::uint64_t rs_failures = 0;  // blocks where bounded-distance decode gave up
  std::uint64_t zero_fades = 0;   // |h|^2 below the equalizer guard
  std::vector<LinkStats> uplinks; // raw demod errors at the NC relay, per source
  LinkStats relay_bcast;          // raw demod errors on the relay broadcast
};

/// One simulated frame: per pair, the transmitted message frame and the
/// frame its destination recovered, plus the slot count and diagnostics.
struct FrameResult {
  std::vector<std::vector<Gf>> sent;
  std::vector<std::vector<Gf>> recovered;
  std::size_t slots = 0;
  FrameDiagnostics diag;
};

/// Identifies one RNG stream inside a frame. kMessage draws source i's data;
/// the rest draw channel noise and fading per link. Stable across scenarios
/// so paired runs see common random numbers.
enum class LinkKind : std::uint32_t {
  kMessage = 0,     // (i, 0): source i's data symbols
  kUplink = 1,      // (i, 0): S_i -> first relay
  kCross = 2,       // (i, j): S_i -> D_j, i != j
  kRelayRelay = 3,  // (0, 0): R1 -> R2 (butterfly forms)
  kDownlink = 4,    // (0, j): last relay -> D_j
};

constexpr std::uint32_t link_id(LinkKind kind, unsigned i = 0, unsigned j = 0) {
  return static_cast<std::uint32_t>(kind) * 1024u + i * 32u + j;
}

/// Factory for per-link RNG streams; called exactly once per link per frame.
using StreamProvider = std::function<Prng(std::uint32_t)>;

struct FrameConfig {
  Topology topology = Topology::kX;
  Scenario scenario = Scenario::kDirectAf;
  const PskConstellation* psk = nullptr;
  const RsCode* rs = nullptr;  // required for the RS scenarios
  std::size_t frame_len = 1000;
  double snr_db = 0.0;
  std::vector<double> source_powers;  // empty means all 1
  double relay_power = 1.0;           // R, or R1 in butterfly forms
  double relay2_power = 1.0;          // R2 in butterfly forms
  EqualizerMode equalizer = EqualizerMode::kZeroForcing;
};

/// Checks the configuration before any simulation: constellation present and
/// of order 8/16/32, RS code present and matching the constellation field for
/// RS scenarios, frame length divisible by k, powers positive. Throws
/// std::invalid_argument naming the violated constraint.
void validate_frame_config(const FrameConfig& cfg);

FrameResult run_frame_x(const FrameConfig& cfg, const StreamProvider& streams);
FrameResult run_frame_extended_x(const FrameConfig& cfg, const StreamProvider& streams);
FrameResult run_frame_butterfly(const FrameConfig& cfg, const StreamProvider& streams);
FrameResult run_frame_extended_butterfly(const FrameConfig& cfg, const StreamProvider& streams);

/// Dispatches on cfg.topology.
FrameResult run_frame(const FrameConfig& cfg, const StreamProvider& streams);

}  // namespace nccsim
