#include "nccsim/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

namespace nccsim {

std::vector<double> default_snr_grid() {
  std::vector<double> g;
  for (int s = 0; s <= 26; s += 2) g.push_back(static_cast<double>(s));
  return g;
}

std::vector<double> ScenarioConfig::grid() const {
  return snr_grid_db.empty() ? default_snr_grid() : snr_grid_db;
}

namespace {

unsigned q_for_order(unsigned m) {
  if (m < 2 || (m & (m - 1)) != 0)
    throw std::invalid_argument("constellation order must be a power of two");
  return static_cast<unsigned>(std::bit_width(m) - 1);
}

unsigned effective_threads(unsigned requested, std::size_t iterations) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("NCC_SIM_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && cap >= 1 && cap < n) n = static_cast<unsigned>(cap);
  }
  if (iterations < n) n = static_cast<unsigned>(iterations);
  return std::max(1u, n);
}

// Per-worker tallies. Everything is an integer sum, so merge order cannot
// change the result; threaded and serial runs agree bit for bit.
struct Accum {
  std::uint64_t errors = 0;
  std::uint64_t symbols = 0;
  std::vector<std::uint64_t> per_dest;
  FrameDiagnostics diag;
  std::size_t slots = 0;
  bool seen = false;

  void add(const FrameResult& r) {
    if (!seen) {
      per_dest.assign(r.sent.size(), 0);
      diag.uplinks.assign(r.diag.uplinks.size(), LinkStats{});
      slots = r.slots;
      seen = true;
    }
    for (std::size_t j = 0; j < r.sent.size(); ++j) {
      const auto& a = r.sent[j];
      const auto& b = r.recovered[j];
      std::uint64_t e = 0;
      for (std::size_t t = 0; t < a.size(); ++t) e += a[t] != b[t];
      per_dest[j] += e;
      errors += e;
      symbols += a.size();
    }
    diag.rs_failures += r.diag.rs_failures;
    diag.zero_fades += r.diag.zero_fades;
    for (std::size_t i = 0; i < r.diag.uplinks.size(); ++i)
      diag.uplinks[i] += r.diag.uplinks[i];
    diag.relay_bcast += r.diag.relay_bcast;
  }

  void merge(const Accum& o) {
    if (!o.seen) return;
    if (!seen) {
      *this = o;
      return;
    }
    errors += o.errors;
    symbols += o.symbols;
    for (std::size_t j = 0; j < per_dest.size(); ++j) per_dest[j] += o.per_dest[j];
    diag.rs_failures += o.diag.rs_failures;
    diag.zero_fades += o.diag.zero_fades;
    for (std::size_t i = 0; i < diag.uplinks.size(); ++i)
      diag.uplinks[i] += o.diag.uplinks[i];
    diag.relay_bcast += o.diag.relay_bcast;
  }
};

}  // namespace

void ScenarioConfig::validate() const {
  if (m != 8 && m != 16 && m != 32)
    throw std::invalid_argument("config: constellation order must be 8, 16, or 32");
  if (frame_len == 0)
    throw std::invalid_argument("config: frame length must be positive");
  if (iterations == 0)
    throw std::invalid_argument("config: iterations must be positive");
  const std::vector<double> g = grid();
  if (g.empty()) throw std::invalid_argument("config: SNR grid must be nonempty");
  for (std::size_t i = 1; i < g.size(); ++i) {
    if (!(g[i] > g[i - 1]))
      throw std::invalid_argument("config: SNR grid must be strictly increasing");
  }
  if (scenario_uses_rs(scenario) && !rs)
    throw std::invalid_argument("config: this scenario requires RS parameters");
  if (rs) RsCode::validate_params(q_for_order(m), rs->n, rs->k, frame_len);
  if (!source_powers.empty() && source_powers.size() != pair_count(topology))
    throw std::invalid_argument("config: source power list must match the pair count");
  for (double p : source_powers) {
    if (!(p > 0.0))
      throw std::invalid_argument("config: source powers must be positive");
  }
  if (!(relay_power > 0.0) || !(relay2_power > 0.0))
    throw std::invalid_argument("config: relay powers must be positive");
}

double wilson_halfwidth(std::uint64_t errors, std::uint64_t trials) {
  if (trials == 0) return 0.0;
  constexpr double z = 1.959963984540054;  // 97.5th normal percentile
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(errors) / n;
  const double z2 = z * z;
  return (z / (1.0 + z2 / n)) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
}

SerPoint estimate_ser_with(const FrameRunner& runner, const ScenarioConfig& cfg,
                           double snr_db, std::uint32_t snr_index) {
  cfg.validate();
  const PskConstellation psk(cfg.m, cfg.mapping);
  std::optional<RsCode> rs;
  if (cfg.rs)
    rs.emplace(RsCode::validate_params(q_for_order(cfg.m), cfg.rs->n, cfg.rs->k,
                                       cfg.frame_len));

  FrameConfig fc;
  fc.topology = cfg.topology;
  fc.scenario = cfg.scenario;
  fc.psk = &psk;
  fc.rs = rs ? &*rs : nullptr;
  fc.frame_len = cfg.frame_len;
  fc.snr_db = snr_db;
  fc.source_powers = cfg.source_powers;
  fc.relay_power = cfg.relay_power;
  fc.relay2_power = cfg.relay2_power;
  fc.equalizer = cfg.equalizer;

  const unsigned workers = effective_threads(cfg.threads, cfg.iterations);
  std::atomic<std::size_t> next{0};
  Accum total;
  std::mutex mu;
  std::exception_ptr first_error;

  auto work = [&]() {
    Accum local;
    try {
      while (true) {
        const std::size_t f = next.fetch_add(1, std::memory_order_relaxed);
        if (f >= cfg.iterations) break;
        const std::uint64_t seed = cfg.seed;
        const StreamProvider sp = [seed, snr_index, f](std::uint32_t link) {
          return derive_stream(seed, snr_index, static_cast<std::uint32_t>(f), link);
        };
        local.add(runner(fc, sp));
      }
    } catch (...) {
      std::lock_guard<std::mutex> lk(mu);
      if (!first_error) first_error = std::current_exception();
      return;
    }
    std::lock_guard<std::mutex> lk(mu);
    total.merge(local);
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  SerPoint pt;
  pt.snr_db = snr_db;
  pt.errors = total.errors;
  pt.symbols = total.symbols;
  pt.ser = total.symbols
               ? static_cast<double>(total.errors) / static_cast<double>(total.symbols)
               : 0.0;
  pt.ci95 = wilson_halfwidth(total.errors, total.symbols);
  pt.under_resolved = total.errors < 10;
  pt.per_dest_errors = std::move(total.per_dest);
  pt.diag = std::move(total.diag);
  pt.slots_per_frame = total.slots;
  return pt;
}

SerPoint estimate_ser(const ScenarioConfig& cfg, double snr_db, std::uint32_t snr_index) {
  return estimate_ser_with(FrameRunner(&run_frame), cfg, snr_db, snr_index);
}

SerCurve snr_sweep_with(const FrameRunner& runner, const ScenarioConfig& cfg) {
  cfg.validate();
  SerCurve curve;
  curve.config = cfg;
  const std::vector<double> g = cfg.grid();
  curve.points.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    curve.points.push_back(
        estimate_ser_with(runner, cfg, g[i], static_cast<std::uint32_t>(i)));
  }
  return curve;
}

SerCurve snr_sweep(const ScenarioConfig& cfg) {
  return snr_sweep_with(FrameRunner(&run_frame), cfg);
}

ComparedCurves compare_schemes(const ScenarioConfig& base) {
  if (!base.rs)
    throw std::invalid_argument("compare_schemes: RS parameters required");
  ScenarioConfig c1 = base;
  c1.scenario = Scenario::kNccRsScheme1;
  ScenarioConfig c2 = base;
  c2.scenario = Scenario::kNccRsScheme2;
  ComparedCurves out{snr_sweep(c1), snr_sweep(c2), {}};
  out.ser_ratio.reserve(out.scheme1.points.size());
  for (std::size_t i = 0; i < out.scheme1.points.size(); ++i) {
    const double a = out.scheme1.points[i].ser;
    const double b = out.scheme2.points[i].ser;
    out.ser_ratio.push_back(b > 0.0 ? a / b
                                    : (a > 0.0 ? std::numeric_limits<double>::infinity()
                                               : 1.0));
  }
  return out;
}

FrameResult run_frame_point_to_point(const FrameConfig& cfg, const StreamProvider& streams) {
  if (cfg.psk == nullptr)
    throw std::invalid_argument("frame config: constellation is required");
  const PskConstellation& psk = *cfg.psk;
  const unsigned bits = q_for_order(psk.order());

  FrameResult fr;
  fr.sent.resize(1);
  fr.recovered.resize(1);
  Prng mr = streams(link_id(LinkKind::kMessage, 0));
  fr.sent[0].resize(cfg.frame_len);
  for (Gf& s : fr.sent[0]) s = static_cast<Gf>(mr.next_bits(bits));

  const double p = cfg.source_powers.empty() ? 1.0 : cfg.source_powers[0];
  const LinkBudget b = LinkBudget::from_snr(p, cfg.snr_db);
  Prng lr = streams(link_id(LinkKind::kUplink, 0));
  fr.recovered[0].resize(cfg.frame_len);
  for (std::size_t t = 0; t < cfg.frame_len; ++t) {
    const TxResult r = transmit(psk.modulate(fr.sent[0][t]), b, lr);
    if (std::norm(r.chan.h) < kMinFadePower) ++fr.diag.zero_fades;
    fr.recovered[0][t] = psk.demodulate(equalize(r.y, r.chan.h, cfg.equalizer));
  }
  fr.slots = 1;
  return fr;
}

}  // namespace nccsim
