// Acceptance gate: one line per criterion, [PASS]/[FAIL] plus a short
// detail, nonzero exit when anything fails. Budgets are generous desk-scale
// settings; the heavy sweeps run threaded through the normal harness.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "analytic.hpp"
#include "nccsim/gf.hpp"
#include "nccsim/montecarlo.hpp"
#include "nccsim/netcode.hpp"
#include "nccsim/rng.hpp"
#include "nccsim/rs.hpp"
#include "nccsim/topology.hpp"

using namespace nccsim;

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---- criterion 1: field and codec properties ------------------------------

std::string axioms(const GfField& f, bool exhaustive) {
  const unsigned m = f.order();
  auto bad = [&](unsigned a, unsigned b, unsigned c, const char* law) {
    std::ostringstream ss;
    ss << "GF(" << m << ") " << law << " fails at (" << a << "," << b << "," << c << ")";
    return ss.str();
  };
  if (exhaustive) {
    for (unsigned a = 0; a < m; ++a) {
      if (f.add(a, a) != 0) return bad(a, a, 0, "x+x=0");
      if (f.mul(a, 1) != a) return bad(a, 1, 0, "x*1=x");
      if (a && f.mul(a, f.inv(a)) != 1) return bad(a, 0, 0, "x*inv(x)=1");
      for (unsigned b = 0; b < m; ++b) {
        if (f.add(a, b) != (a ^ b)) return bad(a, b, 0, "add=xor");
        if (f.mul(a, b) != f.mul(b, a)) return bad(a, b, 0, "mul comm");
        if (f.mul(a, b) != oracle::gf_mul(a, b, f.q(), f.primitive_poly()))
          return bad(a, b, 0, "mul vs oracle");
        for (unsigned c = 0; c < m; ++c) {
          if (f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c))) return bad(a, b, c, "mul assoc");
          if (f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c)))
            return bad(a, b, c, "distributivity");
        }
      }
    }
  } else {
    Prng rng(101);
    for (int i = 0; i < 20000; ++i) {
      const unsigned a = rng.next_bits(f.q()), b = rng.next_bits(f.q()),
                     c = rng.next_bits(f.q());
      if (f.mul(a, b) != oracle::gf_mul(a, b, f.q(), f.primitive_poly()))
        return bad(a, b, 0, "mul vs oracle");
      if (f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c))) return bad(a, b, c, "mul assoc");
      if (f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c)))
        return bad(a, b, c, "distributivity");
      if (a && f.mul(a, f.inv(a)) != 1) return bad(a, 0, 0, "x*inv(x)=1");
    }
  }
  return "";
}

std::string codec_trials(unsigned q, unsigned n, unsigned k) {
  const RsCode code = RsCode::make(q, n, k);
  Prng rng(2222 + q);
  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<Gf> msg(k);
    for (Gf& s : msg) s = static_cast<Gf>(rng.next_bits(q));
    std::vector<Gf> word = code.encode(msg);
    const unsigned e = trial % (code.t() + 1);
    std::vector<std::size_t> pos;
    while (pos.size() < e) {
      const std::size_t p = rng.next_bits(16) % n;
      bool fresh = true;
      for (std::size_t q2 : pos) fresh &= (q2 != p);
      if (fresh) pos.push_back(p);
    }
    for (std::size_t p : pos) {
      Gf d = 0;
      while (!d) d = static_cast<Gf>(rng.next_bits(q));
      word[p] = static_cast<Gf>(word[p] ^ d);
    }
    const auto [decoded, status] = code.decode(word);
    if (!status.ok || status.corrections != static_cast<int>(e) || decoded != msg) {
      std::ostringstream ss;
      ss << "RS(" << n << "," << k << ") trial " << trial << " with " << e
         << " errors did not round trip";
      return ss.str();
    }
  }
  return "";
}

std::string criterion1() {
  if (std::string s = axioms(GfField::of(3), true); !s.empty()) return s;
  if (std::string s = axioms(GfField::of(4), true); !s.empty()) return s;
  if (std::string s = axioms(GfField::of(5), false); !s.empty()) return s;
  if (std::string s = codec_trials(3, 7, 2); !s.empty()) return s;
  if (std::string s = codec_trials(4, 15, 5); !s.empty()) return s;
  if (std::string s = codec_trials(5, 31, 10); !s.empty()) return s;

  const RsCode rs72 = RsCode::make(3, 7, 2);
  for (unsigned a = 0; a < 64; ++a) {
    const std::vector<Gf> ma{static_cast<Gf>(a >> 3), static_cast<Gf>(a & 7)};
    const std::vector<Gf> ca = rs72.encode(ma);
    for (unsigned b = 0; b < 64; ++b) {
      const std::vector<Gf> mb{static_cast<Gf>(b >> 3), static_cast<Gf>(b & 7)};
      const std::vector<Gf> cb = rs72.encode(mb);
      std::vector<Gf> mx(2), cx(7);
      for (int i = 0; i < 2; ++i) mx[i] = static_cast<Gf>(ma[i] ^ mb[i]);
      for (int i = 0; i < 7; ++i) cx[i] = static_cast<Gf>(ca[i] ^ cb[i]);
      if (rs72.encode(mx) != cx) return "RS(7,2) XOR-linearity fails";
    }
  }
  return "";
}

// ---- criterion 2: noiseless transparency ----------------------------------

std::string criterion2() {
  const PskConstellation psk(8);
  const RsCode rs = RsCode::make(3, 7, 2);
  const Topology topos[] = {Topology::kX, Topology::kExtendedX, Topology::kButterfly,
                            Topology::kExtendedButterfly};
  const Scenario scens[] = {Scenario::kDirectAf, Scenario::kDirectAfRs,
                            Scenario::kNccUncoded, Scenario::kNccRsScheme1,
                            Scenario::kNccRsScheme2};
  for (Topology t : topos) {
    for (Scenario s : scens) {
      FrameConfig cfg;
      cfg.topology = t;
      cfg.scenario = s;
      cfg.psk = &psk;
      cfg.rs = scenario_uses_rs(s) ? &rs : nullptr;
      cfg.frame_len = 20;
      cfg.snr_db = std::numeric_limits<double>::infinity();
      const FrameResult fr = run_frame(
          cfg, [](std::uint32_t link) { return derive_stream(515, 0, 0, link); });
      for (unsigned i = 0; i < pair_count(t); ++i) {
        if (fr.recovered[i] != fr.sent[i]) {
          return to_string(t) + "/" + to_string(s) + " not transparent at sigma^2 = 0";
        }
      }
      if (fr.slots != slots_per_frame(t, s)) {
        return to_string(t) + "/" + to_string(s) + " slot count mismatch";
      }
    }
  }
  return "";
}

// ---- criterion 3: single-hop analytic calibration --------------------------

std::string criterion3() {
  double worst_z = 0.0;
  int checked = 0;
  for (unsigned m : {8u, 16u, 32u}) {
    ScenarioConfig cfg;
    cfg.topology = Topology::kX;
    cfg.scenario = Scenario::kNccUncoded;
    cfg.m = m;
    cfg.frame_len = 1000;
    cfg.iterations = 200;
    const SerCurve curve = snr_sweep_with(&run_frame_point_to_point, cfg);
    for (const SerPoint& pt : curve.points) {
      const double exact = oracle::rayleigh_mpsk_ser(m, pt.snr_db);
      if (exact < 1e-3) continue;
      ++checked;
      const double z = std::abs(pt.ser - exact) / pt.ci95;
      worst_z = std::max(worst_z, z / 3.0);
      if (std::abs(pt.ser - exact) > 3.0 * pt.ci95) {
        std::ostringstream ss;
        ss << m << "-PSK at " << pt.snr_db << " dB: measured " << fmt(pt.ser)
           << " vs exact " << fmt(exact) << " outside 3 Wilson half-widths ("
           << fmt(3.0 * pt.ci95) << ")";
        return ss.str();
      }
    }
  }
  if (checked < 30) return "too few calibration points were resolvable";
  return "";
}

// ---- criterion 4: fig2 anchor point ----------------------------------------

std::string criterion4(std::string& note) {
  ScenarioConfig cfg;
  cfg.topology = Topology::kX;
  cfg.scenario = Scenario::kNccRsScheme2;
  cfg.m = 16;
  cfg.rs = RsParams{15, 5};
  cfg.frame_len = 1000;
  cfg.iterations = 200;
  cfg.snr_grid_db = {14.0};
  const SerPoint coded = snr_sweep(cfg).points.front();

  ScenarioConfig un = cfg;
  un.scenario = Scenario::kNccUncoded;
  un.rs.reset();
  const SerPoint raw = snr_sweep(un).points.front();

  const double lo = std::pow(10.0, -3.7), hi = std::pow(10.0, -2.3);
  const bool band = coded.ser >= lo && coded.ser <= hi;
  const double ratio = coded.ser > 0.0 ? raw.ser / coded.ser
                                       : std::numeric_limits<double>::infinity();
  const bool ordering = ratio >= std::pow(10.0, 1.5);

  std::ostringstream ss;
  ss << "scheme2 " << fmt(coded.ser) << (band ? " inside" : " outside") << " [" << fmt(lo)
     << "," << fmt(hi) << "], ncc " << fmt(raw.ser) << ", ratio " << fmt(ratio) << "x vs 31.6x";
  note = ss.str();
  if (band && ordering) return "";
  if (ordering) {
    note += " (band missed; degraded to the ordering clause)";
    return "";
  }
  return "ordering clause failed";
}

// ---- criterion 5: scheme ordering under common random numbers --------------

std::string criterion5(std::string& note) {
  struct Cell {
    unsigned m, n, k;
  };
  const Cell cells[] = {{8, 7, 2}, {16, 15, 5}, {32, 31, 10}};
  const Topology topos[] = {Topology::kX, Topology::kExtendedX, Topology::kButterfly,
                            Topology::kExtendedButterfly};
  int comparisons = 0, violations = 0;
  std::ostringstream detail;
  double ext32_s1 = -1.0, ext32_s2 = -1.0;

  for (Topology t : topos) {
    for (const Cell& cell : cells) {
      ScenarioConfig base;
      base.topology = t;
      base.m = cell.m;
      base.rs = RsParams{cell.n, cell.k};
      base.frame_len = 1000;
      base.iterations = 100;
      base.snr_grid_db = {10, 12, 14, 16, 18, 20, 22, 24, 26};
      const ComparedCurves cc = compare_schemes(base);
      for (std::size_t i = 0; i < cc.scheme1.points.size(); ++i) {
        const SerPoint& s1 = cc.scheme1.points[i];
        const SerPoint& s2 = cc.scheme2.points[i];
        if (t == Topology::kExtendedButterfly && cell.m == 32 && s1.snr_db == 16.0) {
          ext32_s1 = s1.ser;
          ext32_s2 = s2.ser;
        }
        if (s1.errors < 10 || s2.errors < 10) continue;
        ++comparisons;
        if (s2.ser > s1.ser) {
          ++violations;
          detail << " " << to_string(t) << "/m=" << cell.m << "@" << s1.snr_db << "dB("
                 << fmt(s2.ser) << ">" << fmt(s1.ser) << ")";
        }
      }
    }
  }

  std::ostringstream ss;
  ss << comparisons << " paired points, " << violations << " ordering violations";
  const double gap = (ext32_s2 > 0.0) ? ext32_s1 / ext32_s2
                                      : std::numeric_limits<double>::infinity();
  const bool gap_ok = gap >= 10.0;
  const bool s1_band = ext32_s1 >= std::pow(10.0, -1.7) && ext32_s1 <= std::pow(10.0, -0.3);
  const bool s2_band = ext32_s2 >= std::pow(10.0, -3.7) && ext32_s2 <= std::pow(10.0, -2.3);
  ss << "; ext-butterfly 32-PSK @16dB: scheme1 " << fmt(ext32_s1) << ", scheme2 "
     << fmt(ext32_s2) << ", gap " << fmt(gap) << "x";
  note = ss.str();

  if (violations > 0) return "scheme-2 above scheme-1 at:" + detail.str();
  if (!gap_ok) return "gap below one decade: " + note;
  if (!s1_band || !s2_band) return "absolute levels outside +-0.7 decades: " + note;
  return "";
}

// ---- criterion 6: throughput metrics ----------------------------------------

std::string criterion6() {
  struct Row {
    Topology t;
    unsigned pairs;
    Ratio gain;
    unsigned div;
  };
  const Row rows[] = {
      {Topology::kX, 2, {4, 3}, 2},
      {Topology::kExtendedX, 4, {8, 5}, 4},
      {Topology::kButterfly, 2, {3, 2}, 2},
      {Topology::kExtendedButterfly, 4, {2, 1}, 4},
      // the generalized forms at N = 2 collapse to the base structures
      {Topology::kExtendedX, 2, {4, 3}, 2},
      {Topology::kExtendedButterfly, 2, {3, 2}, 2},
      {Topology::kExtendedX, 8, {16, 9}, 8},
      {Topology::kExtendedButterfly, 8, {12, 5}, 8},
  };
  for (const Row& r : rows) {
    const TopologyMetrics m = theoretical_metrics(r.t, r.pairs);
    if (!(m.throughput_gain == r.gain) || m.diversity_order != r.div) {
      return "metrics mismatch for " + to_string(r.t) + " at N=" + std::to_string(r.pairs);
    }
  }

  // simulated slot counters must imply the same gains
  const PskConstellation psk(8);
  for (Topology t : {Topology::kX, Topology::kExtendedX, Topology::kButterfly,
                     Topology::kExtendedButterfly}) {
    FrameConfig cfg;
    cfg.topology = t;
    cfg.psk = &psk;
    cfg.frame_len = 4;
    cfg.snr_db = 10.0;
    cfg.scenario = Scenario::kDirectAf;
    const auto sp = [](std::uint32_t link) { return derive_stream(1, 0, 0, link); };
    const std::size_t direct = run_frame(cfg, sp).slots;
    cfg.scenario = Scenario::kNccUncoded;
    const std::size_t ncc = run_frame(cfg, sp).slots;
    const Ratio want = theoretical_metrics(t, pair_count(t)).throughput_gain;
    if (!(make_ratio(static_cast<long long>(direct), static_cast<long long>(ncc)) == want)) {
      return "slot-count gain mismatch for " + to_string(t);
    }
  }
  return "";
}

// ---- criterion 7: outage identity ------------------------------------------

std::string criterion7() {
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    if (outage_probability(p, p, p) != 3.0 * (p * p) - 2.0 * ((p * p) * p)) {
      return "identity violated at p = " + fmt(p);
    }
  }
  Prng rng(777);
  for (double p : {0.01, 0.05, 0.1}) {
    const int n = 1000000;
    int outages = 0;
    for (int i = 0; i < n; ++i) {
      const int fails = (rng.next_double() < p) + (rng.next_double() < p) +
                        (rng.next_double() < p);
      outages += fails >= 2;
    }
    const double want = outage_probability(p, p, p);
    const double got = static_cast<double>(outages) / n;
    const double se = std::sqrt(want * (1.0 - want) / n);
    if (std::abs(got - want) > 3.0 * se) {
      return "Bernoulli check at p=" + fmt(p) + ": " + fmt(got) + " vs " + fmt(want);
    }
  }
  return "";
}

// ---- criterion 8: determinism, parallel equivalence, fig2 budget ------------

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string criterion8(std::string& note) {
  // library level: serial and threaded estimates agree exactly
  ScenarioConfig cfg;
  cfg.topology = Topology::kX;
  cfg.scenario = Scenario::kNccRsScheme2;
  cfg.m = 16;
  cfg.rs = RsParams{15, 5};
  cfg.frame_len = 100;
  cfg.iterations = 40;
  cfg.threads = 1;
  const SerPoint serial = estimate_ser(cfg, 12.0);
  cfg.threads = 0;
  const SerPoint wide = estimate_ser(cfg, 12.0);
  if (serial.errors != wide.errors || serial.ser != wide.ser ||
      serial.per_dest_errors != wide.per_dest_errors) {
    return "threaded point differs from the serial point";
  }

  const char* bin = std::getenv("NCCSIM_BIN");
  if (bin == nullptr) return "NCCSIM_BIN is not set";
  const std::string base = std::string(bin) +
                           " --preset fig2 --iters 20 --snr 10,14 --out acc_det_";
  if (shell(base + "a.csv > /dev/null 2>&1") != 0) return "sub-scale CLI run failed";
  if (shell(base + "b.csv > /dev/null 2>&1") != 0) return "sub-scale CLI rerun failed";
  if (shell("NCC_SIM_THREADS=1 " + base + "c.csv > /dev/null 2>&1") != 0)
    return "serial CLI run failed";
  const std::string a = slurp("acc_det_a.csv");
  const bool same = !a.empty() && a == slurp("acc_det_b.csv") && a == slurp("acc_det_c.csv");
  for (const char* p : {"acc_det_a.csv", "acc_det_b.csv", "acc_det_c.csv"}) std::remove(p);
  if (!same) return "CSV output is not byte-identical across reruns/thread counts";

  // full fig2 preset at desk scale inside the ten-minute budget
  const auto t0 = std::chrono::steady_clock::now();
  const int rc = shell(std::string(bin) +
                       " --preset fig2 --iters 200 --out acc_fig2.csv > /dev/null 2>&1");
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (rc != 0) return "fig2 preset run failed";
  const std::string fig2 = slurp("acc_fig2.csv");
  std::remove("acc_fig2.csv");
  std::size_t rows = 0;
  for (char ch : fig2) rows += (ch == '\n');
  if (rows != 71) return "fig2 CSV row count " + std::to_string(rows) + " != 71";
  std::ostringstream ss;
  ss << "fig2 desk scale in " << fmt(secs) << " s";
  note = ss.str();
  if (secs >= 600.0) return "fig2 preset exceeded the ten-minute budget: " + note;
  return "";
}

struct Criterion {
  int id;
  std::string title;
  double budget_s;  // 0 = no hard budget
  std::function<std::string(std::string&)> run;
};

}  // namespace

int main() {
  std::vector<Criterion> cs;
  cs.push_back({1, "field and codec property suites", 60.0,
                [](std::string&) { return criterion1(); }});
  cs.push_back({2, "noiseless transparency across all 20 cells", 60.0,
                [](std::string&) { return criterion2(); }});
  cs.push_back({3, "single-hop SER matches the analytic fading oracle", 120.0,
                [](std::string&) { return criterion3(); }});
  cs.push_back({4, "fig2 anchor: coded SER band and coding-gain ordering", 0.0,
                [](std::string& n) { return criterion4(n); }});
  cs.push_back({5, "scheme-2 never above scheme-1 under common randomness", 0.0,
                [](std::string& n) { return criterion5(n); }});
  cs.push_back({6, "theoretical throughput gains and diversity orders", 0.0,
                [](std::string&) { return criterion6(); }});
  cs.push_back({7, "outage identity and Bernoulli cross-check", 0.0,
                [](std::string&) { return criterion7(); }});
  cs.push_back({8, "determinism, thread invariance, fig2 time budget", 600.0,
                [](std::string& n) { return criterion8(n); }});

  int failures = 0;
  for (const Criterion& c : cs) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string note;
    std::string err;
    try {
      err = c.run(note);
    } catch (const std::exception& e) {
      err = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (err.empty() && c.budget_s > 0.0 && secs >= c.budget_s) {
      err = "runtime " + fmt(secs) + " s exceeded the " + fmt(c.budget_s) + " s budget";
    }
    std::ostringstream line;
    line << (err.empty() ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.title;
    if (!note.empty()) line << " -- " << note;
    if (!err.empty()) line << " -- " << err;
    line << " (" << fmt(secs) << " s)";
    std::cout << line.str() << std::endl;
    failures += !err.empty();
  }
  std::cout << "acceptance: " << (cs.size() - failures) << "/" << cs.size() << " criteria passed"
            << std::endl;
  return failures == 0 ? 0 : 1;
}
