#include "nccsim/topology.hpp"

#include <bit>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>

#include "nccsim/netcode.hpp"

namespace nccsim {

unsigned pair_count(Topology t) {
  switch (t) {
    case Topology::kX:
    case Topology::kButterfly:
      return 2;
    case Topology::kExtendedX:
    case Topology::kExtendedButterfly:
      return 4;
  }
  return 0;
}

unsigned relay_count(Topology t) {
  switch (t) {
    case Topology::kX:
    case Topology::kExtendedX:
      return 1;
    case Topology::kButterfly:
    case Topology::kExtendedButterfly:
      return 2;
  }
  return 0;
}

bool scenario_uses_rs(Scenario s) {
  return s == Scenario::kDirectAfRs || s == Scenario::kNccRsScheme1 ||
         s == Scenario::kNccRsScheme2;
}

bool scenario_is_ncc(Scenario s) {
  return s == Scenario::kNccUncoded || s == Scenario::kNccRsScheme1 ||
         s == Scenario::kNccRsScheme2;
}

std::string to_string(Topology t) {
  switch (t) {
    case Topology::kX:
      return "x";
    case Topology::kExtendedX:
      return "ext-x";
    case Topology::kButterfly:
      return "butterfly";
    case Topology::kExtendedButterfly:
      return "ext-butterfly";
  }
  return "?";
}

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::kDirectAf:
      return "direct";
    case Scenario::kDirectAfRs:
      return "direct-rs";
    case Scenario::kNccUncoded:
      return "ncc";
    case Scenario::kNccRsScheme1:
      return "scheme1";
    case Scenario::kNccRsScheme2:
      return "scheme2";
  }
  return "?";
}

Topology parse_topology(std::string_view name) {
  if (name == "x") return Topology::kX;
  if (name == "ext-x" || name == "extended-x") return Topology::kExtendedX;
  if (name == "butterfly") return Topology::kButterfly;
  if (name == "ext-butterfly" || name == "extended-butterfly")
    return Topology::kExtendedButterfly;
  throw std::invalid_argument("unknown topology: " + std::string(name));
}

Scenario parse_scenario(std::string_view name) {
  if (name == "direct") return Scenario::kDirectAf;
  if (name == "direct-rs") return Scenario::kDirectAfRs;
  if (name == "ncc") return Scenario::kNccUncoded;
  if (name == "scheme1") return Scenario::kNccRsScheme1;
  if (name == "scheme2") return Scenario::kNccRsScheme2;
  throw std::invalid_argument("unknown scenario: " + std::string(name));
}

Ratio make_ratio(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("ratio: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long long g = std::gcd(num, den);
  return Ratio{g ? num / g : num, g ? den / g : den};
}

TopologyMetrics theoretical_metrics(Topology t, unsigned n_pairs) {
  if (n_pairs < 2)
    throw std::invalid_argument("theoretical_metrics: at least 2 pairs required");
  const long long n = n_pairs;
  switch (t) {
    case Topology::kX:
      return {make_ratio(4, 3), 2};
    case Topology::kExtendedX:
      return {make_ratio(2 * n, n + 1), n_pairs};
    case Topology::kButterfly:
      return {make_ratio(3, 2), 2};
    case Topology::kExtendedButterfly:
      return {make_ratio(3 * n, n + 2), n_pairs};
  }
  throw std::invalid_argument("theoretical_metrics: unknown topology");
}

double outage_probability(double p1, double p2, double pR) {
  for (double p : {p1, p2, pR}) {
    if (!(p >= 0.0) || !(p <= 1.0))
      throw std::invalid_argument("outage_probability: rates must lie in [0, 1]");
  }
  return p1 * p2 + p1 * pR + p2 * pR - 2.0 * p1 * p2 * pR;
}

std::size_t slots_per_frame(Topology t, Scenario s) {
  const std::size_t n = pair_count(t);
  const std::size_t r = relay_count(t);
  return scenario_is_ncc(s) ? n + r : n * (1 + r);
}

void validate_frame_config(const FrameConfig& cfg) {
  if (cfg.psk == nullptr)
    throw std::invalid_argument("frame config: constellation is required");
  const unsigned m = cfg.psk->order();
  if (m != 8 && m != 16 && m != 32)
    throw std::invalid_argument("frame config: constellation order must be 8, 16, or 32");
  if (cfg.frame_len == 0)
    throw std::invalid_argument("frame config: frame length must be positive");
  if (scenario_uses_rs(cfg.scenario)) {
    if (cfg.rs == nullptr)
      throw std::invalid_argument("frame config: RS scenarios require a code");
    if (cfg.rs->field().order() != m)
      throw std::invalid_argument(
          "frame config: RS field order must equal the constellation order");
    if (cfg.frame_len % cfg.rs->k() != 0)
      throw std::invalid_argument("frame config: frame length must be divisible by k");
  }
  if (!cfg.source_powers.empty() &&
      cfg.source_powers.size() != pair_count(cfg.topology))
    throw std::invalid_argument(
        "frame config: source power list must match the pair count");
  for (double p : cfg.source_powers) {
    if (!(p > 0.0))
      throw std::invalid_argument("frame config: source powers must be positive");
  }
  if (!(cfg.relay_power > 0.0) || !(cfg.relay2_power > 0.0))
    throw std::invalid_argument("frame config: relay powers must be positive");
}

namespace {

// Received frame on one link: per-symbol samples and the fading draws,
// together with the sending side's budget (needed for the AF gain).
struct Obs {
  std::vector<Sample> y;
  std::vector<Sample> h;
  double tx_power = 1.0;
  double sigma2 = 0.0;
};

std::vector<Gf> random_frame(std::size_t len, unsigned bits, Prng& rng) {
  std::vector<Gf> f(len);
  for (Gf& s : f) s = static_cast<Gf>(rng.next_bits(bits));
  return f;
}

Obs send_frame(std::span<const Gf> syms, const PskConstellation& psk,
               const LinkBudget& b, Prng& rng, std::uint64_t& zero_fades) {
  Obs o;
  o.y.resize(syms.size());
  o.h.resize(syms.size());
  o.tx_power = b.power;
  o.sigma2 = b.sigma2;
  for (std::size_t t = 0; t < syms.size(); ++t) {
    const TxResult r = transmit(psk.modulate(syms[t]), b, rng);
    o.y[t] = r.y;
    o.h[t] = r.chan.h;
    if (std::norm(r.chan.h) < kMinFadePower) ++zero_fades;
  }
  return o;
}

Obs af_relay_frame(const Obs& in, const LinkBudget& out, Prng& rng, EqualizerMode eq,
                   std::uint64_t& zero_fades) {
  Obs o;
  o.y.resize(in.y.size());
  o.h.resize(in.y.size());
  o.tx_power = out.power;
  o.sigma2 = out.sigma2;
  for (std::size_t t = 0; t < in.y.size(); ++t) {
    const double beta = amp_factor(in.tx_power, out.power, in.h[t], in.sigma2);
    const TxResult r = af_forward(in.y[t], in.h[t], beta, out, rng, eq);
    o.y[t] = r.y;
    o.h[t] = r.chan.h;
    if (std::norm(r.chan.h) < kMinFadePower) ++zero_fades;
  }
  return o;
}

std::vector<Gf> demod_frame(const Obs& o, const PskConstellation& psk, EqualizerMode eq) {
  std::vector<Gf> out(o.y.size());
  for (std::size_t t = 0; t < o.y.size(); ++t)
    out[t] = psk.demodulate(equalize(o.y[t], o.h[t], eq));
  return out;
}

std::uint64_t mismatches(std::span<const Gf> a, std::span<const Gf> b) {
  std::uint64_t e = 0;
  for (std::size_t i = 0; i < a.size(); ++i) e += a[i] != b[i];
  return e;
}

struct Pipeline {
  const FrameConfig& cfg;
  const PskConstellation& psk;
  unsigned n_pairs;
  bool two_relay;
  const StreamProvider& streams;
  FrameResult fr;

  Pipeline(const FrameConfig& c, unsigned n, bool two, const StreamProvider& sp)
      : cfg(c), psk(*c.psk), n_pairs(n), two_relay(two), streams(sp) {}

  LinkBudget source_budget(unsigned i) const {
    const double p = cfg.source_powers.empty() ? 1.0 : cfg.source_powers[i];
    return LinkBudget::from_snr(p, cfg.snr_db);
  }
  LinkBudget relay_budget() const {
    return LinkBudget::from_snr(cfg.relay_power, cfg.snr_db);
  }
  LinkBudget relay2_budget() const {
    return LinkBudget::from_snr(cfg.relay2_power, cfg.snr_db);
  }

  void draw_messages() {
    const unsigned bits = static_cast<unsigned>(std::bit_width(psk.order()) - 1);
    fr.sent.resize(n_pairs);
    fr.recovered.resize(n_pairs);
    for (unsigned i = 0; i < n_pairs; ++i) {
      Prng mr = streams(link_id(LinkKind::kMessage, i));
      fr.sent[i] = random_frame(cfg.frame_len, bits, mr);
    }
  }

  std::uint64_t count_failures(std::span<const DecodeStatus> sts) const {
    std::uint64_t f = 0;
    for (const DecodeStatus& st : sts) f += !st.ok;
    return f;
  }

  // Non-cooperative chain: each pair is served through the relay (or the two
  // relays in series) with plain amplify-and-forward, one unicast at a time.
  void run_direct() {
    const bool coded = cfg.scenario == Scenario::kDirectAfRs;
    // In the two-relay forms every pair's signal crosses the same inter-relay
    // link; one stream supplies its fading and noise across the whole frame.
    std::optional<Prng> rr;
    if (two_relay) rr.emplace(streams(link_id(LinkKind::kRelayRelay)));
    for (unsigned i = 0; i < n_pairs; ++i) {
      const std::vector<Gf> tx = coded ? cfg.rs->encode_frame(fr.sent[i]) : fr.sent[i];
      Prng up = streams(link_id(LinkKind::kUplink, i));
      Obs o = send_frame(tx, psk, source_budget(i), up, fr.diag.zero_fades);
      if (two_relay) {
        o = af_relay_frame(o, relay_budget(), *rr, cfg.equalizer, fr.diag.zero_fades);
      }
      Prng dn = streams(link_id(LinkKind::kDownlink, 0, i));
      const LinkBudget last = two_relay ? relay2_budget() : relay_budget();
      o = af_relay_frame(o, last, dn, cfg.equalizer, fr.diag.zero_fades);
      std::vector<Gf> rx = demod_frame(o, psk, cfg.equalizer);
      if (coded) {
        auto [msg, sts] = cfg.rs->decode_frame(rx);
        fr.diag.rs_failures += count_failures(sts);
        fr.recovered[i] = std::move(msg);
      } else {
        fr.recovered[i] = std::move(rx);
      }
      fr.slots += two_relay ? 3 : 2;
    }
  }

  // Cooperative chain: MAC phase (every source broadcasts, heard by the NC
  // relay and by all other destinations), relay combining, broadcast phase,
  // and per-destination extraction.
  void run_ncc() {
    const Scenario sc = cfg.scenario;
    const bool scheme1 = sc == Scenario::kNccRsScheme1;
    const bool scheme2 = sc == Scenario::kNccRsScheme2;
    const bool coded = scheme1 || scheme2;
    fr.diag.uplinks.resize(n_pairs);

    std::vector<std::vector<Gf>> tx(n_pairs);
    for (unsigned i = 0; i < n_pairs; ++i)
      tx[i] = coded ? cfg.rs->encode_frame(fr.sent[i]) : fr.sent[i];

    // MAC phase, one slot per source. The broadcast reaches each receiver
    // over its own independent channel.
    std::vector<Obs> up(n_pairs);
    std::vector<std::vector<Obs>> cross(n_pairs, std::vector<Obs>(n_pairs));
    for (unsigned i = 0; i < n_pairs; ++i) {
      Prng ur = streams(link_id(LinkKind::kUplink, i));
      up[i] = send_frame(tx[i], psk, source_budget(i), ur, fr.diag.zero_fades);
      for (unsigned j = 0; j < n_pairs; ++j) {
        if (j == i) continue;
        Prng cr = streams(link_id(LinkKind::kCross, i, j));
        cross[i][j] = send_frame(tx[i], psk, source_budget(i), cr, fr.diag.zero_fades);
      }
      fr.slots += 1;
    }

    // NC relay: hard demodulation, then per scheme either a straight XOR of
    // the (possibly coded) symbol frames or decode / XOR messages / re-encode.
    std::vector<std::vector<Gf>> r_hat(n_pairs);
    for (unsigned i = 0; i < n_pairs; ++i) {
      r_hat[i] = demod_frame(up[i], psk, cfg.equalizer);
      fr.diag.uplinks[i].errors += mismatches(r_hat[i], tx[i]);
      fr.diag.uplinks[i].symbols += tx[i].size();
    }
    std::vector<Gf> bcast;
    if (scheme2) {
      std::vector<std::vector<Gf>> msgs(n_pairs);
      for (unsigned i = 0; i < n_pairs; ++i) {
        auto [m, sts] = cfg.rs->decode_frame(r_hat[i]);
        fr.diag.rs_failures += count_failures(sts);
        msgs[i] = std::move(m);
      }
      bcast = cfg.rs->encode_frame(nc_combine_frames(msgs));
    } else {
      bcast = nc_combine_frames(r_hat);
    }

    // Broadcast phase. Single-relay forms remodulate and send directly; the
    // butterfly forms first hop R1 -> R2, then R2 amplifies and forwards the
    // equalized signal to every destination.
    std::vector<Obs> down(n_pairs);
    if (two_relay) {
      Prng rr = streams(link_id(LinkKind::kRelayRelay));
      const Obs o_rr = send_frame(bcast, psk, relay_budget(), rr, fr.diag.zero_fades);
      fr.slots += 1;
      for (unsigned j = 0; j < n_pairs; ++j) {
        Prng dr = streams(link_id(LinkKind::kDownlink, 0, j));
        down[j] = af_relay_frame(o_rr, relay2_budget(), dr, cfg.equalizer,
                                 fr.diag.zero_fades);
      }
      fr.slots += 1;
    } else {
      for (unsigned j = 0; j < n_pairs; ++j) {
        Prng dr = streams(link_id(LinkKind::kDownlink, 0, j));
        down[j] = send_frame(bcast, psk, relay_budget(), dr, fr.diag.zero_fades);
      }
      fr.slots += 1;
    }

    // Destinations. Each D_j combines the relay observation with the
    // overheard transmissions of every other source.
    for (unsigned j = 0; j < n_pairs; ++j) {
      std::vector<Gf> relay_word = demod_frame(down[j], psk, cfg.equalizer);
      fr.diag.relay_bcast.errors += mismatches(relay_word, bcast);
      fr.diag.relay_bcast.symbols += bcast.size();
      if (scheme2) {
        auto [acc, st0] = cfg.rs->decode_frame(relay_word);
        fr.diag.rs_failures += count_failures(st0);
        for (unsigned i = 0; i < n_pairs; ++i) {
          if (i == j) continue;
          auto [mi, sti] =
              cfg.rs->decode_frame(demod_frame(cross[i][j], psk, cfg.equalizer));
          fr.diag.rs_failures += count_failures(sti);
          nc_xor_into(acc, mi);
        }
        fr.recovered[j] = std::move(acc);
      } else {
        std::vector<Gf> acc = std::move(relay_word);
        for (unsigned i = 0; i < n_pairs; ++i) {
          if (i == j) continue;
          nc_xor_into(acc, demod_frame(cross[i][j], psk, cfg.equalizer));
        }
        if (scheme1) {
          auto [msg, sts] = cfg.rs->decode_frame(acc);
          fr.diag.rs_failures += count_failures(sts);
          fr.recovered[j] = std::move(msg);
        } else {
          fr.recovered[j] = std::move(acc);
        }
      }
    }
  }

  FrameResult run() {
    draw_messages();
    if (scenario_is_ncc(cfg.scenario)) {
      run_ncc();
    } else {
      run_direct();
    }
    return std::move(fr);
  }
};

FrameResult run_shape(const FrameConfig& cfg, Topology expected,
                      const StreamProvider& streams) {
  if (cfg.topology != expected)
    throw std::invalid_argument("frame config: topology does not match the pipeline");
  validate_frame_config(cfg);
  Pipeline p(cfg, pair_count(expected), relay_count(expected) == 2, streams);
  return p.run();
}

}  // namespace

FrameResult run_frame_x(const FrameConfig& cfg, const StreamProvider& streams) {
  return run_shape(cfg, Topology::kX, streams);
}

FrameResult run_frame_extended_x(const FrameConfig& cfg, const StreamProvider& streams) {
  return run_shape(cfg, Topology::kExtendedX, streams);
}

FrameResult run_frame_butterfly(const FrameConfig& cfg, const StreamProvider& streams) {
  return run_shape(cfg, Topology::kButterfly, streams);
}

FrameResult run_frame_extended_butterfly(const FrameConfig& cfg,
                                         const StreamProvider& streams) {
  return run_shape(cfg, Topology::kExtendedButterfly, streams);
}

FrameResult run_frame(const FrameConfig& cfg, const StreamProvider& streams) {
  return run_shape(cfg, cfg.topology, streams);
}

}  // namespace nccsim
