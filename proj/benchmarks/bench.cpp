#include <benchmark/benchmark.h>

#include <vector>

#include "nccsim/channel.hpp"
#include "nccsim/gf.hpp"
#include "nccsim/montecarlo.hpp"
#include "nccsim/psk.hpp"
#include "nccsim/rng.hpp"
#include "nccsim/rs.hpp"
#include "nccsim/topology.hpp"

using namespace nccsim;

namespace {

std::vector<Gf> random_frame(std::size_t len, unsigned bits, std::uint64_t seed) {
  Prng rng(seed);
  std::vector<Gf> f(len);
  for (Gf& s : f) s = static_cast<Gf>(rng.next_bits(bits));
  return f;
}

void BM_GfMul(benchmark::State& state) {
  const GfField& f = GfField::of(5);
  Prng rng(1);
  std::vector<Gf> a(1024), b(1024);
  for (int i = 0; i < 1024; ++i) {
    a[i] = static_cast<Gf>(rng.next_bits(5));
    b[i] = static_cast<Gf>(rng.next_bits(5));
  }
  for (auto _ : state) {
    Gf acc = 0;
    for (int i = 0; i < 1024; ++i) acc = static_cast<Gf>(acc ^ f.mul(a[i], b[i]));
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(BM_GfMul);

void BM_RsEncodeFrame(benchmark::State& state) {
  const unsigned q = static_cast<unsigned>(state.range(0));
  const unsigned n = (1u << q) - 1;
  const unsigned k = q == 3 ? 2 : q == 4 ? 5 : 10;
  const RsCode code = RsCode::make(q, n, k);
  const std::vector<Gf> frame = random_frame(100 * k, q, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(code.encode_frame(frame));
  }
  state.SetItemsProcessed(state.iterations() * frame.size());
}
BENCHMARK(BM_RsEncodeFrame)->Arg(3)->Arg(4)->Arg(5);

void BM_RsDecodeFrame(benchmark::State& state) {
  const unsigned q = static_cast<unsigned>(state.range(0));
  const unsigned n = (1u << q) - 1;
  const unsigned k = q == 3 ? 2 : q == 4 ? 5 : 10;
  const RsCode code = RsCode::make(q, n, k);
  std::vector<Gf> coded = code.encode_frame(random_frame(100 * k, q, 3));
  // half the blocks carry t errors, the rest are clean
  Prng rng(4);
  for (unsigned b = 0; b < 100; b += 2) {
    for (unsigned e = 0; e < code.t(); ++e) {
      Gf d = 0;
      while (!d) d = static_cast<Gf>(rng.next_bits(q));
      coded[b * n + e * 2] = static_cast<Gf>(coded[b * n + e * 2] ^ d);
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(code.decode_frame(coded));
  }
  state.SetItemsProcessed(state.iterations() * coded.size());
}
BENCHMARK(BM_RsDecodeFrame)->Arg(3)->Arg(4)->Arg(5);

void BM_PskModDemod(benchmark::State& state) {
  const PskConstellation psk(static_cast<unsigned>(state.range(0)));
  const unsigned bits = state.range(0) == 8 ? 3 : state.range(0) == 16 ? 4 : 5;
  const std::vector<Gf> syms = random_frame(1024, bits, 6);
  for (auto _ : state) {
    Gf acc = 0;
    for (const Gf s : syms) acc = static_cast<Gf>(acc ^ psk.demodulate(psk.modulate(s)));
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * syms.size());
}
BENCHMARK(BM_PskModDemod)->Arg(8)->Arg(16)->Arg(32);

void BM_FadingLinkSymbol(benchmark::State& state) {
  const PskConstellation psk(16);
  const LinkBudget b = LinkBudget::from_snr(1.0, 12.0);
  Prng rng(7);
  Gf s = 3;
  for (auto _ : state) {
    const TxResult r = transmit(psk.modulate(s), b, rng);
    s = psk.demodulate(equalize(r.y, r.chan.h));
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_FadingLinkSymbol);

void BM_RunFrame(benchmark::State& state) {
  const PskConstellation psk(16);
  const RsCode rs = RsCode::make(4, 15, 5);
  FrameConfig cfg;
  cfg.topology = static_cast<Topology>(state.range(0));
  cfg.scenario = Scenario::kNccRsScheme2;
  cfg.psk = &psk;
  cfg.rs = &rs;
  cfg.frame_len = 1000;
  cfg.snr_db = 14.0;
  std::uint32_t frame = 0;
  for (auto _ : state) {
    const StreamProvider sp = [frame](std::uint32_t link) {
      return derive_stream(9, 0, frame, link);
    };
    benchmark::DoNotOptimize(run_frame(cfg, sp));
    ++frame;
  }
  state.SetItemsProcessed(state.iterations() * cfg.frame_len * pair_count(cfg.topology));
}
BENCHMARK(BM_RunFrame)
    ->Arg(static_cast<int>(Topology::kX))
    ->Arg(static_cast<int>(Topology::kExtendedButterfly));

void BM_EstimateSerPoint(benchmark::State& state) {
  ScenarioConfig cfg;
  cfg.topology = Topology::kX;
  cfg.scenario = Scenario::kNccRsScheme2;
  cfg.m = 16;
  cfg.rs = RsParams{15, 5};
  cfg.frame_len = 1000;
  cfg.iterations = 20;
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_ser(cfg, 14.0));
  }
  state.SetItemsProcessed(state.iterations() * cfg.iterations * cfg.frame_len * 2);
}
BENCHMARK(BM_EstimateSerPoint);

}  // namespace

BENCHMARK_MAIN();
