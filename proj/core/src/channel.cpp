#include "nccsim/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace nccsim {

double snr_to_sigma2(double snr_db, double power) {
  if (!(power > 0.0)) throw std::invalid_argument("snr_to_sigma2: power must be positive");
  if (std::isinf(snr_db) && snr_db > 0) return 0.0;  // noiseless limit
  return power * std::pow(10.0, -snr_db / 10.0);
}

LinkBudget LinkBudget::from_snr(double power, double snr_db) {
  LinkBudget b;
  b.power = power;
  b.sigma2 = snr_to_sigma2(snr_db, power);
  b.sigma_h2 = 1.0;
  return b;
}

TxResult transmit(std::complex<double> x, const LinkBudget& budget, Prng& rng) {
  // Draw order (h first, then n) is fixed: scheme comparisons rely on paired
  // streams staying aligned sample for sample.
  std::complex<double> h = rng.next_cnormal(budget.sigma_h2);
  std::complex<double> n = rng.next_cnormal(budget.sigma2);
  TxResult r;
  r.y = propagate(x, h, n, budget.power);
  r.chan = ChannelRealization{h, budget.sigma2, budget.sigma_h2};
  return r;
}

std::complex<double> equalize(std::complex<double> y, std::complex<double> h,
                              EqualizerMode mode) {
  const double hp = std::norm(h);
  if (hp < kMinFadePower) return y;
  switch (mode) {
    case EqualizerMode::kZeroForcing:
      return y * std::conj(h) / hp;
    case EqualizerMode::kConjugateOnly:
      return y * std::conj(h);
  }
  return y;
}

double amp_factor(double p_src, double p_relay, std::complex<double> h, double sigma2) {
  if (!(p_src > 0.0) || !(p_relay > 0.0))
    throw std::invalid_argument("amp_factor: powers must be positive");
  const double denom = p_src * std::norm(h) + sigma2;
  if (!(denom > 0.0)) throw std::invalid_argument("amp_factor: zero denominator");
  return std::sqrt(p_relay / denom);
}

TxResult af_forward(std::complex<double> y_in, std::complex<double> h_in, double beta,
                    const LinkBudget& budget_out, Prng& rng, EqualizerMode mode) {
  const std::complex<double> xi = equalize(y_in, h_in, mode);
  return transmit(beta * xi, budget_out, rng);
}

}  // namespace nccsim
