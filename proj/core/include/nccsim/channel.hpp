#pragma once

#include <complex>

#include "nccsim/rng.hpp"

namespace nccsim {

/// Receiver-side equalization applied with perfect CSI. ZeroForcing divides
/// by |h|^2 on top of conjugating; ConjugateOnly multiplies by conj(h) alone.
/// PSK hard decisions are identical under both (phase-only), the choice only
/// matters where the signal continues through another hop.
enum class EqualizerMode { kZeroForcing, kConjugateOnly };

/// Fading magnitudes with |h|^2 below this are treated as lost symbols: the
/// equalizer passes the sample through and callers count the event.
inline constexpr double kMinFadePower = 1e-30;

/// One drawn channel use: coefficient and the variances it was drawn under.
struct ChannelRealization {
  std::complex<double> h;
  double sigma2 = 0.0;    // complex noise variance E[|n|^2]
  double sigma_h2 = 1.0;  // fading variance E[|h|^2]
};

/// Transmit power plus the noise level of the link it feeds.
struct LinkBudget {
  double power = 1.0;
  double sigma2 = 0.0;
  double sigma_h2 = 1.0;

  static LinkBudget from_snr(double power, double snr_db);
};

/// sigma^2 = power * 10^(-snr_db/10); the nominal per-link SNR is P/sigma^2
/// under unit constellation energy and unit fading variance.
double snr_to_sigma2(double snr_db, double power);

/// Pure core of the link model: y = sqrt(P) * x * h + n.
inline std::complex<double> propagate(std::complex<double> x, std::complex<double> h,
                                      std::complex<double> n, double power) {
  return std::sqrt(power) * x * h + n;
}

struct TxResult {
  std::complex<double> y;
  ChannelRealization chan;
};

/// One channel use over a fast Rayleigh link: draws a fresh h ~ CN(0, sigma_h2)
/// and n ~ CN(0, sigma2), returns the received sample and the drawn h
/// (perfect CSI at the receiver).
TxResult transmit(std::complex<double> x, const LinkBudget& budget, Prng& rng);

/// Conjugate equalization; see EqualizerMode. Near-zero |h| passes y through.
std::complex<double> equalize(std::complex<double> y, std::complex<double> h,
                              EqualizerMode mode = EqualizerMode::kZeroForcing);

/// Amplify-and-forward gain: beta = sqrt(p_relay / (p_src |h|^2 + sigma2)).
/// Throws std::invalid_argument for non-positive powers or a zero denominator.
double amp_factor(double p_src, double p_relay, std::complex<double> h, double sigma2);

/// AF relay hop: y_out = sqrt(P_out) * beta * equalize(y_in, h_in) * h_out + n_out.
TxResult af_forward(std::complex<double> y_in, std::complex<double> h_in, double beta,
                    const LinkBudget& budget_out, Prng& rng,
                    EqualizerMode mode = EqualizerMode::kZeroForcing);

}  // namespace nccsim
