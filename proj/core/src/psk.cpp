#include "nccsim/psk.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nccsim {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Snap components that are pure rounding residue (|v| ~ 1e-16) so that the
// axis points come out as exact (+-1, 0) / (0, +-1).
double snap(double v) { return std::abs(v) < 1e-12 ? 0.0 : v; }

Gf gray_encode(unsigned i) { return static_cast<Gf>(i ^ (i >> 1)); }

}  // namespace

PskConstellation::PskConstellation(unsigned order, SymbolMapping mapping)
    : order_(order), mapping_(mapping), sector_(2.0 * kPi / order) {
  if (order < 2 || (order & (order - 1)) != 0) {
    throw std::invalid_argument("PskConstellation: order must be a power of two, got " +
                                std::to_string(order));
  }
  points_.resize(order_);
  symbol_to_point_.assign(order_, 0);
  point_to_symbol_.assign(order_, 0);
  for (unsigned i = 0; i < order_; ++i) {
    const double phase = sector_ * i;
    points_[i] = {snap(std::cos(phase)), snap(std::sin(phase))};
    const Gf symbol = mapping_ == SymbolMapping::kGray ? gray_encode(i) : static_cast<Gf>(i);
    point_to_symbol_[i] = symbol;
    symbol_to_point_[symbol] = static_cast<Gf>(i);
  }
}

Sample PskConstellation::modulate(Gf symbol) const {
  if (symbol >= order_) {
    throw std::invalid_argument("PskConstellation: symbol " + std::to_string(symbol) +
                                " out of range for order " + std::to_string(order_));
  }
  return points_[symbol_to_point_[symbol]];
}

Gf PskConstellation::demodulate(Sample z) const {
  if (z.real() == 0.0 && z.imag() == 0.0) return 0;

  // Decide on the direction z/|z| rather than on z itself: distances taken
  // at the raw magnitude would absorb the constellation term once |z| is far
  // from 1 (AF chains can hand us samples scaled by many orders of
  // magnitude), while the decision must depend on phase alone.
  const double r = std::abs(z);
  const Sample u{z.real() / r, z.imag() / r};

  const double turns = std::atan2(u.imag(), u.real()) / sector_;
  const long lo = static_cast<long>(std::floor(turns));
  const unsigned a = static_cast<unsigned>((lo % static_cast<long>(order_) + order_) % order_);
  const unsigned b = (a + 1) % order_;
  const double da = std::norm(u - points_[a]);
  const double db = std::norm(u - points_[b]);
  if (da < db) return point_to_symbol_[a];
  if (db < da) return point_to_symbol_[b];
  return std::min(point_to_symbol_[a], point_to_symbol_[b]);
}

}  // namespace nccsim
