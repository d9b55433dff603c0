#pragma once

#include <complex>
#include <vector>

#include "nccsim/gf.hpp"

namespace nccsim {

using Sample = std::complex<double>;

/// Symbol-to-point labeling. Natural maps symbol i onto phase 2*pi*i/M and is
/// the default; Gray makes adjacent constellation points differ in one bit.
enum class SymbolMapping { kNatural, kGray };

/// M-PSK constellation of unit-magnitude points, the M-th roots of unity.
/// Mapping is a bijection over [0, M). Immutable; concurrent use is safe.
class PskConstellation {
 public:
  explicit PskConstellation(unsigned order, SymbolMapping mapping = SymbolMapping::kNatural);

  unsigned order() const { return order_; }
  SymbolMapping mapping() const { return mapping_; }
  const std::vector<Sample>& points() const { return points_; }

  /// Symbol -> constellation point; throws std::invalid_argument when the
  /// symbol value is outside [0, M).
  Sample modulate(Gf symbol) const;

  /// Hard decision: symbol whose point is nearest to z (equivalently the
  /// phase sector of width 2*pi/M containing z). Exact sector boundaries
  /// resolve to the lower symbol index; z == 0 falls back to symbol 0.
  Gf demodulate(Sample z) const;

 private:
  unsigned order_;
  SymbolMapping mapping_;
  double sector_;                      // 2*pi/M
  std::vector<Sample> points_;         // by point index
  std::vector<Gf> symbol_to_point_;
  std::vector<Gf> point_to_symbol_;
};

}  // namespace nccsim
