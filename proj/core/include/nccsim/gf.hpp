#pragma once

#include <cstdint>
#include <vector>

namespace nccsim {

/// Raw element value of a binary-extension field GF(2^q), q <= 16.
using Gf = std::uint16_t;

/// Arithmetic over GF(2^q) with table-driven multiply. Immutable after
/// construction; safe for unrestricted concurrent reads.
class GfField {
 public:
  /// Builds exp/log tables from the given primitive polynomial (bitmask with
  /// the degree-q bit set, e.g. 0b1011 for x^3+x+1). Throws
  /// std::invalid_argument if q is out of range or the polynomial is not
  /// primitive of degree q: the exponent table must visit every nonzero
  /// element exactly once. Table multiplication is cross-checked against
  /// shift-and-reduce at construction.
  GfField(unsigned q, unsigned primitive_poly);

  /// Shared canonical field for q in {2,...,8} with the conventional
  /// minimal-weight primitive polynomial (GF(8): x^3+x+1, GF(16): x^4+x+1,
  /// GF(32): x^5+x^2+1).
  static const GfField& of(unsigned q);

  static unsigned default_primitive_poly(unsigned q);

  unsigned q() const { return q_; }
  unsigned order() const { return order_; }
  unsigned primitive_poly() const { return poly_; }

  Gf add(Gf a, Gf b) const { return static_cast<Gf>(a ^ b); }

  Gf mul(Gf a, Gf b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[static_cast<unsigned>(log_[a]) + log_[b]];
  }

  /// Multiplicative inverse; throws std::domain_error for 0.
  Gf inv(Gf a) const;

  Gf div(Gf a, Gf b) const { return mul(a, inv(b)); }

  /// alpha^i for any non-negative i.
  Gf exp(unsigned i) const { return exp_[i % (order_ - 1)]; }

  /// Discrete log base alpha; throws std::domain_error for 0.
  unsigned log(Gf a) const;

  Gf pow(Gf a, unsigned e) const;

  /// The primitive element alpha = x used to generate the tables.
  Gf alpha() const { return exp_[1]; }

  bool operator==(const GfField& other) const {
    return q_ == other.q_ && poly_ == other.poly_;
  }

 private:
  unsigned q_;
  unsigned order_;
  unsigned poly_;
  std::vector<Gf> exp_;        // length 2(M-1), doubled to skip a modulo in mul
  std::vector<std::uint16_t> log_;  // length M; log_[0] unused
};

/// A field element bound to its field, for call sites where mixing fields is
/// a real hazard. Hot paths use raw Gf values plus a GfField reference.
struct GfSymbol {
  Gf value = 0;
  const GfField* field = nullptr;

  bool operator==(const GfSymbol& other) const {
    return value == other.value && field == other.field;
  }
};

/// Bit-level XOR; throws std::invalid_argument on field mismatch.
GfSymbol gf_add(GfSymbol a, GfSymbol b);
GfSymbol gf_mul(GfSymbol a, GfSymbol b);
GfSymbol gf_inv(GfSymbol a);

}  // namespace nccsim
