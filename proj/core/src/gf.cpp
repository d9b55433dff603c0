#include "nccsim/gf.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace nccsim {
namespace {

// Carry-less polynomial multiply followed by reduction modulo poly.
// Reference path used to cross-check the tables at construction.
Gf mul_shift_reduce(Gf a, Gf b, unsigned poly, unsigned q) {
  std::uint32_t acc = 0;
  std::uint32_t aa = a;
  std::uint32_t bb = b;
  while (bb) {
    if (bb & 1u) acc ^= aa;
    aa <<= 1;
    bb >>= 1;
  }
  for (int bit = static_cast<int>(2 * q - 2); bit >= static_cast<int>(q); --bit) {
    if (acc & (1u << bit)) acc ^= static_cast<std::uint32_t>(poly) << (bit - q);
  }
  return static_cast<Gf>(acc);
}

}  // namespace

GfField::GfField(unsigned q, unsigned primitive_poly)
    : q_(q), order_(1u << q), poly_(primitive_poly) {
  if (q < 2 || q > 16) {
    throw std::invalid_argument("GfField: q must be in [2, 16], got " + std::to_string(q));
  }
  if (primitive_poly >> q != 1u) {
    throw std::invalid_argument("GfField: primitive polynomial must have degree q");
  }

  const unsigned nonzero = order_ - 1;
  exp_.assign(2 * nonzero, 0);
  log_.assign(order_, 0);

  // alpha = x; repeated multiply-by-x with reduction generates the cycle.
  std::vector<bool> seen(order_, false);
  Gf x = 1;
  for (unsigned i = 0; i < nonzero; ++i) {
    if (x == 0 || x >= order_ || seen[x]) {
      throw std::invalid_argument("GfField: polynomial is not primitive over GF(2)");
    }
    seen[x] = true;
    exp_[i] = x;
    exp_[i + nonzero] = x;
    log_[x] = static_cast<std::uint16_t>(i);
    x = mul_shift_reduce(x, 2, poly_, q_);
  }
  if (x != 1) {
    throw std::invalid_argument("GfField: exponent cycle does not close; polynomial not primitive");
  }

  // Cross-check table multiply against shift-and-reduce. Exhaustive through
  // GF(256); sampled diagonally above that.
  if (order_ <= 256) {
    for (unsigned a = 0; a < order_; ++a) {
      for (unsigned b = 0; b < order_; ++b) {
        if (mul(static_cast<Gf>(a), static_cast<Gf>(b)) !=
            mul_shift_reduce(static_cast<Gf>(a), static_cast<Gf>(b), poly_, q_)) {
          throw std::logic_error("GfField: table multiply disagrees with shift-and-reduce");
        }
      }
    }
  } else {
    for (unsigned a = 1; a < order_; a += 7) {
      const Gf b = exp_[(a * 31) % nonzero];
      if (mul(static_cast<Gf>(a), b) != mul_shift_reduce(static_cast<Gf>(a), b, poly_, q_)) {
        throw std::logic_error("GfField: table multiply disagrees with shift-and-reduce");
      }
    }
  }
}

unsigned GfField::default_primitive_poly(unsigned q) {
  switch (q) {
    case 2: return 0b111;       // x^2+x+1
    case 3: return 0b1011;      // x^3+x+1
    case 4: return 0b10011;     // x^4+x+1
    case 5: return 0b100101;    // x^5+x^2+1
    case 6: return 0b1000011;   // x^6+x+1
    case 7: return 0b10001001;  // x^7+x^3+1
    case 8: return 0b100011101; // x^8+x^4+x^3+x^2+1
    default:
      throw std::invalid_argument("GfField: no default primitive polynomial for q=" +
                                  std::to_string(q));
  }
}

const GfField& GfField::of(unsigned q) {
  static std::mutex mu;
  static std::map<unsigned, std::unique_ptr<GfField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it == cache.end()) {
    it = cache.emplace(q, std::make_unique<GfField>(q, default_primitive_poly(q))).first;
  }
  return *it->second;
}

Gf GfField::inv(Gf a) const {
  if (a == 0) throw std::domain_error("GfField: inverse of zero");
  return exp_[(order_ - 1) - log_[a]];
}

unsigned GfField::log(Gf a) const {
  if (a == 0) throw std::domain_error("GfField: log of zero");
  return log_[a];
}

Gf GfField::pow(Gf a, unsigned e) const {
  if (a == 0) return e == 0 ? static_cast<Gf>(1) : static_cast<Gf>(0);
  const unsigned nonzero = order_ - 1;
  return exp_[(static_cast<std::uint64_t>(log_[a]) * e) % nonzero];
}

namespace {

const GfField& same_field_or_throw(GfSymbol a, GfSymbol b) {
  if (a.field == nullptr || b.field == nullptr) {
    throw std::invalid_argument("GfSymbol: unbound symbol");
  }
  if (!(*a.field == *b.field)) {
    throw std::invalid_argument("GfSymbol: operands belong to different fields");
  }
  return *a.field;
}

}  // namespace

GfSymbol gf_add(GfSymbol a, GfSymbol b) {
  const GfField& f = same_field_or_throw(a, b);
  return {f.add(a.value, b.value), a.field};
}

GfSymbol gf_mul(GfSymbol a, GfSymbol b) {
  const GfField& f = same_field_or_throw(a, b);
  return {f.mul(a.value, b.value), a.field};
}

GfSymbol gf_inv(GfSymbol a) {
  if (a.field == nullptr) throw std::invalid_argument("GfSymbol: unbound symbol");
  return {a.field->inv(a.value), a.field};
}

}  // namespace nccsim
