#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "nccsim/gf.hpp"

namespace nccsim {

/// XOR network coding over GF(2^q) symbols. The combiner is its own inverse,
/// so the same fold serves encoding and extraction.

/// XOR-fold of a nonempty list of symbols from one field.
inline GfSymbol nc_combine(std::span<const GfSymbol> symbols) {
  if (symbols.empty()) {
    throw std::invalid_argument("nc_combine: empty symbol list");
  }
  GfSymbol acc = symbols.front();
  for (std::size_t i = 1; i < symbols.size(); ++i) {
    acc = gf_add(acc, symbols[i]);
  }
  return acc;
}

/// Recovers the remaining flow from a combined symbol and the other flows.
inline GfSymbol nc_extract(GfSymbol nc_symbol, std::span<const GfSymbol> others) {
  GfSymbol acc = nc_symbol;
  for (const GfSymbol& s : others) acc = gf_add(acc, s);
  return acc;
}

/// Raw-value fold for frame pipelines (field checked upstream).
inline Gf nc_combine_raw(std::span<const Gf> symbols) {
  Gf acc = 0;
  for (const Gf s : symbols) acc = static_cast<Gf>(acc ^ s);
  return acc;
}

/// Positionwise XOR of equally sized frames.
inline std::vector<Gf> nc_combine_frames(std::span<const std::vector<Gf>> frames) {
  if (frames.empty()) {
    throw std::invalid_argument("nc_combine_frames: empty frame list");
  }
  const std::size_t len = frames.front().size();
  for (const auto& f : frames) {
    if (f.size() != len) {
      throw std::invalid_argument("nc_combine_frames: ragged frame lengths");
    }
  }
  std::vector<Gf> out(frames.front());
  for (std::size_t fi = 1; fi < frames.size(); ++fi) {
    for (std::size_t p = 0; p < len; ++p) out[p] = static_cast<Gf>(out[p] ^ frames[fi][p]);
  }
  return out;
}

/// In-place positionwise XOR: acc ^= other.
inline void nc_xor_into(std::span<Gf> acc, std::span<const Gf> other) {
  if (acc.size() != other.size()) {
    throw std::invalid_argument("nc_xor_into: frame length mismatch");
  }
  for (std::size_t p = 0; p < acc.size(); ++p) acc[p] = static_cast<Gf>(acc[p] ^ other[p]);
}

}  // namespace nccsim
