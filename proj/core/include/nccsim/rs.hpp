#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "nccsim/gf.hpp"

namespace nccsim {

/// Outcome of one bounded-distance decode.
struct DecodeStatus {
  bool ok = false;       // true when decoded to a codeword (possibly 0 fixes)
  int corrections = 0;   // symbols changed when ok

  static DecodeStatus corrected(int e) { return {true, e}; }
  static DecodeStatus failed() { return {false, 0}; }
};

/// Systematic Reed-Solomon code over GF(2^q) with n = 2^q - 1 and
/// t = floor((n-k)/2). Generator polynomial has roots alpha^1 .. alpha^(n-k).
/// Immutable after construction; encode/decode are pure.
class RsCode {
 public:
  /// Validates (q, n, k) against 0 < k < n < 2^q + 2 and k | frame_len, and
  /// builds the generator polynomial. Only the cyclic length n = 2^q - 1 is
  /// implemented; any other admissible n is rejected with a parameter error
  /// naming the constraint. Errors are std::invalid_argument.
  static RsCode validate_params(unsigned q, unsigned n, unsigned k, std::size_t frame_len);

  /// Same checks minus the frame-length divisibility (for callers that bind
  /// the frame length later).
  static RsCode make(unsigned q, unsigned n, unsigned k);

  const GfField& field() const { return *field_; }
  unsigned n() const { return n_; }
  unsigned k() const { return k_; }
  unsigned t() const { return t_; }

  /// Generator polynomial coefficients, ascending degree; back() == 1.
  const std::vector<Gf>& generator() const { return gen_; }

  /// Systematic encode: codeword[0..k) = msg, codeword[k..n) = parity.
  std::vector<Gf> encode(std::span<const Gf> msg) const;

  /// Bounded-distance decode. With <= t symbol errors returns the
  /// transmitted message and corrected(e). On detected failure returns the
  /// first k received symbols unchanged and failed(); never throws for
  /// well-sized input.
  std::pair<std::vector<Gf>, DecodeStatus> decode(std::span<const Gf> word) const;

  /// Per-block encode of a frame whose length is a multiple of k.
  std::vector<Gf> encode_frame(std::span<const Gf> frame) const;

  /// Per-block decode of a coded frame whose length is a multiple of n.
  std::pair<std::vector<Gf>, std::vector<DecodeStatus>> decode_frame(
      std::span<const Gf> coded) const;

  /// In-place block primitives used by the frame pipelines; out must have
  /// the exact block size (n for encode_block, k for decode_block).
  void encode_block(std::span<const Gf> msg, std::span<Gf> out) const;
  DecodeStatus decode_block(std::span<const Gf> word, std::span<Gf> msg_out) const;

 private:
  RsCode(const GfField& field, unsigned n, unsigned k);

  const GfField* field_;
  unsigned n_, k_, t_;
  std::vector<Gf> gen_;
};

}  // namespace nccsim
