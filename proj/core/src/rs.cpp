#include "nccsim/rs.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace nccsim {

RsCode::RsCode(const GfField& field, unsigned n, unsigned k)
    : field_(&field), n_(n), k_(k), t_((n - k) / 2) {
  // g(x) = (x - alpha)(x - alpha^2)...(x - alpha^(n-k)), ascending coeffs.
  gen_.assign(1, 1);
  for (unsigned i = 1; i <= n_ - k_; ++i) {
    const Gf root = field.exp(i);
    std::vector<Gf> next(gen_.size() + 1, 0);
    for (std::size_t j = 0; j < gen_.size(); ++j) {
      next[j + 1] ^= gen_[j];
      next[j] ^= field.mul(gen_[j], root);
    }
    gen_ = std::move(next);
  }
}

RsCode RsCode::make(unsigned q, unsigned n, unsigned k) {
  if (q < 3 || q > 16) {
    throw std::invalid_argument("RsCode: q must be in [3, 16], got " + std::to_string(q));
  }
  const unsigned order = 1u << q;
  if (!(0 < k && k < n && n < order + 2)) {
    throw std::invalid_argument("RsCode: parameters violate 0 < k < n < 2^q + 2 for q=" +
                                std::to_string(q) + ", n=" + std::to_string(n) +
                                ", k=" + std::to_string(k));
  }
  if (n != order - 1) {
    throw std::invalid_argument("RsCode: only the cyclic length n = 2^q - 1 is supported "
                                "(got n=" + std::to_string(n) + ", expected " +
                                std::to_string(order - 1) + ")");
  }
  return RsCode(GfField::of(q), n, k);
}

RsCode RsCode::validate_params(unsigned q, unsigned n, unsigned k, std::size_t frame_len) {
  RsCode code = make(q, n, k);
  if (k == 0 || frame_len % k != 0) {
    throw std::invalid_argument("RsCode: k=" + std::to_string(k) +
                                " does not divide frame length " + std::to_string(frame_len));
  }
  return code;
}

void RsCode::encode_block(std::span<const Gf> msg, std::span<Gf> out) const {
  if (msg.size() != k_ || out.size() != n_) {
    throw std::invalid_argument("RsCode::encode_block: bad block size");
  }
  const GfField& f = *field_;
  std::copy(msg.begin(), msg.end(), out.begin());
  std::fill(out.begin() + k_, out.end(), 0);

  // Long division of m(x) * x^(n-k) by g(x); out[k..n) ends as the remainder.
  const unsigned parity = n_ - k_;
  for (unsigned i = 0; i < k_; ++i) {
    const Gf c = out[i];
    if (c == 0) continue;
    out[i] = 0;
    for (unsigned j = 1; j <= parity; ++j) {
      out[i + j] = f.add(out[i + j], f.mul(c, gen_[parity - j]));
    }
  }
  std::copy(msg.begin(), msg.end(), out.begin());
}

std::vector<Gf> RsCode::encode(std::span<const Gf> msg) const {
  std::vector<Gf> out(n_);
  encode_block(msg, out);
  return out;
}

DecodeStatus RsCode::decode_block(std::span<const Gf> word, std::span<Gf> msg_out) const {
  if (word.size() != n_ || msg_out.size() != k_) {
    throw std::invalid_argument("RsCode::decode_block: bad block size");
  }
  const GfField& f = *field_;
  const unsigned two_t = n_ - k_;

  auto emit_systematic = [&](std::span<const Gf> w) {
    std::copy(w.begin(), w.begin() + k_, msg_out.begin());
  };

  // Syndromes S_i = r(alpha^i), i = 1..2t; word[0] is the x^(n-1) coefficient.
  std::vector<Gf> synd(two_t, 0);
  bool clean = true;
  for (unsigned i = 1; i <= two_t; ++i) {
    const Gf xi = f.exp(i);
    Gf acc = 0;
    for (const Gf w : word) acc = f.add(f.mul(acc, xi), w);
    synd[i - 1] = acc;
    clean = clean && acc == 0;
  }
  if (clean) {
    emit_systematic(word);
    return DecodeStatus::corrected(0);
  }

  // Berlekamp-Massey for the error locator Lambda(x).
  std::vector<Gf> lambda{1}, prev{1}, scratch;
  unsigned errors = 0;  // current L
  unsigned shift = 1;   // m
  Gf prev_delta = 1;    // b
  for (unsigned step = 0; step < two_t; ++step) {
    Gf delta = synd[step];
    for (unsigned i = 1; i < lambda.size() && i <= errors; ++i) {
      delta = f.add(delta, f.mul(lambda[i], synd[step - i]));
    }
    if (delta == 0) {
      ++shift;
      continue;
    }
    const Gf coef = f.div(delta, prev_delta);
    if (2 * errors <= step) {
      scratch = lambda;
      if (lambda.size() < prev.size() + shift) lambda.resize(prev.size() + shift, 0);
      for (std::size_t i = 0; i < prev.size(); ++i) {
        lambda[i + shift] = f.add(lambda[i + shift], f.mul(coef, prev[i]));
      }
      errors = step + 1 - errors;
      prev = std::move(scratch);
      prev_delta = delta;
      shift = 1;
    } else {
      if (lambda.size() < prev.size() + shift) lambda.resize(prev.size() + shift, 0);
      for (std::size_t i = 0; i < prev.size(); ++i) {
        lambda[i + shift] = f.add(lambda[i + shift], f.mul(coef, prev[i]));
      }
      ++shift;
    }
  }
  while (!lambda.empty() && lambda.back() == 0) lambda.pop_back();
  const unsigned degree = static_cast<unsigned>(lambda.size()) - 1;
  if (errors > t_ || degree != errors) {
    emit_systematic(word);
    return DecodeStatus::failed();
  }

  // Chien search: roots of Lambda at alpha^(-j) mark an error in the
  // coefficient of x^j, i.e. word index n-1-j.
  std::vector<unsigned> error_pos;  // polynomial positions j
  error_pos.reserve(errors);
  const unsigned nonzero = (1u << field_->q()) - 1;
  for (unsigned j = 0; j < n_; ++j) {
    const Gf x = f.exp(nonzero - (j % nonzero));  // alpha^(-j)
    Gf acc = 0;
    for (std::size_t i = lambda.size(); i-- > 0;) {
      acc = f.add(f.mul(acc, x), lambda[i]);
    }
    if (acc == 0) error_pos.push_back(j);
  }
  if (error_pos.size() != errors) {
    emit_systematic(word);
    return DecodeStatus::failed();
  }

  // Forney with fcr = 1: Omega = S(x) Lambda(x) mod x^(2t);
  // e_j = Omega(Xinv) / Lambda'(Xinv), Xinv = alpha^(-j).
  std::vector<Gf> omega(two_t, 0);
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] == 0) continue;
    for (std::size_t jj = 0; jj + i < two_t && jj < synd.size(); ++jj) {
      omega[i + jj] = f.add(omega[i + jj], f.mul(lambda[i], synd[jj]));
    }
  }

  std::vector<Gf> corrected_word(word.begin(), word.end());
  for (const unsigned j : error_pos) {
    const Gf xinv = f.exp(nonzero - (j % nonzero));
    Gf om = 0;
    for (std::size_t i = omega.size(); i-- > 0;) {
      om = f.add(f.mul(om, xinv), omega[i]);
    }
    Gf dl = 0;  // Lambda'(xinv); odd-degree terms only in characteristic 2
    Gf xpow = 1;
    for (std::size_t i = 1; i < lambda.size(); i += 2) {
      dl = f.add(dl, f.mul(lambda[i], xpow));
      xpow = f.mul(xpow, f.mul(xinv, xinv));
    }
    if (dl == 0) {
      emit_systematic(word);
      return DecodeStatus::failed();
    }
    const Gf magnitude = f.div(om, dl);
    if (magnitude == 0) {
      emit_systematic(word);
      return DecodeStatus::failed();
    }
    corrected_word[n_ - 1 - j] = f.add(corrected_word[n_ - 1 - j], magnitude);
  }

  emit_systematic(corrected_word);
  return DecodeStatus::corrected(static_cast<int>(errors));
}

std::pair<std::vector<Gf>, DecodeStatus> RsCode::decode(std::span<const Gf> word) const {
  std::vector<Gf> msg(k_);
  DecodeStatus st = decode_block(word, msg);
  return {std::move(msg), st};
}

std::vector<Gf> RsCode::encode_frame(std::span<const Gf> frame) const {
  if (frame.size() % k_ != 0) {
    throw std::invalid_argument("RsCode::encode_frame: frame length " +
                                std::to_string(frame.size()) + " is not a multiple of k=" +
                                std::to_string(k_));
  }
  const std::size_t blocks = frame.size() / k_;
  std::vector<Gf> out(blocks * n_);
  for (std::size_t b = 0; b < blocks; ++b) {
    encode_block(frame.subspan(b * k_, k_), std::span<Gf>(out).subspan(b * n_, n_));
  }
  return out;
}

std::pair<std::vector<Gf>, std::vector<DecodeStatus>> RsCode::decode_frame(
    std::span<const Gf> coded) const {
  if (coded.size() % n_ != 0) {
    throw std::invalid_argument("RsCode::decode_frame: frame length " +
                                std::to_string(coded.size()) + " is not a multiple of n=" +
                                std::to_string(n_));
  }
  const std::size_t blocks = coded.size() / n_;
  std::vector<Gf> out(blocks * k_);
  std::vector<DecodeStatus> statuses(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    statuses[b] = decode_block(coded.subspan(b * n_, n_),
                               std::span<Gf>(out).subspan(b * k_, k_));
  }
  return {std::move(out), std::move(statuses)};
}

}  // namespace nccsim
