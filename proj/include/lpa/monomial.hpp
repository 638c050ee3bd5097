#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#ifndef LPA_MONOMIAL_WORDS
#define LPA_MONOMIAL_WORDS 2
#endif

namespace lpa {

// Dense exponent vector packed into bytes: byte 0 holds the total degree and
// byte 1+v the exponent of variable v. Words are compared most significant
// first, so the natural order of the packed key is graded-lex with x_0 > x_1 > ...
class Monomial {
 public:
  static constexpr std::size_t kWords = LPA_MONOMIAL_WORDS;
  static constexpr std::size_t kBytes = 8 * kWords;
  static constexpr std::size_t kMaxVars = kBytes - 1;
  static constexpr unsigned kMaxDegree = 255;

  Monomial() { w_.fill(0); }

  static Monomial from_exponents(std::span<const unsigned> exps) {
    if (exps.size() > kMaxVars) throw std::length_error("too many variables for Monomial");
    Monomial m;
    unsigned d = 0;
    for (std::size_t v = 0; v < exps.size(); ++v) {
      if (exps[v] > kMaxDegree) throw std::overflow_error("exponent too large");
      m.set_byte(1 + v, exps[v]);
      d += exps[v];
    }
    if (d > kMaxDegree) throw std::overflow_error("degree too large");
    m.set_byte(0, d);
    return m;
  }
  static Monomial variable(std::size_t v, unsigned power = 1) {
    if (v >= kMaxVars) throw std::out_of_range("variable index");
    Monomial m;
    m.set_byte(1 + v, power);
    m.set_byte(0, power);
    return m;
  }

  unsigned degree() const { return byte(0); }
  unsigned exponent(std::size_t v) const { return byte(1 + v); }
  std::vector<unsigned> exponents(std::size_t nvars) const {
    std::vector<unsigned> e(nvars);
    for (std::size_t v = 0; v < nvars; ++v) e[v] = exponent(v);
    return e;
  }
  // Highest variable index with nonzero exponent plus one.
  std::size_t support_end() const {
    for (std::size_t v = kMaxVars; v-- > 0;)
      if (exponent(v) != 0) return v + 1;
    return 0;
  }

  Monomial operator*(const Monomial& o) const {
    if (degree() + o.degree() > kMaxDegree) throw std::overflow_error("degree too large");
    Monomial r;
    for (std::size_t k = 0; k < kWords; ++k) r.w_[k] = w_[k] + o.w_[k];
    return r;
  }
  bool divisible_by_var(std::size_t v) const { return exponent(v) != 0; }
  // Divides by x_v (caller checks divisibility).
  Monomial div_var(std::size_t v) const {
    Monomial r = *this;
    r.set_byte(1 + v, exponent(v) - 1);
    r.set_byte(0, degree() - 1);
    return r;
  }
  Monomial mul_var(std::size_t v) const {
    if (degree() >= kMaxDegree) throw std::overflow_error("degree too large");
    Monomial r = *this;
    r.set_byte(1 + v, exponent(v) + 1);
    r.set_byte(0, degree() + 1);
    return r;
  }
  // Product over variables of exponents, restricted to a subset.
  bool divides(const Monomial& o) const {
    for (std::size_t v = 0; v < kMaxVars; ++v)
      if (exponent(v) > o.exponent(v)) return false;
    return true;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.w_ == b.w_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return a.w_ != b.w_; }
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.w_ < b.w_; }
  friend bool operator>(const Monomial& a, const Monomial& b) { return b.w_ < a.w_; }
  friend bool operator<=(const Monomial& a, const Monomial& b) { return !(b.w_ < a.w_); }

  std::size_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto x : w_) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
  }

  const std::array<std::uint64_t, kWords>& words() const { return w_; }

 private:
  unsigned byte(std::size_t j) const {
    return static_cast<unsigned>((w_[j / 8] >> ((7 - j % 8) * 8)) & 0xffU);
  }
  void set_byte(std::size_t j, unsigned value) {
    const unsigned shift = (7 - j % 8) * 8;
    w_[j / 8] = (w_[j / 8] & ~(0xffULL << shift)) | (static_cast<std::uint64_t>(value & 0xffU) << shift);
  }

  std::array<std::uint64_t, kWords> w_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace lpa
