#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>

namespace lpa {

// Exact element a + b*i of Q(i).
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(long num, long den) : re_(num, den) { re_.canonicalize(); }
  GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }
  explicit GaussianRational(mpq_class re) : re_(std::move(re)) { re_.canonicalize(); }

  static GaussianRational imag_unit() { return {mpq_class(0), mpq_class(1)}; }

  // Parses "p", "p/q", "-p/q".
  static mpq_class parse_rational(const std::string& s);
  static GaussianRational parse(const std::string& re, const std::string& im) {
    return {parse_rational(re), parse_rational(im)};
  }
  static std::string format_rational(const mpq_class& q);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return sgn(im_) == 0 && re_ == 1; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  GaussianRational inverse() const;
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

  // this += a*b without temporaries for the common real cases.
  void add_mul(const GaussianRational& a, const GaussianRational& b);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  // Total order used only for deterministic tie-breaking.
  int compare(const GaussianRational& o) const {
    int c = cmp(re_, o.re_);
    return c != 0 ? c : cmp(im_, o.im_);
  }

  // Human readable form: "3", "-1/4*i", "(1/2+3*i)".
  std::string to_string() const;
  // Bits needed for numerators and denominators, a rough size measure.
  std::size_t height_bits() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

using GQ = GaussianRational;

}  // namespace lpa
