#include "lpa/gaussian_rational.hpp"

#include <stdexcept>

namespace lpa {

mpq_class GaussianRational::parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool slash = false;
  if (start == s.size()) throw std::invalid_argument("bad rational: " + s);
  for (std::size_t k = start; k < s.size(); ++k) {
    char c = s[k];
    if (c == '/') {
      if (slash || k == start || k + 1 == s.size()) throw std::invalid_argument("bad rational: " + s);
      slash = true;
    } else if (c < '0' || c > '9') {
      throw std::invalid_argument("bad rational: " + s);
    }
  }
  std::string body = s[0] == '+' ? s.substr(1) : s;
  mpq_class q;
  if (q.set_str(body, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

std::string GaussianRational::format_rational(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  if (sgn(im_) == 0) return GaussianRational(mpq_class(1 / re_));
  mpq_class n = norm();
  return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  if (sgn(o.im_) == 0) {
    re_ *= o.re_;
    im_ *= o.re_;
    return *this;
  }
  if (sgn(o.re_) == 0) {
    mpq_class t = re_ * o.im_;
    re_ = -im_ * o.im_;
    im_ = std::move(t);
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class m = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(m);
  return *this;
}

void GaussianRational::add_mul(const GaussianRational& a, const GaussianRational& b) {
  bool ar = sgn(a.im_) == 0, br = sgn(b.im_) == 0;
  if (ar && br) {
    re_ += a.re_ * b.re_;
    return;
  }
  bool ai = sgn(a.re_) == 0, bi = sgn(b.re_) == 0;
  if (ar && bi) {
    im_ += a.re_ * b.im_;
    return;
  }
  if (ai && br) {
    im_ += a.im_ * b.re_;
    return;
  }
  if (ai && bi) {
    re_ -= a.im_ * b.im_;
    return;
  }
  *this += a * b;
}

std::string GaussianRational::to_string() const {
  bool r = sgn(re_) != 0, m = sgn(im_) != 0;
  if (!r && !m) return "0";
  if (!m) return format_rational(re_);
  std::string ims;
  if (im_ == 1) ims = "i";
  else if (im_ == -1) ims = "-i";
  else ims = format_rational(im_) + "*i";
  if (!r) return ims;
  std::string s = "(" + format_rational(re_);
  if (sgn(im_) > 0) s += "+";
  return s + ims + ")";
}

std::size_t GaussianRational::height_bits() const {
  auto bits = [](const mpz_class& z) -> std::size_t { return sgn(z) == 0 ? 0 : mpz_sizeinbase(z.get_mpz_t(), 2); };
  return std::max({bits(re_.get_num()), bits(re_.get_den()), bits(im_.get_num()), bits(im_.get_den())});
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.to_string(); }

}  // namespace lpa
