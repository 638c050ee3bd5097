#include "lpa/polynomial.hpp"

#include <algorithm>
#include <unordered_map>

#include "lpa/errors.hpp"

namespace lpa {

void Polynomial::check_nvars(std::size_t n) {
  if (n > Monomial::kMaxVars)
    throw DimensionError("polynomial ring with " + std::to_string(n) + " variables exceeds capacity " +
                         std::to_string(Monomial::kMaxVars));
}

void Polynomial::check_same(const Polynomial& o, const char* op) const {
  if (nvars_ != o.nvars_)
    throw DimensionError(std::string(op) + ": nvars mismatch " + std::to_string(nvars_) + " vs " +
                         std::to_string(o.nvars_));
}

Polynomial Polynomial::constant(std::size_t nvars, const GQ& c) {
  Polynomial p(nvars);
  if (!c.is_zero()) p.terms_.emplace_back(Monomial(), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t v) {
  if (v >= nvars) throw std::out_of_range("variable index " + std::to_string(v));
  Polynomial p(nvars);
  p.terms_.emplace_back(Monomial::variable(v), GQ(1));
  return p;
}

Polynomial Polynomial::monomial(std::size_t nvars, const Monomial& m, const GQ& c) {
  Polynomial p(nvars);
  if (m.support_end() > nvars) throw DimensionError("monomial uses variable beyond nvars");
  if (!c.is_zero()) p.terms_.emplace_back(m, c);
  return p;
}

Polynomial Polynomial::from_terms(std::size_t nvars, std::vector<Term> terms) {
  Polynomial p(nvars);
  for (const auto& t : terms)
    if (t.first.support_end() > nvars) throw DimensionError("monomial uses variable beyond nvars");
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

Polynomial Polynomial::from_sorted_terms(std::size_t nvars, std::vector<Term> terms) {
  Polynomial p(nvars);
  p.terms_ = std::move(terms);
  return p;
}

void Polynomial::normalize() {
  std::stable_sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      if (!out.empty() && out.back().second.is_zero()) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().second.is_zero()) out.pop_back();
  terms_ = std::move(out);
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  return terms_.front().first.degree() == terms_.back().first.degree();
}

GQ Polynomial::coeff(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& x) { return t.first < x; });
  if (it != terms_.end() && it->first == m) return it->second;
  return GQ(0);
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

void Polynomial::add_scaled(const Polynomial& o, const GQ& c) {
  check_same(o, "add");
  if (c.is_zero() || o.terms_.empty()) return;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->first < a->first) {
      out.emplace_back(b->first, b->second * c);
      ++b;
    } else {
      GQ v = std::move(a->second);
      v.add_mul(b->second, c);
      if (!v.is_zero()) out.emplace_back(a->first, std::move(v));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  add_scaled(o, GQ(1));
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  add_scaled(o, GQ(-1));
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_same(b, "mul");
  Polynomial r(a.nvars_);
  if (a.is_zero() || b.is_zero()) return r;
  if (a.size() == 1) return b.mul_monomial(a.terms_[0].first, a.terms_[0].second);
  if (b.size() == 1) return a.mul_monomial(b.terms_[0].first, b.terms_[0].second);
  std::unordered_map<Monomial, GQ, MonomialHash> acc;
  acc.reserve(a.size() * b.size() / 2 + 16);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) acc[ma * mb].add_mul(ca, cb);
  r.terms_.reserve(acc.size());
  for (auto& kv : acc)
    if (!kv.second.is_zero()) r.terms_.emplace_back(kv.first, std::move(kv.second));
  std::sort(r.terms_.begin(), r.terms_.end(),
            [](const Polynomial::Term& x, const Polynomial::Term& y) { return x.first < y.first; });
  return r;
}

Polynomial Polynomial::scaled(const GQ& c) const {
  Polynomial r(nvars_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.emplace_back(t.first, t.second * c);
  return r;
}

Polynomial Polynomial::mul_monomial(const Monomial& m, const GQ& c) const {
  Polynomial r(nvars_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.emplace_back(t.first * m, t.second * c);
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(nvars_, GQ(1));
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::partial(std::size_t v) const {
  if (v >= nvars_) throw std::out_of_range("partial: variable index " + std::to_string(v));
  std::vector<Term> out;
  for (const auto& [m, c] : terms_) {
    unsigned e = m.exponent(v);
    if (e == 0) continue;
    out.emplace_back(m.div_var(v), c * GQ(static_cast<long>(e)));
  }
  // Dividing by x_v keeps the relative graded-lex order among survivors only
  // within a fixed exponent of x_v, so re-sort.
  return from_terms(nvars_, std::move(out));
}

Polynomial Polynomial::homogeneous_part(unsigned d) const {
  Polynomial r(nvars_);
  for (const auto& t : terms_)
    if (t.first.degree() == d) r.terms_.push_back(t);
  return r;
}

Polynomial Polynomial::restrict_to(const std::vector<int>& map, std::size_t new_nvars) const {
  if (map.size() != nvars_) throw DimensionError("restrict_to: map size mismatch");
  std::vector<Term> out;
  std::vector<unsigned> e(new_nvars);
  for (const auto& [m, c] : terms_) {
    bool keep = true;
    std::fill(e.begin(), e.end(), 0U);
    for (std::size_t v = 0; v < nvars_; ++v) {
      unsigned x = m.exponent(v);
      if (x == 0) continue;
      if (map[v] < 0) {
        keep = false;
        break;
      }
      e[static_cast<std::size_t>(map[v])] = x;
    }
    if (keep) out.emplace_back(Monomial::from_exponents(e), c);
  }
  return from_terms(new_nvars, std::move(out));
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
  if (images.size() != nvars_) throw DimensionError("substitute: wrong number of images");
  std::size_t target = images.empty() ? 0 : images[0].nvars();
  for (const auto& im : images)
    if (im.nvars() != target) throw DimensionError("substitute: images in different rings");
  std::vector<std::vector<Polynomial>> powers(nvars_);
  Polynomial result(target);
  for (const auto& [m, c] : terms_) {
    Polynomial term = constant(target, c);
    for (std::size_t v = 0; v < nvars_; ++v) {
      unsigned e = m.exponent(v);
      if (e == 0) continue;
      auto& pv = powers[v];
      if (pv.empty()) pv.push_back(constant(target, GQ(1)));
      while (pv.size() <= e) pv.push_back(pv.back() * images[v]);
      term = term * pv[e];
    }
    result += term;
  }
  return result;
}

std::string monomial_to_string(const Monomial& m, std::size_t nvars, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t v = 0; v < nvars; ++v) {
    unsigned e = m.exponent(v);
    if (e == 0) continue;
    if (!s.empty()) s += "*";
    s += v < names.size() ? names[v] : "x" + std::to_string(v + 1);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string mono = monomial_to_string(m, nvars_, names);
    std::string cs;
    bool neg = false;
    if (c.is_real()) {
      neg = sgn(c.re()) < 0;
      mpq_class a = abs(c.re());
      if (a != 1 || mono.empty()) cs = GQ::format_rational(a);
    } else if (sgn(c.re()) == 0) {
      neg = sgn(c.im()) < 0;
      mpq_class a = abs(c.im());
      cs = a == 1 ? "i" : GQ::format_rational(a) + "*i";
    } else {
      cs = c.to_string();
    }
    if (out.empty()) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    out += cs;
    if (!cs.empty() && !mono.empty()) out += "*";
    out += mono;
  }
  return out;
}

nlohmann::json Polynomial::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : terms_) {
    nlohmann::json e = nlohmann::json::array();
    for (std::size_t v = 0; v < nvars_; ++v) e.push_back(m.exponent(v));
    terms.push_back({{"exps", e}, {"re", GQ::format_rational(c.re())}, {"im", GQ::format_rational(c.im())}});
  }
  return {{"nvars", nvars_}, {"terms", terms}};
}

Polynomial Polynomial::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("nvars") || !j.contains("terms"))
    throw Error(ErrorKind::schema, "polynomial JSON needs nvars and terms");
  if (!j.at("nvars").is_number_unsigned()) throw Error(ErrorKind::schema, "nvars must be a nonnegative integer");
  std::size_t n = j.at("nvars").get<std::size_t>();
  std::vector<Term> terms;
  for (const auto& t : j.at("terms")) {
    if (!t.contains("exps") || !t.contains("re") || !t.contains("im"))
      throw Error(ErrorKind::schema, "polynomial term needs exps, re, im");
    const auto& e = t.at("exps");
    if (!e.is_array() || e.size() != n) throw DimensionError("term exponent vector length differs from nvars");
    std::vector<unsigned> exps;
    for (const auto& x : e) {
      if (!x.is_number_unsigned()) throw Error(ErrorKind::schema, "exponents must be nonnegative integers");
      exps.push_back(x.get<unsigned>());
    }
    GQ c;
    try {
      c = GQ::parse(t.at("re").get<std::string>(), t.at("im").get<std::string>());
    } catch (const std::exception& ex) {
      throw Error(ErrorKind::schema, std::string("bad coefficient: ") + ex.what());
    }
    terms.emplace_back(Monomial::from_exponents(exps), c);
  }
  return from_terms(n, std::move(terms));
}

Polynomial poly_add(const Polynomial& p, const Polynomial& q) { return p + q; }
Polynomial poly_mul(const Polynomial& p, const Polynomial& q) { return p * q; }
Polynomial poly_partial(const Polynomial& p, std::size_t var_index) { return p.partial(var_index); }

}  // namespace lpa
