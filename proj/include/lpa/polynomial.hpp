#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lpa/gaussian_rational.hpp"
#include "lpa/monomial.hpp"

namespace lpa {

// Sparse polynomial over Q(i) with terms sorted ascending in graded-lex order
// and no zero coefficients.
class Polynomial {
 public:
  using Term = std::pair<Monomial, GQ>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) { check_nvars(nvars); }

  static Polynomial constant(std::size_t nvars, const GQ& c);
  static Polynomial variable(std::size_t nvars, std::size_t v);
  static Polynomial monomial(std::size_t nvars, const Monomial& m, const GQ& c = GQ(1));
  // Sorts, merges and drops zeros.
  static Polynomial from_terms(std::size_t nvars, std::vector<Term> terms);
  // Caller guarantees strictly ascending monomials and nonzero coefficients.
  static Polynomial from_sorted_terms(std::size_t nvars, std::vector<Term> terms);

  std::size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.back().first.degree()); }
  bool is_homogeneous() const;
  GQ coeff(const Monomial& m) const;
  const Term& leading() const { return terms_.back(); }

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const GQ& c, const Polynomial& p) { return p.scaled(c); }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial scaled(const GQ& c) const;
  // this += c * o
  void add_scaled(const Polynomial& o, const GQ& c);
  Polynomial mul_monomial(const Monomial& m, const GQ& c) const;
  Polynomial pow(unsigned e) const;
  Polynomial partial(std::size_t v) const;
  // Part of total degree d.
  Polynomial homogeneous_part(unsigned d) const;

  // Keeps the variables with map[v] >= 0 renumbered to map[v]; terms using a
  // dropped variable vanish.
  Polynomial restrict_to(const std::vector<int>& map, std::size_t new_nvars) const;
  // Replaces variable v by images[v] (all over the same ring).
  Polynomial substitute(const std::vector<Polynomial>& images) const;

  std::string to_string(const std::vector<std::string>& names = {}) const;
  nlohmann::json to_json() const;
  static Polynomial from_json(const nlohmann::json& j);

  // Re-sorts and merges; identity on canonical input.
  void normalize();

 private:
  static void check_nvars(std::size_t n);
  void check_same(const Polynomial& o, const char* op) const;

  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

Polynomial poly_add(const Polynomial& p, const Polynomial& q);
Polynomial poly_mul(const Polynomial& p, const Polynomial& q);
Polynomial poly_partial(const Polynomial& p, std::size_t var_index);

std::string monomial_to_string(const Monomial& m, std::size_t nvars, const std::vector<std::string>& names);

}  // namespace lpa
