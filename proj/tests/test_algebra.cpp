#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lpa/expr.hpp"
#include "lpa/grading.hpp"
#include "lpa/invariants.hpp"
#include "lpa/lie_algebra.hpp"

using namespace lpa;

namespace {

const Algebra& su4() {
  static auto L = load_algebra(su4_supermultiplet());
  return *L;
}

GQ rand_coeff(std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  int re = d(rng), im = d(rng);
  if (re == 0 && im == 0) re = 1;
  return GQ(mpq_class(re, 1 + (rng() % 2)), mpq_class(im));
}

Polynomial rand_poly(std::mt19937& rng, std::size_t n, int max_deg, int terms) {
  std::vector<Polynomial::Term> t;
  for (int k = 0; k < terms; ++k) {
    std::vector<unsigned> e(n, 0);
    int deg = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_deg));
    for (int j = 0; j < deg; ++j) ++e[rng() % n];
    t.emplace_back(Monomial::from_exponents(e), rand_coeff(rng));
  }
  return Polynomial::from_terms(n, std::move(t));
}

}  // namespace

TEST_CASE("su4 fixture validates") {
  const auto& L = su4();
  CHECK(L.dim() == 15);
  // {q11, q21} = (i/4) s3
  auto b = poisson_bracket(L.coordinate(6), L.coordinate(9), L);
  CHECK(b == L.coordinate(2).scaled(GQ(mpq_class(0), mpq_class(1, 4))));
}

TEST_CASE("su2 brackets") {
  auto L = load_algebra(su2_spec());
  auto b = poisson_bracket(L->coordinate(0), L->coordinate(1), *L);
  CHECK(b == L->coordinate(2).scaled(GQ::imag_unit()));
  auto cas = parse_polynomial("x1^2 + x2^2 + x3^2", *L);
  for (int v = 0; v < 3; ++v) CHECK(poisson_bracket(cas, L->coordinate(v), *L).is_zero());
}

TEST_CASE("invalid structure constants are rejected") {
  auto spec = su2_spec();
  SECTION("antisymmetry") {
    spec.structure.push_back({1, 0, 2, GQ::imag_unit()});
    try {
      load_algebra(spec);
      FAIL("accepted");
    } catch (const AlgebraError& e) {
      CHECK(e.violation() == AlgebraViolation::antisymmetry);
      CHECK(e.kind() == ErrorKind::invalid_algebra);
    }
  }
  SECTION("jacobi") {
    LieAlgebraSpec s;
    s.name = "broken";
    s.dim = 3;
    s.names = {"x", "y", "z"};
    // [x,y] = x, [x,z] = y, [y,z] = x
    s.structure = {{0, 1, 0, GQ(1)}, {0, 2, 1, GQ(1)}, {1, 2, 0, GQ(1)}};
    try {
      load_algebra(s);
      FAIL("accepted");
    } catch (const AlgebraError& e) {
      CHECK(e.violation() == AlgebraViolation::jacobi);
    }
  }
}

TEST_CASE("spec json roundtrip") {
  auto spec = su4_supermultiplet();
  auto back = LieAlgebraSpec::from_json(spec.to_json());
  CHECK(back.to_json() == spec.to_json());
  CHECK(load_algebra(back)->pairs().size() == su4().pairs().size());
}

TEST_CASE("polynomial arithmetic") {
  const auto& L = su4();
  auto p = parse_polynomial("(s1 + t2)^2", L);
  auto q = parse_polynomial("s1^2 + 2 s1 t2 + t2^2", L);
  CHECK(p == q);
  CHECK((p - q).is_zero());
  CHECK(p.degree() == 2);
  CHECK(p.is_homogeneous());
  CHECK_FALSE((p + L.coordinate(0)).is_homogeneous());
  CHECK(p.partial(0) == parse_polynomial("2 s1 + 2 t2", L));
  CHECK(parse_polynomial("s1 - 1", L).pow(3) == parse_polynomial("s1^3 - 3 s1^2 + 3 s1 - 1", L));
  CHECK(parse_polynomial("i*i", L) == Polynomial::constant(15, GQ(-1)));
  CHECK((p + parse_polynomial("s1", L)).homogeneous_part(1) == parse_polynomial("s1", L));
}

TEST_CASE("to_string and json roundtrip", "[property]") {
  const auto& L = su4();
  std::mt19937 rng(7);
  for (int c = 0; c < 40; ++c) {
    auto p = rand_poly(rng, 15, 4, 6);
    CHECK(parse_polynomial(p.to_string(L.names()), L) == p);
    CHECK(Polynomial::from_json(p.to_json()) == p);
  }
}

TEST_CASE("expression parser errors") {
  CHECK_THROWS_AS(expr::parse("(s1 + "), expr::ParseError);
  CHECK_THROWS_AS(parse_polynomial("s1 / s2", su4()), Error);
  CHECK_THROWS_AS(parse_polynomial("zz + 1", su4()), Error);
  CHECK(expr::parse_equation("a = b = c").size() == 3);
}

TEST_CASE("antisymmetry on random polynomials", "[property]") {
  const auto& L = su4();
  std::mt19937 rng(11);
  for (int c = 0; c < 70; ++c) {
    auto p = rand_poly(rng, 15, 3, 4), q = rand_poly(rng, 15, 3, 4);
    CHECK(poisson_bracket(p, q, L) == -poisson_bracket(q, p, L));
  }
}

TEST_CASE("jacobi on random polynomials", "[property]") {
  const auto& L = su4();
  std::mt19937 rng(12);
  for (int c = 0; c < 70; ++c) {
    auto p = rand_poly(rng, 15, 2, 3), q = rand_poly(rng, 15, 2, 3), r = rand_poly(rng, 15, 2, 3);
    auto j = poisson_bracket(p, poisson_bracket(q, r, L), L) + poisson_bracket(q, poisson_bracket(r, p, L), L) +
             poisson_bracket(r, poisson_bracket(p, q, L), L);
    CHECK(j.is_zero());
  }
}

TEST_CASE("leibniz on random polynomials", "[property]") {
  const auto& L = su4();
  std::mt19937 rng(13);
  for (int c = 0; c < 70; ++c) {
    auto p = rand_poly(rng, 15, 2, 3), q = rand_poly(rng, 15, 2, 3), r = rand_poly(rng, 15, 2, 3);
    CHECK(poisson_bracket(p, q * r, L) == poisson_bracket(p, q, L) * r + q * poisson_bracket(p, r, L));
  }
}

TEST_CASE("grading additivity", "[property]") {
  const auto& L = su4();
  std::mt19937 rng(14);
  for (int c = 0; c < 60; ++c) {
    auto a = rand_poly(rng, 15, 4, 1), b = rand_poly(rng, 15, 4, 1);
    const auto& ma = a.terms()[0].first;
    const auto& mb = b.terms()[0].first;
    CHECK(monomial_grading(ma * mb, L) == grading_add(monomial_grading(ma, L), monomial_grading(mb, L)));
  }
}

TEST_CASE("bracket grading of coordinates is sound", "[property]") {
  const auto& L = su4();
  for (int i = 0; i < 15; ++i)
    for (int j = 0; j < 15; ++j) {
      auto b = L.coordinate_bracket(i, j);
      if (b.is_zero()) continue;
      auto target = bracket_grading(monomial_grading(L.coordinate(i).leading().first, L),
                                    monomial_grading(L.coordinate(j).leading().first, L), L.block_rules());
      for (const auto& g : poly_grading(b, L)) CHECK(grading_contains(target, g));
    }
}

TEST_CASE("ring axioms and partial leibniz", "[property]") {
  std::mt19937 rng(15);
  for (int c = 0; c < 30; ++c) {
    auto p = rand_poly(rng, 15, 3, 4), q = rand_poly(rng, 15, 3, 4), r = rand_poly(rng, 15, 2, 3);
    CHECK((p * q) * r == p * (q * r));
    CHECK(p * q == q * p);
    CHECK(p * (q + r) == p * q + p * r);
    CHECK(p + q == q + p);
    auto v = rng() % 15;
    CHECK((p * q).partial(v) == p.partial(v) * q + p * q.partial(v));
    auto n = p;
    n.normalize();
    CHECK(n == p);
  }
}

TEST_CASE("gaussian rational field") {
  std::mt19937 rng(16);
  for (int c = 0; c < 30; ++c) {
    auto z = rand_coeff(rng);
    CHECK((z * z.inverse()).is_one());
  }
  GQ a(mpq_class(2, 4), mpq_class(-3, 6));
  CHECK(a.re() == mpq_class(1, 2));
  CHECK(a.re().get_den() == 2);
  CHECK(a.im() == mpq_class(-1, 2));
  CHECK(GQ::imag_unit() * GQ::imag_unit() == GQ(-1));
}

TEST_CASE("polynomial errors") {
  auto a = Polynomial::variable(3, 0), b = Polynomial::variable(4, 0);
  CHECK_THROWS_AS(a + b, Error);
  CHECK_THROWS_AS(a * b, Error);
  CHECK_THROWS(a.partial(5));
}
