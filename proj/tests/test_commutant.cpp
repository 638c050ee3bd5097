#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <fstream>

#include "lpa/commutant.hpp"
#include "lpa/invariants.hpp"

using namespace lpa;

namespace {

AlgebraHandle su4h() {
  static auto L = load_algebra(su4_supermultiplet());
  return L;
}

// Dense rank of the plain ansatz constraints modulo a prime with a square root of -1.
struct ModRank {
  using u64 = std::uint64_t;
  static constexpr u64 P = 1000000009ULL;
  u64 I = 0;

  static u64 mulm(u64 a, u64 b) { return static_cast<u64>((unsigned __int128)a * b % P); }
  static u64 powm(u64 a, u64 e) {
    u64 r = 1;
    for (; e; e >>= 1, a = mulm(a, a))
      if (e & 1) r = mulm(r, a);
    return r;
  }
  static u64 inv(u64 a) { return powm(a, P - 2); }
  ModRank() {
    for (u64 g = 2;; ++g) {
      u64 c = powm(g, (P - 1) / 4);
      if (mulm(c, c) == P - 1) {
        I = c;
        break;
      }
    }
  }
  u64 rat(const mpq_class& q) const {
    mpz_class n = q.get_num() % mpz_class(static_cast<unsigned long>(P));
    if (n < 0) n += static_cast<unsigned long>(P);
    mpz_class d = q.get_den() % mpz_class(static_cast<unsigned long>(P));
    return mulm(n.get_ui(), inv(d.get_ui()));
  }
  u64 of(const GQ& c) const { return (rat(c.re()) + mulm(I, rat(c.im()))) % P; }

  std::size_t rank(std::vector<std::vector<u64>> m) const {
    std::size_t r = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
      std::size_t p = r;
      while (p < m.size() && m[p][c] == 0) ++p;
      if (p == m.size()) continue;
      std::swap(m[p], m[r]);
      u64 iv = inv(m[r][c]);
      for (auto& x : m[r]) x = mulm(x, iv);
      for (std::size_t q = 0; q < m.size(); ++q) {
        if (q == r || m[q][c] == 0) continue;
        u64 f = m[q][c];
        for (std::size_t k = c; k < cols; ++k) m[q][k] = (m[q][k] + P - mulm(f, m[r][k])) % P;
      }
      ++r;
    }
    return r;
  }
};

void monomials_of_degree(std::size_t n, int k, std::vector<unsigned>& e, std::size_t from, std::vector<Monomial>& out) {
  if (k == 0) {
    out.push_back(Monomial::from_exponents(e));
    return;
  }
  for (std::size_t v = from; v < n; ++v) {
    ++e[v];
    monomials_of_degree(n, k - 1, e, v, out);
    --e[v];
  }
}

std::size_t oracle_dimension(const Algebra& L, int k) {
  ModRank mr;
  std::vector<Monomial> in;
  std::vector<unsigned> e(15, 0);
  monomials_of_degree(15, k, e, 0, in);
  std::map<std::pair<int, Monomial>, std::size_t> row;
  std::vector<std::vector<ModRank::u64>> M;
  for (std::size_t c = 0; c < in.size(); ++c) {
    auto m = Polynomial::monomial(15, in[c]);
    for (int u : L.subalgebra()) {
      auto b = poisson_bracket(L.coordinate(u), m, L);
      for (const auto& [mono, coef] : b.terms()) {
        auto [it, fresh] = row.emplace(std::make_pair(u, mono), M.size());
        if (fresh) M.emplace_back(in.size(), 0);
        M[it->second][c] = mr.of(coef);
      }
    }
  }
  return in.size() - mr.rank(M);
}

std::map<std::string, Polynomial> printed_polys(const Algebra& L) {
  auto j = nlohmann::json::parse(std::ifstream(data_dir() + "/su4_polynomials.json"));
  std::map<std::string, Polynomial> m;
  for (const auto& [k, v] : j["polynomials"].items()) m[k] = parse_polynomial(v.get<std::string>(), L);
  return m;
}

}  // namespace

TEST_CASE("commutant dimensions agree with a dense modular oracle") {
  auto L = su4h();
  const std::size_t expect[] = {0, 3, 2};
  for (int k = 1; k <= 3; ++k) {
    auto B = commutant_basis(L, k);
    CHECK(B.size() == expect[k - 1]);
    CHECK(B.size() == oracle_dimension(*L, k));
  }
}

TEST_CASE("commutant basis elements commute with the subalgebra") {
  auto L = su4h();
  for (int k = 2; k <= 4; ++k)
    for (const auto& p : commutant_basis(L, k))
      for (int u : L->subalgebra()) CHECK(poisson_bracket(L->coordinate(u), p, *L).is_zero());
}

TEST_CASE("printed polynomials lie in the commutant") {
  auto L = su4h();
  auto P = printed_polys(*L);
  std::map<int, PolyEchelon> span;
  for (int k = 2; k <= 6; ++k) {
    PolyEchelon e(15);
    int t = 0;
    for (const auto& b : commutant_basis(L, k)) e.insert(b, t++);
    span.emplace(k, std::move(e));
  }
  for (const auto& [name, p] : P) {
    INFO(name);
    REQUIRE(p.is_homogeneous());
    CHECK(span.at(p.degree()).contains(p));
  }
}

TEST_CASE("degree four product relations") {
  auto L = su4h();
  auto P = printed_polys(*L);
  CHECK(parse_polynomial("p1_4 + p2_4 - p1_2 p3_2", *L, P).is_zero());
  CHECK(parse_polynomial("p4_4 + p5_4 - p2_2 p3_2", *L, P).is_zero());
  CHECK(parse_polynomial("p6_4 + 2 p7_4 - p3_2^2", *L, P).is_zero());
}

TEST_CASE("casimirs commute with every coordinate") {
  auto L = su4h();
  auto P = printed_polys(*L);
  for (const char* c : {"p1_2 + p2_2 + 4 p3_2", "p1_3 - 4 p2_3",
                        "p1_4 - 2 p3_4 + p4_4 - 2 p6_4 - p1_2 p3_2 - p2_2 p3_2 - 1/8 (p1_2^2 + p2_2^2)"}) {
    auto cas = parse_polynomial(c, *L, P);
    for (int v = 0; v < 15; ++v) CHECK(poisson_bracket(cas, L->coordinate(v), *L).is_zero());
  }
}

TEST_CASE("generator pipeline through degree five") {
  auto G = generator_pipeline(su4h(), 5);
  CHECK(G.solution_counts == std::vector<int>{0, 3, 2, 10, 7});
  CHECK(G.counts == std::vector<int>{0, 3, 2, 4, 1});
  CHECK(G.dim_FL() == 10);
  auto back = GeneratorSet::from_json(G.to_json(), *su4h());
  CHECK(back.to_json() == G.to_json());
}

TEST_CASE("casimir combinations from the pipeline") {
  auto G = generator_pipeline(su4h(), 4);
  auto cc = casimir_combinations(G, *su4h());
  std::map<int, int> per;
  for (const auto& c : cc) ++per[c.degree];
  CHECK(per[2] == 1);
  CHECK(per[3] == 1);
  CHECK(per[4] >= 1);
  for (const auto& c : cc)
    for (int v = 0; v < 15; ++v) CHECK(poisson_bracket(c.poly, su4h()->coordinate(v), *su4h()).is_zero());
}

TEST_CASE("labeling report") {
  auto r = labeling_report(15, 6, 0, 3, 2);
  REQUIRE(r.n0);
  CHECK(r.M0 == 9);
  CHECK(*r.n0 == 2);
  auto odd = labeling_report(15, 6, 0, 3, 1);
  CHECK_FALSE(odd.n0);
  CHECK_FALSE(odd.diagnostic.empty());
  CHECK_THROWS_AS(labeling_report(3, 6, 0, 1, 1), Error);
}
