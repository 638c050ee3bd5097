#include <catch2/catch_amalgamated.hpp>

#include <fstream>

#include "lpa/closure.hpp"
#include "lpa/invariants.hpp"
#include "lpa/parallel.hpp"

using namespace lpa;

namespace {

const Algebra& su4() {
  static auto L = load_algebra(su4_supermultiplet());
  return *L;
}

const GeneratorSet& barred() {
  static GeneratorSet g = barred_basis(su4());
  return g;
}

nlohmann::json fixture(const std::string& name) {
  std::ifstream in(data_dir() + "/fixtures/" + name);
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("slice evaluation matches full coordinates") {
  BracketEngine E(barred(), su4());
  for (const char* s : {"C2 D2", "b1 E1 - 3 F2", "{C2, D2}", "{D3, F4} + 2 b2 F1"}) {
    auto full = E.evaluate_full(*expr::parse(s));
    CHECK(E.slice().restrict(full) == E.evaluate(*expr::parse(s)));
  }
  CHECK_THROWS_AS(E.evaluate(*expr::parse("{C2, {D2, D3}}")), Error);
  CHECK_THROWS_AS(E.index_of("Z9"), Error);
}

TEST_CASE("expansion of {C2, D2}") {
  BracketEngine E(barred(), su4());
  auto x = expand_bracket(E, E.index_of("C2"), E.index_of("D2"));
  REQUIRE(x.expressible());
  CHECK(x.degree == 6);
  const auto& g = E.generators();
  GenPoly want = {{{{g.index_of("F1"), 1}}, GQ(mpq_class(0), mpq_class(-2))},
                  {{{g.index_of("F3"), 1}}, GQ(mpq_class(0), mpq_class(-2))}};
  CHECK(x.coefficients == want);
  for (const auto& [m, c] : x.coefficients)
    CHECK(std::find(x.candidates.begin(), x.candidates.end(), m) != x.candidates.end());
}

TEST_CASE("expansion with a restricted candidate list leaves a residual") {
  BracketEngine E(barred(), su4());
  const auto& g = E.generators();
  std::vector<GenMonomial> only = {{{g.index_of("F1"), 1}}};
  auto x = expand_bracket(E, g.index_of("C2"), g.index_of("D2"), only);
  CHECK_FALSE(x.expressible());
  REQUIRE(x.residual);
  CHECK(x.residual->degree() == 6);
}

TEST_CASE("bracket identities") {
  BracketEngine E(barred(), su4());
  CHECK(verify_bracket_identity(E, "D2", "D3", "4 i G2").holds);
  auto bad = verify_bracket_identity(E, "C2", "D4", "F1");
  CHECK_FALSE(bad.holds);
  CHECK_FALSE(bad.diff.is_zero());
  auto chain = verify_equation(E, "{C2, D2} = -2 i (F1 + F3) = -2 i F1 - 2 i F3");
  REQUIRE(chain.size() == 2);
  CHECK(chain[0].holds);
  CHECK(chain[1].holds);
}

TEST_CASE("bracket fixtures of degrees six to nine") {
  BracketEngine E(barred(), su4());
  int n = 0;
  for (int k = 6; k <= 9; ++k) {
    auto j = fixture("su4_degree" + std::to_string(k) + ".json");
    for (const auto& r : j.at("relations")) {
      for (const auto& c : verify_equation(E, r.get<std::string>(), false)) {
        INFO(c.lhs << " = " << c.rhs);
        CHECK(c.holds);
        ++n;
      }
    }
  }
  CHECK(n == 28);
}

TEST_CASE("relations among generator products") {
  BracketEngine E(barred(), su4());
  CHECK(find_relations(E, 6).empty());
  CHECK(find_relations(E, 7).empty());
  auto r8 = find_relations(E, 8);
  REQUIRE(r8.size() == 1);
  CHECK(relation_holds(E, r8[0]));
  CHECK(find_relations(E, 9).empty());
  auto syz = fixture("su4_syzygies.json");
  auto printed = to_genpoly(*expr::parse_equation(syz["relations"]["8"][0].get<std::string>())[0], barred());
  CHECK(relation_holds(E, printed));
  CHECK(in_span(r8, printed));
  GenPoly not_rel = {{{{barred().index_of("F2"), 1}, {barred().index_of("b2"), 1}}, GQ(1)}};
  CHECK_FALSE(relation_holds(E, not_rel));
  CHECK_FALSE(in_span(r8, not_rel));

  // Degree ten: multiples of the degree eight relation by b1, b2, b3 plus three new ones.
  auto r10 = find_relations(E, 10);
  auto induced = induced_relations(barred(), {{8, r8}}, 10);
  CHECK(induced.size() == 3);
  CHECK(genpoly_rank(induced) == 3);
  for (const auto& r : induced) CHECK(in_span(r10, r));
  CHECK(r10.size() == 6);
}

TEST_CASE("degree eight relation space in full coordinates") {
  const auto& g = barred();
  auto prods = products_of_degree(g, 8);
  std::map<GenMonomial, Polynomial> cache;
  PolyEchelon ech(15);
  int tag = 0;
  for (const auto& m : prods) ech.insert(expand_monomial(m, g, &cache), tag++);
  CHECK(prods.size() - ech.rank() == 1);
}

TEST_CASE("capped closure and jacobi") {
  auto T = close_algebra(barred(), su4(), {8, true, false});
  CHECK(T.promoted.empty());
  for (const auto& p : T.pairs) {
    INFO(p.a << "," << p.b);
    CHECK(p.expressible());
    CHECK(p.degree <= 8);
  }
  REQUIRE(T.find("C2", "D2"));
  CHECK(T.d >= 1);
  BracketEngine E(barred(), su4());
  const auto& g = barred();
  // Triples whose inner and outer brackets all stay in the table.
  CHECK(jacobi_defect(E, T, g.index_of("C2"), g.index_of("D2"), g.index_of("b1")).is_zero());
  CHECK(jacobi_defect(E, T, g.index_of("C2"), g.index_of("D2"), g.index_of("D3")).is_zero());
}

TEST_CASE("closure is deterministic across thread counts", "[property]") {
  set_thread_count(1);
  auto a = close_algebra(barred(), su4(), {8, true, false}).to_json();
  set_thread_count(3);
  auto b = close_algebra(barred(), su4(), {8, true, false}).to_json();
  set_thread_count(1);
  CHECK(a.dump() == b.dump());
}

TEST_CASE("parallel_for propagates exceptions") {
  set_thread_count(2);
  std::vector<int> out(50, 0);
  parallel_for(out.size(), [&](std::size_t i) { out[i] = static_cast<int>(i) * 2; });
  CHECK(out[49] == 98);
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                    if (i == 5) throw Error(ErrorKind::internal, "boom");
                  }),
                  Error);
  set_thread_count(1);
}
