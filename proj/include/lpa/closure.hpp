#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "lpa/admissible.hpp"
#include "lpa/expr.hpp"
#include "lpa/slice.hpp"

namespace lpa {

GenPoly genpoly_mul(const GenPoly& a, const GenPoly& b);
GenPoly genpoly_add(const GenPoly& a, const GenPoly& b, const GQ& scale = GQ(1));
// Expression in generator names without brackets.
GenPoly to_genpoly(const expr::Node& n, const GeneratorSet& gens);

// Generator expressions evaluated on the slice. Values of invariants on the
// slice determine them, so identities among invariants are decided there.
// Memo tables are shared between threads.
class BracketEngine {
 public:
  BracketEngine(GeneratorSet gens, const Algebra& L);

  const GeneratorSet& generators() const { return gens_; }
  const SliceContext& slice() const { return S_; }
  const Algebra& algebra() const { return *L_; }
  int index_of(const std::string& name) const;

  int add_generator(Generator g);
  const SliceContext::Jet& jet(int g) const { return jets_[static_cast<std::size_t>(g)]; }

  Polynomial value(const GenMonomial& m);
  Polynomial value(const GenPoly& p);
  SliceContext::Jet jet(const GenPoly& p) const;
  Polynomial bracket(int a, int b);

  // Brackets may not nest inside other brackets.
  Polynomial evaluate(const expr::Node& n);
  // Same expression in all coordinates.
  Polynomial evaluate_full(const expr::Node& n) const;

 private:
  GeneratorSet gens_;
  const Algebra* L_;
  SliceContext S_;
  std::vector<SliceContext::Jet> jets_;
  std::map<std::string, Polynomial> named_;
  std::mutex mu_;
  std::map<GenMonomial, Polynomial> values_;
  std::map<std::pair<int, int>, Polynomial> brackets_;
};

struct BracketExpansion {
  std::string a, b;
  int degree = 0;
  std::vector<GenMonomial> candidates;
  // Nonzero coefficients only.
  GenPoly coefficients;
  // target - sum Gamma_c c in coordinates, when nonzero.
  std::optional<Polynomial> residual;
  bool expressible() const { return !residual; }
};

// Candidates are inserted into an echelon basis in the given order; earlier
// candidates win when the candidate values are dependent.
BracketExpansion expand_in_generators(const Polynomial& target, const std::vector<GenMonomial>& candidates,
                                      const GeneratorSet& gens, const Algebra& L);
BracketExpansion expand_bracket(BracketEngine& E, int a, int b, const std::vector<GenMonomial>& candidates);
// Candidates from admissible_products.
BracketExpansion expand_bracket(BracketEngine& E, int a, int b);

struct IdentityCheck {
  std::string lhs, rhs;
  bool holds = false;
  // lhs - rhs in coordinates; zero when the identity holds.
  Polynomial diff;
};

IdentityCheck verify_bracket_identity(BracketEngine& E, const std::string& a, const std::string& b,
                                      const std::string& rhs, bool full_diff = true);
// "X = Y = Z": every side is compared with the last one.
std::vector<IdentityCheck> verify_equation(BracketEngine& E, const std::string& chain, bool full_diff = true);

struct ClosureOptions {
  // 0: no cap.
  int max_bracket_degree = 0;
  bool promote = true;
  bool include_centrals = false;
};

struct PromotedGenerator {
  std::string name;
  int degree = 0;
  std::string source;
};

struct BracketTable {
  GeneratorSet gens;
  std::vector<BracketExpansion> pairs;
  std::vector<PromotedGenerator> promoted;
  bool closed = false;
  // Largest number of non-central factors in any expansion.
  int d = 0;
  const BracketExpansion* find(const std::string& a, const std::string& b) const;
  nlohmann::json to_json() const;
  std::string summary() const;
};

// Brackets of non-central pairs by ascending degree. A residual that commutes
// with the subalgebra is split by grading; components outside the span of
// products become new generators, normalized to -i * component with leading
// coefficient one.
BracketTable close_algebra(GeneratorSet gens, const Algebra& L, const ClosureOptions& opt = {});

// {a,{b,c}} + {b,{c,a}} + {c,{a,b}} on the slice, inner brackets read from the table.
Polynomial jacobi_defect(BracketEngine& E, const BracketTable& T, int a, int b, int c);

// Basis of the vanishing combinations of generator products of one degree.
std::vector<GenPoly> find_relations(BracketEngine& E, int degree);
bool relation_holds(BracketEngine& E, const GenPoly& r);
bool in_span(const std::vector<GenPoly>& basis, const GenPoly& r);
std::size_t genpoly_rank(const std::vector<GenPoly>& v);
// Multiples of lower-degree relations (degree -> relations) by generator
// products, landing in `degree`.
std::vector<GenPoly> induced_relations(const GeneratorSet& gens, const std::map<int, std::vector<GenPoly>>& lower,
                                       int degree);

}  // namespace lpa
