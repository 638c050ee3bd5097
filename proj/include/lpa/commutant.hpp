#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lpa/exact_linalg.hpp"
#include "lpa/grading.hpp"
#include "lpa/lie_algebra.hpp"

namespace lpa {

// (generator index, exponent) pairs sorted by index.
using GenMonomial = std::vector<std::pair<int, int>>;
// Linear combination of generator monomials.
using GenPoly = std::map<GenMonomial, GQ>;

GenMonomial gen_monomial_mul(const GenMonomial& a, const GenMonomial& b);

struct Generator {
  std::string name;
  int degree = 0;
  Polynomial poly;
  GradingSum grading;
  bool central = false;
};

struct GeneratorSet {
  std::vector<Generator> entries;
  // Vanishing combinations of generator products.
  std::vector<GenPoly> relations;
  int zeta = 0;
  // counts[j-1] = m_j, new generators of degree j.
  std::vector<int> counts;
  // Commutant dimension per degree, when produced by the pipeline.
  std::vector<int> solution_counts;

  std::size_t dim_FL() const { return entries.size(); }
  int index_of(const std::string& name) const;
  const Generator& at(const std::string& name) const;
  int degree_of(const GenMonomial& m) const;
  std::string monomial_name(const GenMonomial& m) const;
  std::string to_string(const GenPoly& p) const;
  // Generator indices excluding centrals, ascending.
  std::vector<int> non_central() const;

  nlohmann::json to_json() const;
  static GeneratorSet from_json(const nlohmann::json& j, const Algebra& L);
};

// [{"monomial":{"F1":1},"re":"0","im":"-2"}, ...]
nlohmann::json genpoly_to_json(const GenPoly& p, const GeneratorSet& g);
GenPoly genpoly_from_json(const nlohmann::json& j, const GeneratorSet& g);

std::uint64_t ansatz_dimension(int n, int k);

// Commutant of the subalgebra, one degree at a time.
class CommutantSolver {
 public:
  explicit CommutantSolver(AlgebraHandle L);

  // Canonical reduced echelon basis (largest monomial is the pivot, coefficient 1),
  // ordered by descending pivot.
  std::vector<Polynomial> basis(int k) const;

  const std::vector<int>& torus() const { return torus_; }
  const Algebra& algebra() const { return *L_; }

 private:
  AlgebraHandle L_;
  std::vector<int> torus_;
  std::vector<int> constraint_us_;
  GQMatrix P_, Pinv_;
  std::vector<std::vector<int>> solver_blocks_;
  std::vector<std::vector<GQ>> weight_;
  // dlin_[ui][b]: {x_u, y_b} as a sparse linear form in y.
  std::vector<std::vector<std::vector<std::pair<int, GQ>>>> dlin_;
};

std::vector<Polynomial> commutant_basis(const Algebra& L, int k);
std::vector<Polynomial> commutant_basis(const AlgebraHandle& L, int k);

// Restriction to the algebra's slice (identity when it has none).
Polynomial restrict_to_slice(const Polynomial& p, const Algebra& L);

struct FilterResult {
  std::vector<Polynomial> new_generators;
  std::vector<bool> central;
  // Indices into the solution list.
  std::vector<int> chosen;
  // For each discarded solution: its index and the combination of lower products
  // and new generators (indices lower.size() + j) reproducing it.
  std::vector<std::pair<int, GenPoly>> dependence;
  // Vanishing combinations among products of lower generators.
  std::vector<GenPoly> product_relations;
};

// All generator monomials of the given coordinate degree over `gens` (optionally
// restricted to the first `limit` entries).
std::vector<GenMonomial> products_of_degree(const GeneratorSet& gens, int k, std::size_t limit = SIZE_MAX);
// Coordinate polynomial of a generator monomial, memoized by the caller through `cache`.
Polynomial expand_monomial(const GenMonomial& m, const GeneratorSet& gens, std::map<GenMonomial, Polynomial>* cache = nullptr);
Polynomial expand_genpoly(const GenPoly& p, const GeneratorSet& gens, std::map<GenMonomial, Polynomial>* cache = nullptr);

FilterResult filter_indecomposable(const std::vector<Polynomial>& solutions, const GeneratorSet& lower, int k,
                                   const Algebra& L);

GeneratorSet generator_pipeline(const AlgebraHandle& L, int k_max);
// Resumes a pipeline from a set complete through gens.zeta.
GeneratorSet extend_pipeline(const AlgebraHandle& L, GeneratorSet gens, int k_max);

struct CasimirCombination {
  int degree;
  GenPoly expression;
  Polynomial poly;
};
// Basis of the combinations of generator products commuting with every coordinate,
// for each degree up to max_degree (defaults to gens.zeta).
std::vector<CasimirCombination> casimir_combinations(const GeneratorSet& gens, const Algebra& L, int max_degree = 0);

struct LabelingReport {
  int dim_g = 0;
  int dim_sub = 0;
  int ell0 = 0;
  int M0 = 0;
  int N_g = 0;
  int N_sub = 0;
  // n0 = (M0 - N_g - N_sub) / 2 when integral and nonnegative.
  std::optional<int> n0;
  mpq_class n0_value;
  std::string diagnostic;
};

LabelingReport labeling_report(int dim_g, int dim_sub, int ell0, int N_g, int N_sub);

}  // namespace lpa
