#pragma once

#include <string>
#include <vector>

#include "lpa/commutant.hpp"

namespace lpa {

// A factor available to graded products. Homogeneous generators stand for
// themselves; a homogeneous component of an inhomogeneous generator that no
// product of homogeneous generators reproduces becomes a pseudo factor, later
// replaced by the members of `substitutes`.
struct WorkingFactor {
  std::string label;
  int degree = 0;
  Grading grading;
  bool pseudo = false;
  std::vector<GenMonomial> substitutes;
};

std::vector<WorkingFactor> working_set(const GeneratorSet& gens, const Algebra& L);

// Products of total degree `degree` whose grading lies in `target`, with pseudo
// factors substituted. Sorted by non-central factor count, then by monomial.
std::vector<GenMonomial> admissible_products(const GeneratorSet& gens, const std::vector<WorkingFactor>& H,
                                             const GradingSum& target, int degree);
// Candidates for {a, b}.
std::vector<GenMonomial> admissible_products(const GeneratorSet& gens, int a, int b, const Algebra& L);
std::vector<GenMonomial> admissible_products(const GeneratorSet& gens, int a, int b, const Algebra& L,
                                             const std::vector<WorkingFactor>& H);

int non_central_factors(const GenMonomial& m, const GeneratorSet& gens);
void sort_candidates(std::vector<GenMonomial>& v, const GeneratorSet& gens);

// Number of generator monomials of degree k + l - 1, where counts[j-1] is the
// number of generators of degree j.
long long compact_form_count(int k, int l, const std::vector<int>& counts);

struct Table1Row {
  int degree = 0;
  long long compact = 0;
  long long grading = 0;
  std::string example;
  long long delta() const { return compact - grading; }
};

// One row per bracket degree; the example pair is the first non-central pair of
// that degree unless `examples` names one.
std::vector<Table1Row> table1_report(const GeneratorSet& gens, const Algebra& L,
                                     const std::vector<std::pair<std::string, std::string>>& examples = {});
std::string table1_csv(const std::vector<Table1Row>& rows);

}  // namespace lpa
