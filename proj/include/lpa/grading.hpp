#pragma once

#include <string>
#include <vector>

#include "lpa/lie_algebra.hpp"

namespace lpa {

// Number of factors from each block.
using Grading = std::vector<int>;
// Sorted, duplicate free.
using GradingSum = std::vector<Grading>;

Grading monomial_grading(const Monomial& m, const Algebra& L);
GradingSum poly_grading(const Polynomial& p, const Algebra& L);
// Component of p with the given grading.
Polynomial grading_component(const Polynomial& p, const Grading& g, const Algebra& L);
// Candidate gradings of {p, q} for homogeneous p, q.
GradingSum bracket_grading(const Grading& gp, const Grading& gq, const std::vector<BlockRule>& rules);
GradingSum bracket_grading(const GradingSum& gp, const GradingSum& gq, const std::vector<BlockRule>& rules);

Grading grading_add(const Grading& a, const Grading& b);
void grading_insert(GradingSum& s, const Grading& g);
bool grading_contains(const GradingSum& s, const Grading& g);
std::string grading_to_string(const Grading& g);
std::string grading_sum_to_string(const GradingSum& s);

}  // namespace lpa
