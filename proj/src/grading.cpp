#include "lpa/grading.hpp"

#include <algorithm>

namespace lpa {

Grading monomial_grading(const Monomial& m, const Algebra& L) {
  Grading g(static_cast<std::size_t>(L.num_blocks()), 0);
  for (int v = 0; v < L.dim(); ++v) g[static_cast<std::size_t>(L.block_of(v))] += static_cast<int>(m.exponent(static_cast<std::size_t>(v)));
  return g;
}

GradingSum poly_grading(const Polynomial& p, const Algebra& L) {
  if (p.is_zero()) throw Error(ErrorKind::schema, "grading of the zero polynomial is undefined");
  if (p.nvars() != static_cast<std::size_t>(L.dim())) throw DimensionError("poly_grading: nvars differs from algebra dimension");
  GradingSum s;
  for (const auto& t : p.terms()) grading_insert(s, monomial_grading(t.first, L));
  return s;
}

Polynomial grading_component(const Polynomial& p, const Grading& g, const Algebra& L) {
  std::vector<Polynomial::Term> out;
  for (const auto& t : p.terms())
    if (monomial_grading(t.first, L) == g) out.push_back(t);
  return Polynomial::from_sorted_terms(p.nvars(), std::move(out));
}

Grading grading_add(const Grading& a, const Grading& b) {
  Grading r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

void grading_insert(GradingSum& s, const Grading& g) {
  auto it = std::lower_bound(s.begin(), s.end(), g);
  if (it == s.end() || *it != g) s.insert(it, g);
}

bool grading_contains(const GradingSum& s, const Grading& g) { return std::binary_search(s.begin(), s.end(), g); }

GradingSum bracket_grading(const Grading& gp, const Grading& gq, const std::vector<BlockRule>& rules) {
  if (gp.size() != gq.size()) throw DimensionError("bracket_grading: grading lengths differ");
  Grading base = grading_add(gp, gq);
  GradingSum out;
  for (const auto& r : rules)
    for (int t : r.targets) {
      Grading g = base;
      g[static_cast<std::size_t>(r.r)] -= 1;
      g[static_cast<std::size_t>(r.s)] -= 1;
      g[static_cast<std::size_t>(t)] += 1;
      if (std::all_of(g.begin(), g.end(), [](int x) { return x >= 0; })) grading_insert(out, g);
    }
  return out;
}

GradingSum bracket_grading(const GradingSum& gp, const GradingSum& gq, const std::vector<BlockRule>& rules) {
  if (gp.size() != 1 || gq.size() != 1)
    throw Error(ErrorKind::schema, "bracket_grading needs homogeneous operands");
  return bracket_grading(gp[0], gq[0], rules);
}

std::string grading_to_string(const Grading& g) {
  std::string s = "(";
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(g[i]);
  }
  return s + ")";
}

std::string grading_sum_to_string(const GradingSum& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += " + ";
    out += grading_to_string(s[i]);
  }
  return out;
}

}  // namespace lpa
