#include "lpa/admissible.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace lpa {

namespace {

GenMonomial single(int g) { return {{g, 1}}; }

GenMonomial power(const GenMonomial& m, int e) {
  GenMonomial r;
  for (int k = 0; k < e; ++k) r = gen_monomial_mul(r, m);
  return r;
}

}  // namespace

std::vector<WorkingFactor> working_set(const GeneratorSet& gens, const Algebra& L) {
  std::vector<WorkingFactor> H;
  GeneratorSet homog;
  std::vector<int> homog_index;
  for (std::size_t i = 0; i < gens.entries.size(); ++i) {
    const auto& e = gens.entries[i];
    if (e.grading.size() != 1) continue;
    H.push_back({e.name, e.degree, e.grading[0], false, {single(static_cast<int>(i))}});
    homog.entries.push_back(e);
    homog_index.push_back(static_cast<int>(i));
  }
  auto lift = [&](const GenMonomial& m) {
    GenMonomial r;
    for (const auto& [g, p] : m) r.emplace_back(homog_index[static_cast<std::size_t>(g)], p);
    std::sort(r.begin(), r.end());
    return r;
  };
  std::map<GenMonomial, Polynomial> cache;
  for (std::size_t i = 0; i < gens.entries.size(); ++i) {
    const auto& e = gens.entries[i];
    if (e.grading.size() == 1) continue;
    std::vector<Grading> uncovered;
    std::set<GenMonomial> subs{single(static_cast<int>(i))};
    for (const auto& c : e.grading) {
      Polynomial comp = grading_component(e.poly, c, L);
      std::vector<GenMonomial> prods;
      PolyEchelon ech(e.poly.nvars());
      for (const auto& m : products_of_degree(homog, e.degree)) {
        Polynomial p = expand_monomial(m, homog, &cache);
        if (poly_grading(p, L) != GradingSum{c}) continue;
        ech.insert(p, static_cast<int>(prods.size()));
        prods.push_back(m);
      }
      std::map<int, GQ> co;
      if (ech.reduce(comp, &co).is_zero()) {
        for (const auto& [t, v] : co)
          if (!v.is_zero()) subs.insert(lift(prods[static_cast<std::size_t>(t)]));
      } else {
        uncovered.push_back(c);
      }
    }
    for (const auto& c : uncovered)
      H.push_back({e.name + grading_to_string(c), e.degree, c, true, {subs.begin(), subs.end()}});
  }
  return H;
}

int non_central_factors(const GenMonomial& m, const GeneratorSet& gens) {
  int n = 0;
  for (const auto& [g, e] : m)
    if (!gens.entries[static_cast<std::size_t>(g)].central) n += e;
  return n;
}

void sort_candidates(std::vector<GenMonomial>& v, const GeneratorSet& gens) {
  std::stable_sort(v.begin(), v.end(), [&](const GenMonomial& a, const GenMonomial& b) {
    int na = non_central_factors(a, gens), nb = non_central_factors(b, gens);
    if (na != nb) return na < nb;
    return a < b;
  });
}

std::vector<GenMonomial> admissible_products(const GeneratorSet& gens, const std::vector<WorkingFactor>& H,
                                             const GradingSum& target, int degree) {
  std::set<GenMonomial> out;
  if (target.empty()) return {};
  Grading cap(target[0].size(), 0);
  for (const auto& g : target)
    for (std::size_t k = 0; k < g.size(); ++k) cap[k] = std::max(cap[k], g[k]);

  std::vector<int> expo(H.size(), 0);
  auto emit = [&]() {
    // Expand pseudo factors into multisets of their substitutes.
    std::vector<GenMonomial> acc{GenMonomial{}};
    for (std::size_t h = 0; h < H.size(); ++h) {
      if (!expo[h]) continue;
      const auto& f = H[h];
      std::vector<GenMonomial> choices;
      if (!f.pseudo) {
        choices.push_back(power(f.substitutes[0], expo[h]));
      } else {
        std::function<void(std::size_t, int, GenMonomial)> pick = [&](std::size_t s, int left, GenMonomial cur) {
          if (left == 0) {
            choices.push_back(cur);
            return;
          }
          for (std::size_t t = s; t < f.substitutes.size(); ++t)
            pick(t, left - 1, gen_monomial_mul(cur, f.substitutes[t]));
        };
        pick(0, expo[h], {});
      }
      std::vector<GenMonomial> next;
      for (const auto& a : acc)
        for (const auto& c : choices) next.push_back(gen_monomial_mul(a, c));
      acc = std::move(next);
    }
    for (auto& m : acc) out.insert(std::move(m));
  };
  Grading cur(cap.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t h, int rem) {
    if (rem == 0) {
      if (grading_contains(target, cur)) emit();
      return;
    }
    if (h == H.size()) return;
    rec(h + 1, rem);
    const auto& f = H[h];
    int e = 0;
    while (rem >= f.degree) {
      bool fits = true;
      for (std::size_t k = 0; k < cur.size(); ++k) {
        cur[k] += f.grading[k];
        if (cur[k] > cap[k]) fits = false;
      }
      rem -= f.degree;
      ++e;
      if (!fits) break;
      expo[h] = e;
      rec(h + 1, rem);
    }
    for (std::size_t k = 0; k < cur.size(); ++k) cur[k] -= e * f.grading[k];
    expo[h] = 0;
  };
  rec(0, degree);
  std::vector<GenMonomial> v(out.begin(), out.end());
  sort_candidates(v, gens);
  return v;
}

std::vector<GenMonomial> admissible_products(const GeneratorSet& gens, int a, int b, const Algebra& L,
                                             const std::vector<WorkingFactor>& H) {
  const auto& ga = gens.entries[static_cast<std::size_t>(a)];
  const auto& gb = gens.entries[static_cast<std::size_t>(b)];
  GradingSum target = bracket_grading(ga.grading, gb.grading, L.block_rules());
  return admissible_products(gens, H, target, ga.degree + gb.degree - 1);
}

std::vector<GenMonomial> admissible_products(const GeneratorSet& gens, int a, int b, const Algebra& L) {
  return admissible_products(gens, a, b, L, working_set(gens, L));
}

long long compact_form_count(int k, int l, const std::vector<int>& counts) {
  const int n = k + l - 1;
  if (n < 0) return 0;
  // Coefficient of x^n in prod_j (1 - x^j)^(-m_j).
  std::vector<long long> c(static_cast<std::size_t>(n + 1), 0);
  c[0] = 1;
  for (std::size_t j0 = 0; j0 < counts.size(); ++j0) {
    const int j = static_cast<int>(j0) + 1;
    for (int r = 0; r < counts[j0]; ++r)
      for (int x = j; x <= n; ++x) c[static_cast<std::size_t>(x)] += c[static_cast<std::size_t>(x - j)];
  }
  return c[static_cast<std::size_t>(n)];
}

std::vector<Table1Row> table1_report(const GeneratorSet& gens, const Algebra& L,
                                     const std::vector<std::pair<std::string, std::string>>& examples) {
  auto H = working_set(gens, L);
  auto nc = gens.non_central();
  std::map<int, std::pair<int, int>> pick;
  for (const auto& [x, y] : examples) {
    int a = gens.index_of(x), b = gens.index_of(y);
    if (a < 0) throw Error(ErrorKind::unknown_name, "unknown generator: " + x);
    if (b < 0) throw Error(ErrorKind::unknown_name, "unknown generator: " + y);
    pick[gens.entries[static_cast<std::size_t>(a)].degree + gens.entries[static_cast<std::size_t>(b)].degree - 1] = {a, b};
  }
  for (std::size_t i = 0; i < nc.size(); ++i)
    for (std::size_t j = i + 1; j < nc.size(); ++j) {
      int d = gens.entries[static_cast<std::size_t>(nc[i])].degree + gens.entries[static_cast<std::size_t>(nc[j])].degree - 1;
      pick.emplace(d, std::make_pair(nc[i], nc[j]));
    }
  std::vector<Table1Row> rows;
  for (const auto& [d, ab] : pick) {
    const auto& ga = gens.entries[static_cast<std::size_t>(ab.first)];
    const auto& gb = gens.entries[static_cast<std::size_t>(ab.second)];
    Table1Row r;
    r.degree = d;
    r.compact = compact_form_count(ga.degree, gb.degree, gens.counts);
    r.grading = static_cast<long long>(admissible_products(gens, ab.first, ab.second, L, H).size());
    r.example = "{" + ga.name + "," + gb.name + "}";
    rows.push_back(r);
  }
  return rows;
}

std::string table1_csv(const std::vector<Table1Row>& rows) {
  std::ostringstream os;
  os << "degree,compact_count,grading_count,example_bracket,delta\n";
  for (const auto& r : rows)
    os << r.degree << ',' << r.compact << ',' << r.grading << ",\"" << r.example << "\"," << r.delta() << '\n';
  return os.str();
}

}  // namespace lpa
