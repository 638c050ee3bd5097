#include "lpa/closure.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "lpa/invariants.hpp"
#include "lpa/parallel.hpp"

namespace lpa {

GenPoly genpoly_mul(const GenPoly& a, const GenPoly& b) {
  GenPoly r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) r[gen_monomial_mul(ma, mb)] += ca * cb;
  for (auto it = r.begin(); it != r.end();) it = it->second.is_zero() ? r.erase(it) : std::next(it);
  return r;
}

GenPoly genpoly_add(const GenPoly& a, const GenPoly& b, const GQ& scale) {
  GenPoly r = a;
  for (const auto& [m, c] : b) r[m] += c * scale;
  for (auto it = r.begin(); it != r.end();) it = it->second.is_zero() ? r.erase(it) : std::next(it);
  return r;
}

GenPoly to_genpoly(const expr::Node& n, const GeneratorSet& gens) {
  expr::Interp<GenPoly> in;
  in.name = [&](const std::string& s) {
    int g = gens.index_of(s);
    if (g < 0) throw Error(ErrorKind::unknown_name, "unknown generator: " + s);
    return GenPoly{{GenMonomial{{g, 1}}, GQ(1)}};
  };
  in.constant = [](const GQ& c) { return c.is_zero() ? GenPoly{} : GenPoly{{GenMonomial{}, c}}; };
  in.add = [](const GenPoly& a, const GenPoly& b) { return genpoly_add(a, b); };
  in.mul = genpoly_mul;
  in.scale = [](const GQ& c, const GenPoly& a) { return genpoly_add({}, a, c); };
  return expr::evaluate(n, in);
}

BracketEngine::BracketEngine(GeneratorSet gens, const Algebra& L) : gens_(std::move(gens)), L_(&L), S_(L) {
  for (const auto& g : gens_.entries) {
    jets_.push_back(S_.jet(g.poly));
    named_[g.name] = g.poly;
  }
}

int BracketEngine::index_of(const std::string& name) const {
  int g = gens_.index_of(name);
  if (g < 0) throw Error(ErrorKind::unknown_name, "unknown generator: " + name);
  return g;
}

int BracketEngine::add_generator(Generator g) {
  if (gens_.index_of(g.name) >= 0) throw Error(ErrorKind::usage, "duplicate generator name " + g.name);
  g.degree = g.poly.degree();
  if (g.grading.empty()) g.grading = poly_grading(g.poly, *L_);
  jets_.push_back(S_.jet(g.poly));
  named_[g.name] = g.poly;
  gens_.zeta = std::max(gens_.zeta, g.degree);
  gens_.counts.resize(static_cast<std::size_t>(gens_.zeta), 0);
  ++gens_.counts[static_cast<std::size_t>(g.degree - 1)];
  gens_.entries.push_back(std::move(g));
  return static_cast<int>(gens_.entries.size()) - 1;
}

Polynomial BracketEngine::value(const GenMonomial& m) {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = values_.find(m);
    if (it != values_.end()) return it->second;
  }
  Polynomial v = Polynomial::constant(S_.nvars(), GQ(1));
  for (const auto& [g, e] : m)
    for (int k = 0; k < e; ++k) v = v * jets_[static_cast<std::size_t>(g)].value;
  std::lock_guard<std::mutex> lk(mu_);
  return values_.emplace(m, std::move(v)).first->second;
}

Polynomial BracketEngine::value(const GenPoly& p) {
  Polynomial r(S_.nvars());
  for (const auto& [m, c] : p) r.add_scaled(value(m), c);
  return r;
}

SliceContext::Jet BracketEngine::jet(const GenPoly& p) const {
  SliceContext::Jet acc = S_.constant(GQ(0));
  for (const auto& [m, c] : p) {
    SliceContext::Jet t = S_.constant(c);
    for (const auto& [g, e] : m)
      for (int k = 0; k < e; ++k) t = S_.mul(t, jets_[static_cast<std::size_t>(g)]);
    acc = S_.add(acc, t);
  }
  return acc;
}

Polynomial BracketEngine::bracket(int a, int b) {
  if (a == b) return Polynomial(S_.nvars());
  if (a > b) return -bracket(b, a);
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = brackets_.find({a, b});
    if (it != brackets_.end()) return it->second;
  }
  Polynomial v = S_.bracket(jets_[static_cast<std::size_t>(a)], jets_[static_cast<std::size_t>(b)]);
  std::lock_guard<std::mutex> lk(mu_);
  return brackets_.emplace(std::make_pair(a, b), std::move(v)).first->second;
}

namespace {

// Bracket results carry no off-slice derivatives.
struct EV {
  SliceContext::Jet j;
  bool value_only = false;
};

EV value_only(Polynomial v) { return {{std::move(v), {}}, true}; }

}  // namespace

Polynomial BracketEngine::evaluate(const expr::Node& n) {
  expr::Interp<EV> in;
  in.name = [&](const std::string& s) { return EV{jets_[static_cast<std::size_t>(index_of(s))], false}; };
  in.constant = [&](const GQ& c) { return EV{S_.constant(c), false}; };
  in.add = [&](const EV& a, const EV& b) {
    if (a.value_only || b.value_only) return value_only(a.j.value + b.j.value);
    return EV{S_.add(a.j, b.j), false};
  };
  in.mul = [&](const EV& a, const EV& b) {
    if (a.value_only || b.value_only) return value_only(a.j.value * b.j.value);
    return EV{S_.mul(a.j, b.j), false};
  };
  in.scale = [&](const GQ& c, const EV& a) {
    if (a.value_only) return value_only(a.j.value.scaled(c));
    return EV{S_.scale(c, a.j), false};
  };
  in.bracket = [&](const EV& a, const EV& b) {
    if (a.value_only || b.value_only) throw Error(ErrorKind::usage, "nested brackets are not supported");
    return value_only(S_.bracket(a.j, b.j));
  };
  return expr::evaluate(n, in).j.value;
}

Polynomial BracketEngine::evaluate_full(const expr::Node& n) const { return eval_polynomial(n, *L_, named_); }

namespace {

struct Solve {
  GenPoly coefficients;
  Polynomial remainder;
};

Solve solve_in(const Polynomial& target, const std::vector<GenMonomial>& cands,
               const std::function<Polynomial(const GenMonomial&)>& val, std::size_t nvars) {
  PolyEchelon ech(nvars);
  for (std::size_t t = 0; t < cands.size(); ++t) ech.insert(val(cands[t]), static_cast<int>(t));
  std::map<int, GQ> co;
  Solve s;
  s.remainder = ech.reduce(target, &co);
  for (const auto& [t, c] : co)
    if (!c.is_zero()) s.coefficients[cands[static_cast<std::size_t>(t)]] += c;
  return s;
}

void check_degrees(int degree, const std::vector<GenMonomial>& cands, const GeneratorSet& gens) {
  for (const auto& m : cands)
    if (gens.degree_of(m) != degree)
      throw DimensionError("candidate " + gens.monomial_name(m) + " has degree " + std::to_string(gens.degree_of(m)) +
                           ", target has degree " + std::to_string(degree));
}

Polynomial subtract_expansion(Polynomial target, const GenPoly& co, const GeneratorSet& gens) {
  std::map<GenMonomial, Polynomial> cache;
  for (const auto& [m, c] : co) target.add_scaled(expand_monomial(m, gens, &cache), -c);
  return target;
}

}  // namespace

BracketExpansion expand_in_generators(const Polynomial& target, const std::vector<GenMonomial>& candidates,
                                      const GeneratorSet& gens, const Algebra& L) {
  BracketExpansion x;
  x.candidates = candidates;
  if (target.is_zero()) return x;
  x.degree = target.degree();
  if (!target.is_homogeneous()) throw DimensionError("target is not homogeneous");
  check_degrees(x.degree, candidates, gens);
  SliceContext S(L);
  std::map<GenMonomial, Polynomial> cache;
  auto val = [&](const GenMonomial& m) { return S.restrict(expand_monomial(m, gens, &cache)); };
  Solve s = solve_in(S.restrict(target), candidates, val, S.nvars());
  x.coefficients = std::move(s.coefficients);
  Polynomial r = subtract_expansion(target, x.coefficients, gens);
  if (!r.is_zero()) x.residual = std::move(r);
  return x;
}

BracketExpansion expand_bracket(BracketEngine& E, int a, int b, const std::vector<GenMonomial>& candidates) {
  const auto& gens = E.generators();
  const auto& ga = gens.entries[static_cast<std::size_t>(a)];
  const auto& gb = gens.entries[static_cast<std::size_t>(b)];
  BracketExpansion x;
  x.a = ga.name;
  x.b = gb.name;
  x.degree = ga.degree + gb.degree - 1;
  x.candidates = candidates;
  check_degrees(x.degree, candidates, gens);
  Polynomial target = E.bracket(a, b);
  if (target.is_zero()) return x;
  Solve s = solve_in(target, candidates, [&](const GenMonomial& m) { return E.value(m); }, E.slice().nvars());
  x.coefficients = std::move(s.coefficients);
  if (!s.remainder.is_zero())
    x.residual = subtract_expansion(poisson_bracket(ga.poly, gb.poly, E.algebra()), x.coefficients, gens);
  return x;
}

BracketExpansion expand_bracket(BracketEngine& E, int a, int b) {
  return expand_bracket(E, a, b, admissible_products(E.generators(), a, b, E.algebra()));
}

namespace {

std::vector<std::string> split_sides(const std::string& s) {
  std::vector<std::string> out(1);
  int depth = 0;
  for (char c : s) {
    if (c == '(' || c == '{') ++depth;
    if (c == ')' || c == '}') --depth;
    if (c == '=' && depth == 0) {
      out.emplace_back();
      continue;
    }
    out.back() += c;
  }
  for (auto& x : out) {
    auto b = x.find_first_not_of(" \t\n");
    auto e = x.find_last_not_of(" \t\n");
    x = b == std::string::npos ? "" : x.substr(b, e - b + 1);
  }
  return out;
}

}  // namespace

std::vector<IdentityCheck> verify_equation(BracketEngine& E, const std::string& chain, bool full_diff) {
  auto parts = expr::parse_equation(chain);
  if (parts.size() < 2) throw Error(ErrorKind::parse, "expected an equation: " + chain);
  auto text = split_sides(chain);
  std::vector<IdentityCheck> out;
  const expr::Node& last = *parts.back();
  Polynomial rv = E.evaluate(last);
  for (std::size_t k = 0; k + 1 < parts.size(); ++k) {
    IdentityCheck c;
    c.lhs = text[k];
    c.rhs = text.back();
    Polynomial d = E.evaluate(*parts[k]) - rv;
    c.holds = d.is_zero();
    if (c.holds)
      c.diff = Polynomial(static_cast<std::size_t>(E.algebra().dim()));
    else
      c.diff = full_diff ? E.evaluate_full(*parts[k]) - E.evaluate_full(last) : d;
    out.push_back(std::move(c));
  }
  return out;
}

IdentityCheck verify_bracket_identity(BracketEngine& E, const std::string& a, const std::string& b,
                                      const std::string& rhs, bool full_diff) {
  E.index_of(a);
  E.index_of(b);
  return verify_equation(E, "{" + a + ", " + b + "} = " + rhs, full_diff).front();
}

const BracketExpansion* BracketTable::find(const std::string& a, const std::string& b) const {
  for (const auto& p : pairs)
    if (p.a == a && p.b == b) return &p;
  return nullptr;
}

nlohmann::json BracketTable::to_json() const {
  nlohmann::json ps = nlohmann::json::array();
  for (const auto& p : pairs)
    ps.push_back({{"lhs", {p.a, p.b}},
                  {"terms", genpoly_to_json(p.coefficients, gens)},
                  {"residual", p.residual ? p.residual->to_json() : nlohmann::json(nullptr)}});
  nlohmann::json pr = nlohmann::json::array();
  for (const auto& g : promoted)
    pr.push_back({{"name", g.name},
                  {"degree", g.degree},
                  {"source", g.source},
                  {"poly", gens.at(g.name).poly.to_json()}});
  return {{"pairs", ps}, {"closed", closed}, {"d", d}, {"promoted", pr}};
}

std::string BracketTable::summary() const {
  std::ostringstream os;
  std::size_t bad = 0;
  for (const auto& p : pairs) bad += p.residual ? 1 : 0;
  os << "closed: " << (closed ? "yes" : "no") << "\n";
  os << "d: " << d << "\n";
  os << "pairs: " << pairs.size() << ", with residual: " << bad << "\n";
  os << "new generators:";
  if (promoted.empty()) os << " none";
  for (const auto& g : promoted) os << " " << g.name << " (degree " << g.degree << ", from " << g.source << ")";
  os << "\n";
  return os.str();
}

namespace {

std::string fresh_name(const GeneratorSet& gens, int degree) {
  const char letter = static_cast<char>(degree <= 26 ? 'A' + degree - 1 : 'Z');
  for (int k = 1;; ++k) {
    std::string n = std::string(1, letter) + std::to_string(k);
    if (gens.index_of(n) < 0) return n;
  }
}

void check_commutant(const Polynomial& r, const Algebra& L, const std::string& what) {
  for (int v : L.subalgebra())
    if (!poisson_bracket(L.coordinate(v), r, L).is_zero())
      throw Error(ErrorKind::internal, "residual of " + what + " does not commute with " + L.names()[static_cast<std::size_t>(v)]);
}

}  // namespace

BracketTable close_algebra(GeneratorSet gens, const Algebra& L, const ClosureOptions& opt) {
  BracketEngine E(std::move(gens), L);
  BracketTable T;
  auto H = working_set(E.generators(), L);

  auto pair_degree = [&](int a, int b) {
    return E.generators().entries[static_cast<std::size_t>(a)].degree +
           E.generators().entries[static_cast<std::size_t>(b)].degree - 1;
  };
  auto pairs_of = [&](int D) {
    std::vector<std::pair<int, int>> P;
    auto nc = E.generators().non_central();
    for (std::size_t i = 0; i < nc.size(); ++i)
      for (std::size_t j = i + 1; j < nc.size(); ++j)
        if (pair_degree(nc[i], nc[j]) == D) P.emplace_back(nc[i], nc[j]);
    return P;
  };
  auto top_degree = [&]() {
    int m = 0;
    auto nc = E.generators().non_central();
    for (std::size_t i = 0; i < nc.size(); ++i)
      for (std::size_t j = i + 1; j < nc.size(); ++j) m = std::max(m, pair_degree(nc[i], nc[j]));
    return m;
  };
  auto solve_all = [&](const std::vector<std::pair<int, int>>& P, std::vector<BracketExpansion>& R,
                       const std::vector<std::size_t>& which) {
    parallel_for(which.size(), [&](std::size_t k) {
      auto [a, b] = P[which[k]];
      R[which[k]] = expand_bracket(E, a, b, admissible_products(E.generators(), a, b, L, H));
    });
  };

  for (int D = 1; D <= top_degree(); ++D) {
    if (opt.max_bracket_degree > 0 && D > opt.max_bracket_degree) break;
    auto P = pairs_of(D);
    if (P.empty()) continue;
    std::vector<BracketExpansion> R(P.size());
    std::vector<std::size_t> all(P.size());
    for (std::size_t k = 0; k < P.size(); ++k) all[k] = k;
    solve_all(P, R, all);

    std::vector<std::size_t> failed;
    for (std::size_t k = 0; k < R.size(); ++k)
      if (R[k].residual) failed.push_back(k);
    if (opt.promote && !failed.empty()) {
      PolyEchelon span(E.slice().nvars());
      int tag = 0;
      for (const auto& m : products_of_degree(E.generators(), D)) span.insert(E.value(m), tag++);
      bool added = false;
      for (std::size_t k : failed) {
        const Polynomial& r = *R[k].residual;
        const std::string src = "{" + R[k].a + "," + R[k].b + "}";
        check_commutant(r, L, src);
        for (const auto& c : poly_grading(r, L)) {
          Polynomial comp = grading_component(r, c, L);
          Polynomial s = E.slice().restrict(comp);
          if (span.reduce(s).is_zero()) continue;
          Polynomial g = comp.scaled(GQ(mpq_class(0), mpq_class(-1)));
          g = g.scaled(g.leading().second.inverse());
          Generator gen;
          gen.name = fresh_name(E.generators(), D);
          gen.poly = std::move(g);
          gen.grading = {c};
          E.add_generator(gen);
          span.insert(E.slice().restrict(gen.poly), tag++);
          T.promoted.push_back({gen.name, D, src});
          added = true;
        }
      }
      if (added) {
        H = working_set(E.generators(), L);
        solve_all(P, R, failed);
      }
    }
    for (auto& x : R) T.pairs.push_back(std::move(x));
  }

  if (opt.include_centrals) {
    const auto& G = E.generators();
    for (std::size_t a = 0; a < G.entries.size(); ++a) {
      if (!G.entries[a].central) continue;
      for (std::size_t b = 0; b < G.entries.size(); ++b) {
        if (a == b) continue;
        BracketExpansion x;
        x.a = G.entries[a].name;
        x.b = G.entries[b].name;
        x.degree = G.entries[a].degree + G.entries[b].degree - 1;
        if (!E.bracket(static_cast<int>(a), static_cast<int>(b)).is_zero())
          x.residual = poisson_bracket(G.entries[a].poly, G.entries[b].poly, L);
        T.pairs.push_back(std::move(x));
      }
    }
  }

  T.gens = E.generators();
  T.closed = std::none_of(T.pairs.begin(), T.pairs.end(), [](const BracketExpansion& x) { return x.residual.has_value(); });
  for (const auto& p : T.pairs)
    for (const auto& [m, c] : p.coefficients) T.d = std::max(T.d, non_central_factors(m, T.gens));
  return T;
}

Polynomial jacobi_defect(BracketEngine& E, const BracketTable& T, int a, int b, int c) {
  const auto& G = E.generators();
  auto inner = [&](int x, int y) -> GenPoly {
    const auto& nx = G.entries[static_cast<std::size_t>(x)];
    const auto& ny = G.entries[static_cast<std::size_t>(y)];
    if (x == y || nx.central || ny.central) return {};
    if (const auto* p = T.find(nx.name, ny.name)) return p->coefficients;
    if (const auto* p = T.find(ny.name, nx.name)) return genpoly_add({}, p->coefficients, GQ(-1));
    throw Error(ErrorKind::usage, "bracket table has no entry for {" + nx.name + "," + ny.name + "}");
  };
  Polynomial out(E.slice().nvars());
  const int t[3] = {a, b, c};
  for (int k = 0; k < 3; ++k) {
    int x = t[k], y = t[(k + 1) % 3], z = t[(k + 2) % 3];
    out += E.slice().bracket(E.jet(x), E.jet(inner(y, z)));
  }
  return out;
}

std::vector<GenPoly> find_relations(BracketEngine& E, int degree) {
  const auto prods = products_of_degree(E.generators(), degree);
  PolyEchelon ech(E.slice().nvars());
  std::vector<GenPoly> out;
  for (std::size_t t = 0; t < prods.size(); ++t) {
    Polynomial v = E.value(prods[t]);
    std::map<int, GQ> co;
    if (ech.reduce(v, &co).is_zero()) {
      GenPoly r{{prods[t], GQ(1)}};
      for (const auto& [k, c] : co) r[prods[static_cast<std::size_t>(k)]] -= c;
      for (auto it = r.begin(); it != r.end();) it = it->second.is_zero() ? r.erase(it) : std::next(it);
      out.push_back(std::move(r));
    } else {
      ech.insert(v, static_cast<int>(t));
    }
  }
  return out;
}

bool relation_holds(BracketEngine& E, const GenPoly& r) {
  std::set<int> degs;
  for (const auto& [m, c] : r) degs.insert(E.generators().degree_of(m));
  return degs.size() <= 1 && E.value(r).is_zero();
}

std::size_t genpoly_rank(const std::vector<GenPoly>& v) {
  std::map<GenMonomial, std::size_t> col;
  for (const auto& b : v)
    for (const auto& [m, c] : b) col.emplace(m, 0);
  std::size_t k = 0;
  for (auto& [m, i] : col) i = k++;
  GQMatrix M;
  for (const auto& b : v) {
    std::vector<GQ> row(col.size());
    for (const auto& [m, c] : b) row[col.at(m)] += c;
    M.push_back(std::move(row));
  }
  return gq_rref(M, col.size()).size();
}

bool in_span(const std::vector<GenPoly>& basis, const GenPoly& r) {
  auto with = basis;
  with.push_back(r);
  return genpoly_rank(basis) == genpoly_rank(with);
}

std::vector<GenPoly> induced_relations(const GeneratorSet& gens, const std::map<int, std::vector<GenPoly>>& lower,
                                       int degree) {
  std::vector<GenPoly> out;
  for (const auto& [d, rels] : lower) {
    if (d >= degree) continue;
    for (const auto& m : products_of_degree(gens, degree - d))
      for (const auto& r : rels) out.push_back(genpoly_mul(r, GenPoly{{m, GQ(1)}}));
  }
  return out;
}

}  // namespace lpa
