#include "lpa/commutant.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "lpa/modular.hpp"

namespace lpa {

GenMonomial gen_monomial_mul(const GenMonomial& a, const GenMonomial& b) {
  GenMonomial r;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.push_back(b[j++]);
    } else {
      r.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return r;
}

int GeneratorSet::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (entries[i].name == name) return static_cast<int>(i);
  return -1;
}

const Generator& GeneratorSet::at(const std::string& name) const {
  int i = index_of(name);
  if (i < 0) throw Error(ErrorKind::unknown_name, "unknown generator: " + name);
  return entries[static_cast<std::size_t>(i)];
}

int GeneratorSet::degree_of(const GenMonomial& m) const {
  int d = 0;
  for (const auto& [g, e] : m) d += entries[static_cast<std::size_t>(g)].degree * e;
  return d;
}

std::string GeneratorSet::monomial_name(const GenMonomial& m) const {
  if (m.empty()) return "1";
  std::string s;
  for (const auto& [g, e] : m) {
    if (!s.empty()) s += "*";
    s += entries[static_cast<std::size_t>(g)].name;
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

std::string GeneratorSet::to_string(const GenPoly& p) const {
  if (p.empty()) return "0";
  std::string out;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    std::string c = it->second.to_string();
    std::string m = monomial_name(it->first);
    std::string term;
    if (m == "1") {
      term = c;
    } else if (it->second.is_one()) {
      term = m;
    } else if ((-it->second).is_one()) {
      term = "-" + m;
    } else {
      term = c + "*" + m;
    }
    if (!out.empty()) out += (term[0] == '-') ? " - " + term.substr(1) : " + " + term;
    else out = term;
  }
  return out;
}

std::vector<int> GeneratorSet::non_central() const {
  std::vector<int> r;
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (!entries[i].central) r.push_back(static_cast<int>(i));
  return r;
}

nlohmann::json genpoly_to_json(const GenPoly& p, const GeneratorSet& g) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : p) {
    nlohmann::json mono = nlohmann::json::object();
    for (const auto& [i, e] : m) mono[g.entries[static_cast<std::size_t>(i)].name] = e;
    terms.push_back({{"monomial", mono}, {"re", GQ::format_rational(c.re())}, {"im", GQ::format_rational(c.im())}});
  }
  return terms;
}

GenPoly genpoly_from_json(const nlohmann::json& j, const GeneratorSet& g) {
  GenPoly p;
  for (const auto& t : j) {
    GenMonomial m;
    for (const auto& [name, e] : t.at("monomial").items()) {
      int i = g.index_of(name);
      if (i < 0) throw Error(ErrorKind::unknown_name, "unknown generator in relation: " + name);
      m.emplace_back(i, e.get<int>());
    }
    std::sort(m.begin(), m.end());
    p[m] += GQ::parse(t.value("re", std::string("0")), t.value("im", std::string("0")));
  }
  return p;
}

nlohmann::json GeneratorSet::to_json() const {
  nlohmann::json ents = nlohmann::json::array();
  for (const auto& e : entries)
    ents.push_back({{"name", e.name},
                    {"degree", e.degree},
                    {"central", e.central},
                    {"grading", e.grading},
                    {"polynomial", e.poly.to_json()}});
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& r : relations) rels.push_back(genpoly_to_json(r, *this));
  return {{"zeta", zeta}, {"counts", counts}, {"solution_counts", solution_counts}, {"entries", ents},
          {"relations", rels}};
}

GeneratorSet GeneratorSet::from_json(const nlohmann::json& j, const Algebra& L) {
  GeneratorSet g;
  try {
    g.zeta = j.at("zeta").get<int>();
    g.counts = j.at("counts").get<std::vector<int>>();
    g.solution_counts = j.value("solution_counts", std::vector<int>{});
    for (const auto& e : j.at("entries")) {
      Generator gen;
      gen.name = e.at("name").get<std::string>();
      gen.degree = e.at("degree").get<int>();
      gen.central = e.at("central").get<bool>();
      gen.grading = e.at("grading").get<GradingSum>();
      gen.poly = Polynomial::from_json(e.at("polynomial"));
      if (gen.poly.nvars() != static_cast<std::size_t>(L.dim()))
        throw DimensionError("generator " + gen.name + " has wrong nvars");
      g.entries.push_back(std::move(gen));
    }
    for (const auto& r : j.value("relations", nlohmann::json::array())) g.relations.push_back(genpoly_from_json(r, g));
  } catch (const Error&) {
    throw;
  } catch (const std::exception& ex) {
    throw Error(ErrorKind::schema, std::string("generator set JSON: ") + ex.what());
  }
  return g;
}

std::uint64_t ansatz_dimension(int n, int k) {
  if (n < 1 || k < 0) throw Error(ErrorKind::usage, "ansatz_dimension needs n >= 1, k >= 0");
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n + k - 1), static_cast<unsigned long>(k));
  if (!r.fits_ulong_p()) throw Error(ErrorKind::usage, "ansatz dimension overflows 64 bits");
  return r.get_ui();
}

namespace {

GQMatrix ad_matrix(const Algebra& L, int u) {
  const auto n = static_cast<std::size_t>(L.dim());
  GQMatrix M(n, std::vector<GQ>(n));
  for (std::size_t v = 0; v < n; ++v)
    for (const auto& t : L.bracket_terms(u, static_cast<int>(v))) M[static_cast<std::size_t>(t.k)][v] = t.c;
  return M;
}

mpq_class approx_rational(double x) {
  for (long d = 1; d <= 240; ++d) {
    double y = x * static_cast<double>(d);
    double r = std::round(y);
    if (std::fabs(y - r) < 1e-7 * static_cast<double>(d)) return mpq_class(static_cast<long>(r), d);
  }
  return mpq_class(static_cast<long>(std::round(x * 1e6)), 1000000);
}

// Q(i) eigenvalues of a diagonalizable matrix, or nothing.
std::optional<std::vector<GQ>> rational_eigenvalues(const GQMatrix& M) {
  const auto n = static_cast<Eigen::Index>(M.size());
  Eigen::MatrixXcd A(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const GQ& z = M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      A(i, j) = {z.re().get_d(), z.im().get_d()};
    }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, false);
  std::vector<GQ> cands;
  for (Eigen::Index i = 0; i < n; ++i) {
    auto ev = es.eigenvalues()(i);
    GQ z(approx_rational(ev.real()), approx_rational(ev.imag()));
    if (std::find(cands.begin(), cands.end(), z) == cands.end()) cands.push_back(z);
  }
  std::sort(cands.begin(), cands.end(), [](const GQ& a, const GQ& b) { return a.compare(b) > 0; });
  std::size_t total = 0;
  for (const auto& z : cands) {
    GQMatrix S = M;
    for (std::size_t i = 0; i < M.size(); ++i) S[i][i] -= z;
    total += gq_kernel(S, M.size()).size();
  }
  if (total != M.size()) return std::nullopt;
  return cands;
}

std::string weight_key(const std::vector<GQ>& w) {
  std::string s;
  for (const auto& z : w) s += z.to_string() + "|";
  return s;
}

void enumerate_monomials(const std::vector<int>& vars, int d, std::size_t start, Monomial cur,
                         std::vector<Monomial>& out) {
  if (d == 0) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < vars.size(); ++i)
    enumerate_monomials(vars, d - 1, i, cur.mul_var(static_cast<std::size_t>(vars[i])), out);
}

void compositions(int k, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    cur.push_back(k);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int a = k; a >= 0; --a) {
    cur.push_back(a);
    compositions(k - a, parts - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

CommutantSolver::CommutantSolver(AlgebraHandle L) : L_(std::move(L)) {
  const Algebra& A = *L_;
  const auto n = static_cast<std::size_t>(A.dim());
  bool invariant = true;
  for (int u : A.subalgebra())
    for (int v = 0; v < A.dim(); ++v)
      for (const auto& t : A.bracket_terms(u, v))
        if (A.block_of(t.k) != A.block_of(v)) invariant = false;
  if (invariant) {
    solver_blocks_ = A.blocks();
  } else {
    solver_blocks_.assign(1, {});
    for (int v = 0; v < A.dim(); ++v) solver_blocks_[0].push_back(v);
  }

  std::vector<std::vector<GQ>> eigs;
  std::vector<GQMatrix> mats;
  for (int u : A.subalgebra()) {
    bool commutes = true;
    for (int h : torus_)
      if (!A.bracket_terms(u, h).empty()) commutes = false;
    if (!commutes) continue;
    GQMatrix M = ad_matrix(A, u);
    auto ev = rational_eigenvalues(M);
    if (!ev) continue;
    torus_.push_back(u);
    eigs.push_back(*ev);
    mats.push_back(std::move(M));
  }

  // Joint eigenvectors, block by block.
  struct Space {
    std::vector<std::vector<GQ>> vecs;
    std::vector<GQ> weight;
  };
  std::vector<Space> spaces;
  for (const auto& blk : solver_blocks_) {
    Space s;
    for (int v : blk) {
      std::vector<GQ> e(n);
      e[static_cast<std::size_t>(v)] = GQ(1);
      s.vecs.push_back(std::move(e));
    }
    spaces.push_back(std::move(s));
  }
  for (std::size_t h = 0; h < torus_.size(); ++h) {
    std::vector<Space> next;
    for (const auto& sp : spaces) {
      const std::size_t d = sp.vecs.size();
      std::size_t found = 0;
      for (const auto& lam : eigs[h]) {
        GQMatrix W(n, std::vector<GQ>(d));
        for (std::size_t c = 0; c < d; ++c)
          for (std::size_t i = 0; i < n; ++i) {
            GQ acc;
            for (std::size_t j = 0; j < n; ++j)
              if (!mats[h][i][j].is_zero() && !sp.vecs[c][j].is_zero()) acc.add_mul(mats[h][i][j], sp.vecs[c][j]);
            acc -= lam * sp.vecs[c][i];
            W[i][c] = acc;
          }
        auto K = gq_kernel(W, d);
        if (K.empty()) continue;
        Space ns;
        ns.weight = sp.weight;
        ns.weight.push_back(lam);
        for (const auto& cvec : K) {
          std::vector<GQ> v(n);
          for (std::size_t c = 0; c < d; ++c)
            if (!cvec[c].is_zero())
              for (std::size_t i = 0; i < n; ++i)
                if (!sp.vecs[c][i].is_zero()) v[i].add_mul(cvec[c], sp.vecs[c][i]);
          ns.vecs.push_back(std::move(v));
        }
        found += ns.vecs.size();
        next.push_back(std::move(ns));
      }
      if (found != d) throw Error(ErrorKind::internal, "torus action does not preserve a solver block");
    }
    spaces = std::move(next);
  }

  std::vector<std::vector<int>> yblocks(solver_blocks_.size());
  {
    // spaces are produced in block order; recover the block of each y from its support
    std::vector<int> solver_block_of(n, 0);
    for (std::size_t b = 0; b < solver_blocks_.size(); ++b)
      for (int v : solver_blocks_[b]) solver_block_of[static_cast<std::size_t>(v)] = static_cast<int>(b);
    for (const auto& sp : spaces)
      for (const auto& v : sp.vecs) {
        std::size_t a = P_.size();
        int blk = -1;
        for (std::size_t i = 0; i < n; ++i)
          if (!v[i].is_zero()) blk = solver_block_of[i];
        yblocks[static_cast<std::size_t>(blk)].push_back(static_cast<int>(a));
        P_.push_back(v);
        weight_.push_back(sp.weight);
      }
  }
  solver_blocks_ = yblocks;
  // y_a = sum_v P[a][v] x_v, hence x_v = sum_a Pinv[v][a] y_a.
  auto inv = gq_inverse(P_);
  if (!inv) throw Error(ErrorKind::internal, "weight basis is singular");
  Pinv_ = std::move(*inv);

  for (int u : A.subalgebra())
    if (std::find(torus_.begin(), torus_.end(), u) == torus_.end()) constraint_us_.push_back(u);
  for (int u : constraint_us_) {
    std::vector<std::vector<std::pair<int, GQ>>> per_b(n);
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<GQ> acc(n);
      for (std::size_t v = 0; v < n; ++v) {
        if (P_[b][v].is_zero()) continue;
        for (const auto& t : A.bracket_terms(u, static_cast<int>(v)))
          for (std::size_t a = 0; a < n; ++a) {
            const GQ& pi = Pinv_[static_cast<std::size_t>(t.k)][a];
            if (!pi.is_zero()) acc[a].add_mul(P_[b][v] * t.c, pi);
          }
      }
      for (std::size_t a = 0; a < n; ++a)
        if (!acc[a].is_zero()) per_b[b].emplace_back(static_cast<int>(a), acc[a]);
    }
    dlin_.push_back(std::move(per_b));
  }
}

std::vector<Polynomial> CommutantSolver::basis(int k) const {
  std::vector<Polynomial> result;
  if (k <= 0) return result;
  const auto n = static_cast<std::size_t>(L_->dim());
  const std::size_t nb = solver_blocks_.size();
  const std::size_t nt = torus_.size();
  std::vector<Polynomial> images(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<Polynomial::Term> t;
    for (std::size_t v = 0; v < n; ++v)
      if (!P_[a][v].is_zero()) t.emplace_back(Monomial::variable(v), P_[a][v]);
    images[a] = Polynomial::from_terms(n, std::move(t));
  }
  std::vector<std::vector<int>> comps;
  std::vector<int> cur;
  compositions(k, static_cast<int>(nb), cur, comps);
  for (const auto& comp : comps) {
    // weight classes per block
    std::vector<std::vector<std::pair<std::vector<GQ>, std::vector<Monomial>>>> classes(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      std::vector<Monomial> monos;
      enumerate_monomials(solver_blocks_[b], comp[b], 0, Monomial(), monos);
      std::map<std::string, std::size_t> idx;
      for (const auto& m : monos) {
        std::vector<GQ> w(nt);
        for (int a : solver_blocks_[b]) {
          unsigned e = m.exponent(static_cast<std::size_t>(a));
          if (!e) continue;
          for (std::size_t j = 0; j < nt; ++j) w[j].add_mul(GQ(static_cast<long>(e)), weight_[static_cast<std::size_t>(a)][j]);
        }
        auto key = weight_key(w);
        auto it = idx.find(key);
        if (it == idx.end()) {
          idx[key] = classes[b].size();
          classes[b].push_back({w, {m}});
        } else {
          classes[b][it->second].second.push_back(m);
        }
      }
    }
    std::vector<Monomial> columns;
    std::function<void(std::size_t, const std::vector<GQ>&, const Monomial&)> rec =
        [&](std::size_t b, const std::vector<GQ>& wsum, const Monomial& m) {
          if (b == nb) {
            for (const auto& z : wsum)
              if (!z.is_zero()) return;
            columns.push_back(m);
            return;
          }
          for (const auto& [w, monos] : classes[b]) {
            std::vector<GQ> s = wsum;
            for (std::size_t j = 0; j < nt; ++j) s[j] += w[j];
            for (const auto& mm : monos) rec(b + 1, s, m * mm);
          }
        };
    rec(0, std::vector<GQ>(nt), Monomial());
    if (columns.empty()) continue;
    std::sort(columns.begin(), columns.end());

    modp::SparseRowsGQ rows;
    std::vector<std::unordered_map<Monomial, int, MonomialHash>> rowidx(constraint_us_.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const Monomial& al = columns[c];
      for (std::size_t ui = 0; ui < constraint_us_.size(); ++ui)
        for (std::size_t b = 0; b < n; ++b) {
          unsigned e = al.exponent(b);
          if (!e) continue;
          Monomial base = al.div_var(b);
          for (const auto& [a, coef] : dlin_[ui][b]) {
            Monomial out = base.mul_var(static_cast<std::size_t>(a));
            auto [it, ins] = rowidx[ui].emplace(out, static_cast<int>(rows.size()));
            if (ins) rows.emplace_back();
            rows[static_cast<std::size_t>(it->second)].push_back({static_cast<int>(c), coef * GQ(static_cast<long>(e))});
          }
        }
    }
    modp::ExactRref R = modp::exact_rref(rows, columns.size());
    PolyEchelon ech(n);
    int tag = 0;
    for (const auto& v : R.kernel()) {
      std::vector<Polynomial::Term> t;
      for (std::size_t c = 0; c < columns.size(); ++c)
        if (!v[c].is_zero()) t.emplace_back(columns[c], v[c]);
      Polynomial yp = Polynomial::from_terms(n, std::move(t));
      ech.insert(yp.substitute(images), tag++);
    }
    for (auto& p : ech.basis()) result.push_back(std::move(p));
  }
  std::sort(result.begin(), result.end(),
            [](const Polynomial& a, const Polynomial& b) { return b.leading().first < a.leading().first; });
  return result;
}

std::vector<Polynomial> commutant_basis(const AlgebraHandle& L, int k) { return CommutantSolver(L).basis(k); }

std::vector<Polynomial> commutant_basis(const Algebra& L, int k) {
  return commutant_basis(load_algebra(L.spec()), k);
}

Polynomial restrict_to_slice(const Polynomial& p, const Algebra& L) {
  if (!L.has_proper_slice()) return p;
  return p.restrict_to(L.slice_map(), L.slice_vars().size());
}

std::vector<GenMonomial> products_of_degree(const GeneratorSet& gens, int k, std::size_t limit) {
  std::vector<GenMonomial> out;
  const std::size_t n = std::min(limit, gens.entries.size());
  GenMonomial cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int rem) {
    if (rem == 0) {
      out.push_back(cur);
      return;
    }
    if (i == n) return;
    const int d = gens.entries[i].degree;
    rec(i + 1, rem);
    if (d <= 0) return;
    for (int e = 1; e * d <= rem; ++e) {
      cur.emplace_back(static_cast<int>(i), e);
      rec(i + 1, rem - e * d);
      cur.pop_back();
    }
  };
  if (k > 0) rec(0, k);
  std::sort(out.begin(), out.end());
  return out;
}

Polynomial expand_monomial(const GenMonomial& m, const GeneratorSet& gens, std::map<GenMonomial, Polynomial>* cache) {
  if (m.empty()) {
    std::size_t n = gens.entries.empty() ? 0 : gens.entries[0].poly.nvars();
    return Polynomial::constant(n, GQ(1));
  }
  if (cache) {
    auto it = cache->find(m);
    if (it != cache->end()) return it->second;
  }
  GenMonomial rest = m;
  const int g = rest.back().first;
  if (--rest.back().second == 0) rest.pop_back();
  const Polynomial& gp = gens.entries[static_cast<std::size_t>(g)].poly;
  Polynomial r = rest.empty() ? gp : expand_monomial(rest, gens, cache) * gp;
  if (cache) (*cache)[m] = r;
  return r;
}

Polynomial expand_genpoly(const GenPoly& p, const GeneratorSet& gens, std::map<GenMonomial, Polynomial>* cache) {
  std::size_t n = gens.entries.empty() ? 0 : gens.entries[0].poly.nvars();
  Polynomial r(n);
  for (const auto& [m, c] : p) r.add_scaled(expand_monomial(m, gens, cache), c);
  return r;
}

namespace {

using RowKey = std::pair<int, Monomial>;
struct RowKeyHash {
  std::size_t operator()(const RowKey& k) const { return k.second.hash() * 31 + static_cast<std::size_t>(k.first); }
};

// Kernel of c -> sum_j c_j cols[j], each column a list of (key, value).
std::vector<std::vector<GQ>> combination_kernel(const std::vector<std::vector<std::pair<RowKey, GQ>>>& cols) {
  modp::SparseRowsGQ rows;
  std::unordered_map<RowKey, int, RowKeyHash> idx;
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& [key, v] : cols[c]) {
      auto [it, ins] = idx.emplace(key, static_cast<int>(rows.size()));
      if (ins) rows.emplace_back();
      rows[static_cast<std::size_t>(it->second)].push_back({static_cast<int>(c), v});
    }
  auto K = modp::exact_rref(rows, cols.size()).kernel();
  // lowest nonzero entry normalized to 1
  for (auto& v : K) {
    for (const auto& z : v)
      if (!z.is_zero()) {
        GQ inv = z.inverse();
        for (auto& w : v) w *= inv;
        break;
      }
  }
  return K;
}

std::vector<std::pair<RowKey, GQ>> bracket_column(const Polynomial& p, const Algebra& L, const std::vector<int>& coords) {
  std::vector<std::pair<RowKey, GQ>> col;
  for (int v : coords) {
    Polynomial b = poisson_bracket(L.coordinate(v), p, L);
    for (const auto& [m, c] : b.terms()) col.push_back({{v, m}, c});
  }
  return col;
}

GenPoly combo_to_genpoly(const std::map<int, GQ>& co, const std::vector<GenMonomial>& tag_monos) {
  GenPoly g;
  for (const auto& [tag, c] : co) g[tag_monos[static_cast<std::size_t>(tag)]] += c;
  for (auto it = g.begin(); it != g.end();) it = it->second.is_zero() ? g.erase(it) : std::next(it);
  return g;
}

}  // namespace

FilterResult filter_indecomposable(const std::vector<Polynomial>& solutions, const GeneratorSet& lower, int k,
                                   const Algebra& L) {
  for (const auto& g : lower.entries)
    if (g.degree >= k) throw Error(ErrorKind::usage, "filter_indecomposable: lower generator " + g.name + " has degree >= k");
  FilterResult fr;
  const std::size_t nfull = static_cast<std::size_t>(L.dim());
  const std::size_t nres = L.has_proper_slice() ? L.slice_vars().size() : nfull;
  auto restr = [&](const Polynomial& p) { return restrict_to_slice(p, L); };

  {
    PolyEchelon check(nres);
    int t = 0;
    for (const auto& s : solutions) check.insert(restr(s), t++);
    if (check.rank() != solutions.size())
      throw Error(ErrorKind::internal, "slice restriction is not injective at degree " + std::to_string(k));
  }

  std::map<GenMonomial, Polynomial> cache;
  auto prods = products_of_degree(lower, k);
  std::vector<GenMonomial> tag_monos;
  PolyEchelon E(nres);
  PolyEchelon central_products(nfull);
  for (const auto& m : prods) {
    Polynomial full = expand_monomial(m, lower, &cache);
    Polynomial rp = restr(full);
    std::map<int, GQ> co;
    const int tag = static_cast<int>(tag_monos.size());
    tag_monos.push_back(m);
    if (E.reduce(rp, &co).is_zero()) {
      GenPoly rel = combo_to_genpoly(co, tag_monos);
      for (auto& [mm, c] : rel) c = -c;
      rel[m] += GQ(1);
      fr.product_relations.push_back(rel);
    } else {
      E.insert(rp, tag);
    }
    bool all_central = std::all_of(m.begin(), m.end(), [&](const auto& f) {
      return lower.entries[static_cast<std::size_t>(f.first)].central;
    });
    if (all_central) central_products.insert(full, tag);
  }

  auto add_generator = [&](const Polynomial& poly, bool central) {
    const int j = static_cast<int>(fr.new_generators.size());
    const int tag = static_cast<int>(tag_monos.size());
    tag_monos.push_back({{static_cast<int>(lower.entries.size()) + j, 1}});
    E.insert(restr(poly), tag);
    fr.new_generators.push_back(poly);
    fr.central.push_back(central);
  };

  // Central candidates: Casimirs of the algebra and of the subalgebra.
  std::vector<int> outside, inside;
  std::vector<char> in_sub(nfull, 0);
  for (int u : L.subalgebra()) in_sub[static_cast<std::size_t>(u)] = 1;
  for (int v = 0; v < L.dim(); ++v) (in_sub[static_cast<std::size_t>(v)] ? inside : outside).push_back(v);
  // Subalgebra Casimirs first, then Casimirs of the whole algebra.
  std::vector<Polynomial> central_cands;
  if (!solutions.empty()) {
    if (!inside.empty()) {
      std::vector<std::vector<std::pair<RowKey, GQ>>> cols;
      for (const auto& s : solutions) {
        std::vector<std::pair<RowKey, GQ>> col;
        for (const auto& [m, c] : s.terms()) {
          bool outside_var = false;
          for (int v : outside)
            if (m.exponent(static_cast<std::size_t>(v))) outside_var = true;
          if (outside_var) col.push_back({{0, m}, c});
        }
        cols.push_back(std::move(col));
      }
      for (const auto& v : combination_kernel(cols)) {
        Polynomial z(nfull);
        for (std::size_t i = 0; i < v.size(); ++i) z.add_scaled(solutions[i], v[i]);
        central_cands.push_back(z);
      }
    }
    std::vector<std::vector<std::pair<RowKey, GQ>>> cols;
    for (const auto& s : solutions) cols.push_back(bracket_column(s, L, outside));
    for (const auto& v : combination_kernel(cols)) {
      Polynomial z(nfull);
      for (std::size_t i = 0; i < v.size(); ++i) z.add_scaled(solutions[i], v[i]);
      central_cands.push_back(z);
    }
  }
  int central_tag = 1 << 28;
  for (const auto& z : central_cands) {
    Polynomial nf = central_products.reduce(z);
    if (nf.is_zero()) continue;
    nf = nf.scaled(nf.leading().second.inverse());
    central_products.insert(nf, central_tag++);
    if (!E.reduce(restr(nf)).is_zero()) add_generator(nf, true);
  }

  // Non-central directions, one grading at a time.
  std::vector<std::pair<Grading, int>> order;
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    GradingSum gs = poly_grading(solutions[i], L);
    order.emplace_back(gs.back(), static_cast<int>(i));
  }
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (const auto& [g, i] : order) {
    const Polynomial& s = solutions[static_cast<std::size_t>(i)];
    if (!E.reduce(restr(s)).is_zero()) {
      add_generator(s, false);
      fr.chosen.push_back(i);
    }
  }
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    if (std::find(fr.chosen.begin(), fr.chosen.end(), static_cast<int>(i)) != fr.chosen.end()) continue;
    std::map<int, GQ> co;
    Polynomial rem = E.reduce(restr(solutions[i]), &co);
    if (!rem.is_zero()) throw Error(ErrorKind::internal, "solution escaped the generated span");
    fr.dependence.emplace_back(static_cast<int>(i), combo_to_genpoly(co, tag_monos));
  }
  return fr;
}

GeneratorSet extend_pipeline(const AlgebraHandle& L, GeneratorSet gens, int k_max) {
  if (k_max < 1) throw Error(ErrorKind::usage, "k_max must be >= 1");
  CommutantSolver solver(L);
  for (int k = gens.zeta + 1; k <= k_max; ++k) {
    auto sols = solver.basis(k);
    FilterResult fr = filter_indecomposable(sols, gens, k, *L);
    const char letter = static_cast<char>('a' + (k - 1) % 26);
    int index = 1;
    std::vector<Generator> fresh;
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t j = 0; j < fr.new_generators.size(); ++j) {
        if (fr.central[j] != (pass == 0)) continue;
        Generator g;
        g.name = std::string(1, fr.central[j] ? letter : static_cast<char>(letter - 'a' + 'A')) + std::to_string(index++);
        g.degree = k;
        g.poly = fr.new_generators[j];
        g.grading = poly_grading(g.poly, *L);
        g.central = fr.central[j];
        fresh.push_back(std::move(g));
      }
    for (auto& r : fr.product_relations) gens.relations.push_back(std::move(r));
    for (auto& g : fresh) gens.entries.push_back(std::move(g));
    gens.counts.push_back(static_cast<int>(fr.new_generators.size()));
    gens.solution_counts.push_back(static_cast<int>(sols.size()));
    gens.zeta = k;
  }
  return gens;
}

GeneratorSet generator_pipeline(const AlgebraHandle& L, int k_max) { return extend_pipeline(L, GeneratorSet{}, k_max); }

std::vector<CasimirCombination> casimir_combinations(const GeneratorSet& gens, const Algebra& L, int max_degree) {
  if (max_degree <= 0) max_degree = gens.zeta;
  std::vector<int> all;
  for (int v = 0; v < L.dim(); ++v) all.push_back(v);
  std::vector<CasimirCombination> out;
  std::map<GenMonomial, Polynomial> cache;
  for (int k = 1; k <= max_degree; ++k) {
    auto prods = products_of_degree(gens, k);
    if (prods.empty()) continue;
    std::vector<Polynomial> polys;
    std::vector<std::vector<std::pair<RowKey, GQ>>> cols;
    for (const auto& m : prods) {
      polys.push_back(expand_monomial(m, gens, &cache));
      cols.push_back(bracket_column(polys.back(), L, all));
    }
    PolyEchelon seen(static_cast<std::size_t>(L.dim()));
    int tag = 0;
    for (const auto& v : combination_kernel(cols)) {
      Polynomial z(static_cast<std::size_t>(L.dim()));
      GenPoly e;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) {
          z.add_scaled(polys[i], v[i]);
          e[prods[i]] = v[i];
        }
      if (z.is_zero() || !seen.insert(z, tag++)) continue;
      out.push_back({k, e, z});
    }
  }
  return out;
}

LabelingReport labeling_report(int dim_g, int dim_sub, int ell0, int N_g, int N_sub) {
  if (dim_g < 0 || dim_sub < 0 || ell0 < 0 || N_g < 0 || N_sub < 0)
    throw Error(ErrorKind::usage, "labeling_report: inputs must be nonnegative");
  if (dim_sub > dim_g) throw Error(ErrorKind::usage, "labeling_report: dim_sub exceeds dim_g");
  LabelingReport r;
  r.dim_g = dim_g;
  r.dim_sub = dim_sub;
  r.ell0 = ell0;
  r.N_g = N_g;
  r.N_sub = N_sub;
  r.M0 = dim_g - dim_sub + ell0;
  r.n0_value = mpq_class(r.M0 - N_g - N_sub, 2);
  r.n0_value.canonicalize();
  if (r.n0_value.get_den() != 1) {
    r.diagnostic = "n0 is not an integer: M0 - N(g) - N(g') is odd";
  } else if (r.n0_value < 0) {
    r.diagnostic = "n0 is negative";
  } else {
    r.n0 = static_cast<int>(r.n0_value.get_num().get_si());
  }
  return r;
}

}  // namespace lpa
