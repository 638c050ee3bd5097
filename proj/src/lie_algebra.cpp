#include "lpa/lie_algebra.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

namespace lpa {

const char* violation_name(AlgebraViolation v) {
  switch (v) {
    case AlgebraViolation::antisymmetry: return "antisymmetry";
    case AlgebraViolation::jacobi: return "jacobi";
    case AlgebraViolation::subalgebra: return "subalgebra-not-closed";
    case AlgebraViolation::block_rule: return "block-rule";
    case AlgebraViolation::malformed: return "malformed";
  }
  return "?";
}

namespace {

[[noreturn]] void fail(AlgebraViolation v, int i, int j, int k, const std::string& msg) {
  throw AlgebraError(v, {i, j, k},
                     std::string(violation_name(v)) + " violation at (" + std::to_string(i) + "," + std::to_string(j) +
                         "," + std::to_string(k) + "): " + msg);
}

[[noreturn]] void malformed(const std::string& msg) { fail(AlgebraViolation::malformed, -1, -1, -1, msg); }

int levi_civita(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0;
  // cyclic permutations of (0,1,2) are even
  return ((b - a + 3) % 3 == 1) ? 1 : -1;
}

}  // namespace

GQ Algebra::structure_constant(int i, int j, int k) const {
  for (const auto& t : bracket_terms(i, j))
    if (t.k == k) return t.c;
  return GQ(0);
}

Polynomial Algebra::coordinate_bracket(int i, int j) const {
  Polynomial r(static_cast<std::size_t>(spec_.dim));
  std::vector<Polynomial::Term> terms;
  for (const auto& t : bracket_terms(i, j)) terms.emplace_back(Monomial::variable(static_cast<std::size_t>(t.k)), t.c);
  return Polynomial::from_terms(static_cast<std::size_t>(spec_.dim), std::move(terms));
}

int Algebra::index_of(const std::string& name) const {
  for (int v = 0; v < spec_.dim; ++v)
    if (spec_.names[static_cast<std::size_t>(v)] == name) return v;
  return -1;
}

AlgebraHandle load_algebra(const LieAlgebraSpec& in) {
  std::shared_ptr<Algebra> A(new Algebra());
  LieAlgebraSpec spec = in;
  const int n = spec.dim;
  if (n <= 0) malformed("dim must be positive");
  if (static_cast<std::size_t>(n) > Monomial::kMaxVars) malformed("dim exceeds monomial capacity");
  if (spec.names.size() != static_cast<std::size_t>(n)) malformed("names length differs from dim");
  {
    std::set<std::string> seen(spec.names.begin(), spec.names.end());
    if (seen.size() != spec.names.size()) malformed("duplicate coordinate names");
  }
  auto in_range = [n](int v) { return v >= 0 && v < n; };

  // antisymmetry
  std::map<std::array<int, 3>, GQ> raw;
  for (const auto& e : spec.structure) {
    if (!in_range(e.i) || !in_range(e.j) || !in_range(e.k)) fail(AlgebraViolation::malformed, e.i, e.j, e.k, "index out of range");
    if (e.c.is_zero()) continue;
    if (e.i == e.j) fail(AlgebraViolation::antisymmetry, e.i, e.j, e.k, "C_ii^k must vanish");
    auto [it, inserted] = raw.emplace(std::array<int, 3>{e.i, e.j, e.k}, e.c);
    if (!inserted) fail(AlgebraViolation::malformed, e.i, e.j, e.k, "duplicate structure entry");
  }
  std::map<std::array<int, 3>, GQ> canon;
  for (const auto& [key, c] : raw) {
    auto [i, j, k] = key;
    if (i < j) {
      auto rev = raw.find({j, i, k});
      if (rev != raw.end() && rev->second != -c)
        fail(AlgebraViolation::antisymmetry, i, j, k, "C_ij^k != -C_ji^k");
      canon[{i, j, k}] = c;
    } else {
      auto fwd = raw.find({j, i, k});
      if (fwd == raw.end()) canon[{j, i, k}] = -c;
    }
  }
  spec.structure.clear();
  for (const auto& [key, c] : canon) spec.structure.push_back({key[0], key[1], key[2], c});

  A->table_.assign(static_cast<std::size_t>(n * n), {});
  for (const auto& e : spec.structure) {
    A->table_[static_cast<std::size_t>(e.i * n + e.j)].push_back({e.k, e.c});
    A->table_[static_cast<std::size_t>(e.j * n + e.i)].push_back({e.k, -e.c});
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& t = A->table_[static_cast<std::size_t>(i * n + j)];
      if (!t.empty()) A->pairs_.push_back({i, j, t});
    }

  // Jacobi
  auto bt = [&](int a, int b) -> const std::vector<Algebra::Term>& {
    return A->table_[static_cast<std::size_t>(a * n + b)];
  };
  std::vector<GQ> acc(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        std::fill(acc.begin(), acc.end(), GQ(0));
        const std::array<std::array<int, 3>, 3> cyc{{{i, j, k}, {j, k, i}, {k, i, j}}};
        for (const auto& [a, b, c] : cyc)
          for (const auto& t1 : bt(a, b))
            for (const auto& t2 : bt(t1.k, c)) acc[static_cast<std::size_t>(t2.k)].add_mul(t1.c, t2.c);
        for (int l = 0; l < n; ++l)
          if (!acc[static_cast<std::size_t>(l)].is_zero())
            fail(AlgebraViolation::jacobi, i, j, k, "nonzero component on coordinate " + std::to_string(l));
      }

  // subalgebra closure
  std::vector<char> in_sub(static_cast<std::size_t>(n), 0);
  for (int u : spec.subalgebra) {
    if (!in_range(u)) malformed("subalgebra index out of range");
    if (in_sub[static_cast<std::size_t>(u)]) malformed("duplicate subalgebra index");
    in_sub[static_cast<std::size_t>(u)] = 1;
  }
  for (const auto& e : spec.structure)
    if (in_sub[static_cast<std::size_t>(e.i)] && in_sub[static_cast<std::size_t>(e.j)] &&
        !in_sub[static_cast<std::size_t>(e.k)])
      fail(AlgebraViolation::subalgebra, e.i, e.j, e.k, "bracket of subalgebra elements leaves the subalgebra");

  // blocks
  if (spec.blocks.empty()) {
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) all[static_cast<std::size_t>(v)] = v;
    spec.blocks.push_back(all);
  }
  A->block_of_.assign(static_cast<std::size_t>(n), -1);
  for (std::size_t b = 0; b < spec.blocks.size(); ++b)
    for (int v : spec.blocks[b]) {
      if (!in_range(v)) malformed("block index out of range");
      if (A->block_of_[static_cast<std::size_t>(v)] != -1) malformed("blocks overlap");
      A->block_of_[static_cast<std::size_t>(v)] = static_cast<int>(b);
    }
  for (int v = 0; v < n; ++v)
    if (A->block_of_[static_cast<std::size_t>(v)] == -1) malformed("blocks do not cover coordinate " + std::to_string(v));

  const int nb = static_cast<int>(spec.blocks.size());
  std::map<std::pair<int, int>, std::set<int>> rules;
  bool declared = !spec.block_rules.empty();
  for (const auto& r : spec.block_rules) {
    if (r.r < 0 || r.r >= nb || r.s < 0 || r.s >= nb) malformed("block rule index out of range");
    auto key = std::minmax(r.r, r.s);
    auto& tg = rules[{key.first, key.second}];
    for (int t : r.targets) {
      if (t < 0 || t >= nb) malformed("block rule target out of range");
      tg.insert(t);
    }
  }
  for (const auto& e : spec.structure) {
    int r = A->block_of_[static_cast<std::size_t>(e.i)], s = A->block_of_[static_cast<std::size_t>(e.j)];
    int t = A->block_of_[static_cast<std::size_t>(e.k)];
    auto key = std::minmax(r, s);
    if (declared) {
      auto it = rules.find({key.first, key.second});
      if (it == rules.end() || !it->second.count(t))
        fail(AlgebraViolation::block_rule, e.i, e.j, e.k,
             "bracket of blocks " + std::to_string(r) + "," + std::to_string(s) + " reaches block " + std::to_string(t));
    } else {
      rules[{key.first, key.second}].insert(t);
    }
  }
  spec.block_rules.clear();
  for (const auto& [key, tg] : rules) spec.block_rules.push_back({key.first, key.second, {tg.begin(), tg.end()}});

  // slice
  A->slice_map_.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> sl = spec.slice;
  if (sl.empty())
    for (int v = 0; v < n; ++v) sl.push_back(v);
  std::sort(sl.begin(), sl.end());
  if (std::adjacent_find(sl.begin(), sl.end()) != sl.end()) malformed("duplicate slice index");
  for (int v : sl) {
    if (!in_range(v)) malformed("slice index out of range");
    A->slice_map_[static_cast<std::size_t>(v)] = static_cast<int>(A->slice_vars_.size());
    A->slice_vars_.push_back(v);
  }
  for (int v = 0; v < n; ++v)
    if (A->slice_map_[static_cast<std::size_t>(v)] < 0) A->off_slice_.push_back(v);

  A->spec_ = std::move(spec);
  return A;
}

Polynomial poisson_bracket(const Polynomial& p, const Polynomial& q, const Algebra& L) {
  const std::size_t n = static_cast<std::size_t>(L.dim());
  if (p.nvars() != n || q.nvars() != n)
    throw DimensionError("poisson_bracket: operands must live in the algebra's " + std::to_string(n) + " coordinates");
  Polynomial result(n);
  if (p.is_zero() || q.is_zero()) return result;
  std::vector<Polynomial> dp(n), dq(n);
  std::vector<char> hp(n, 0), hq(n, 0);
  for (const auto& t : p.terms())
    for (std::size_t v = 0; v < n; ++v)
      if (t.first.exponent(v)) hp[v] = 1;
  for (const auto& t : q.terms())
    for (std::size_t v = 0; v < n; ++v)
      if (t.first.exponent(v)) hq[v] = 1;
  for (std::size_t v = 0; v < n; ++v) {
    if (hp[v]) dp[v] = p.partial(v);
    if (hq[v]) dq[v] = q.partial(v);
  }
  std::unordered_map<Monomial, GQ, MonomialHash> acc;
  for (const auto& pe : L.pairs()) {
    if (!hp[static_cast<std::size_t>(pe.i)] || !hq[static_cast<std::size_t>(pe.j)]) continue;
    const auto& a = dp[static_cast<std::size_t>(pe.i)];
    const auto& b = dq[static_cast<std::size_t>(pe.j)];
    for (const auto& [ma, ca] : a.terms())
      for (const auto& [mb, cb] : b.terms()) {
        Monomial m = ma * mb;
        GQ c = ca * cb;
        for (const auto& t : pe.terms) acc[m.mul_var(static_cast<std::size_t>(t.k))].add_mul(c, t.c);
      }
  }
  std::vector<Polynomial::Term> terms;
  terms.reserve(acc.size());
  for (auto& kv : acc)
    if (!kv.second.is_zero()) terms.emplace_back(kv.first, std::move(kv.second));
  std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return Polynomial::from_sorted_terms(n, std::move(terms));
}

LieAlgebraSpec su4_supermultiplet() {
  LieAlgebraSpec s;
  s.name = "su4";
  s.dim = 15;
  s.names = {"s1", "s2", "s3", "t1", "t2", "t3"};
  for (int i = 1; i <= 3; ++i)
    for (int a = 1; a <= 3; ++a) s.names.push_back("q" + std::to_string(i) + std::to_string(a));
  auto S = [](int i) { return i; };
  auto T = [](int a) { return 3 + a; };
  auto Q = [](int i, int a) { return 6 + 3 * i + a; };
  const GQ I = GQ::imag_unit();
  const GQ I4 = GQ(mpq_class(0), mpq_class(1, 4));
  std::map<std::array<int, 3>, GQ> c;
  auto add = [&](int x, int y, int z, const GQ& v) {
    if (x < y && !v.is_zero()) c[{x, y, z}] += v;
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        int e = levi_civita(i, j, k);
        if (e == 0) continue;
        add(S(i), S(j), S(k), I * GQ(e));
        add(T(i), T(j), T(k), I * GQ(e));
        for (int a = 0; a < 3; ++a) {
          // {s_i, q_ja} = i eps_ijk q_ka ; {t_a, q_ib} = i eps_abg q_ig
          add(S(i), Q(j, a), Q(k, a), I * GQ(e));
          add(T(i), Q(a, j), Q(a, k), I * GQ(e));
        }
      }
  // {q_ia, q_jb} = i/4 (delta_ab eps_ijk s_k + delta_ij eps_abg t_g)
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 3; ++a)
      for (int j = 0; j < 3; ++j)
        for (int b = 0; b < 3; ++b)
          for (int k = 0; k < 3; ++k) {
            if (a == b) add(Q(i, a), Q(j, b), S(k), I4 * GQ(levi_civita(i, j, k)));
            if (i == j) add(Q(i, a), Q(j, b), T(k), I4 * GQ(levi_civita(a, b, k)));
          }
  for (const auto& [key, v] : c)
    if (!v.is_zero()) s.structure.push_back({key[0], key[1], key[2], v});
  s.blocks = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8, 9, 10, 11, 12, 13, 14}};
  s.subalgebra = {0, 1, 2, 3, 4, 5};
  s.block_rules = {{0, 0, {0}}, {0, 1, {}}, {0, 2, {2}}, {1, 1, {1}}, {1, 2, {2}}, {2, 2, {0, 1}}};
  s.slice = {0, 1, 2, 3, 4, 5, 6, 10, 14};
  return s;
}

LieAlgebraSpec su2_spec() {
  LieAlgebraSpec s;
  s.name = "su2";
  s.dim = 3;
  s.names = {"x1", "x2", "x3"};
  const GQ I = GQ::imag_unit();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        int e = levi_civita(i, j, k);
        if (e != 0) s.structure.push_back({i, j, k, I * GQ(e)});
      }
  s.blocks = {{0, 1, 2}};
  return s;
}

nlohmann::json LieAlgebraSpec::to_json() const {
  nlohmann::json st = nlohmann::json::array();
  for (const auto& e : structure)
    st.push_back({{"i", e.i}, {"j", e.j}, {"k", e.k}, {"re", GQ::format_rational(e.c.re())},
                  {"im", GQ::format_rational(e.c.im())}});
  nlohmann::json rules = nlohmann::json::array();
  for (const auto& r : block_rules) rules.push_back({{"r", r.r}, {"s", r.s}, {"targets", r.targets}});
  nlohmann::json j = {{"dim", dim}, {"names", names}, {"blocks", blocks}, {"subalgebra", subalgebra}, {"structure", st}};
  if (!name.empty()) j["name"] = name;
  if (!block_rules.empty()) j["block_rules"] = rules;
  if (!slice.empty()) j["slice"] = slice;
  return j;
}

LieAlgebraSpec LieAlgebraSpec::from_json(const nlohmann::json& j) {
  LieAlgebraSpec s;
  try {
    if (!j.is_object()) throw Error(ErrorKind::schema, "algebra JSON must be an object");
    for (const char* key : {"dim", "names", "structure"})
      if (!j.contains(key)) throw Error(ErrorKind::schema, std::string("algebra JSON missing ") + key);
    s.dim = j.at("dim").get<int>();
    s.names = j.at("names").get<std::vector<std::string>>();
    if (j.contains("name")) s.name = j.at("name").get<std::string>();
    if (j.contains("blocks")) s.blocks = j.at("blocks").get<std::vector<std::vector<int>>>();
    if (j.contains("subalgebra")) s.subalgebra = j.at("subalgebra").get<std::vector<int>>();
    if (j.contains("slice")) s.slice = j.at("slice").get<std::vector<int>>();
    for (const auto& e : j.at("structure")) {
      StructureEntry se;
      se.i = e.at("i").get<int>();
      se.j = e.at("j").get<int>();
      se.k = e.at("k").get<int>();
      se.c = GQ::parse(e.value("re", std::string("0")), e.value("im", std::string("0")));
      s.structure.push_back(se);
    }
    if (j.contains("block_rules"))
      for (const auto& r : j.at("block_rules"))
        s.block_rules.push_back({r.at("r").get<int>(), r.at("s").get<int>(), r.at("targets").get<std::vector<int>>()});
  } catch (const Error&) {
    throw;
  } catch (const std::exception& ex) {
    throw Error(ErrorKind::schema, std::string("algebra JSON: ") + ex.what());
  }
  return s;
}

}  // namespace lpa
