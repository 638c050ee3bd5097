#include "lpa/invariants.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace lpa {

nlohmann::json ContractionPattern::to_json() const {
  nlohmann::json fs = nlohmann::json::array();
  for (const auto& f : factors) fs.push_back({{"sym", f.sym}, {"idx", f.idx}});
  return {{"name", name}, {"factors", fs}};
}

ContractionPattern ContractionPattern::from_json(const nlohmann::json& j) {
  ContractionPattern p;
  try {
    p.name = j.at("name").get<std::string>();
    for (const auto& f : j.at("factors"))
      p.factors.push_back({f.at("sym").get<std::string>(), f.at("idx").get<std::vector<std::string>>()});
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::schema, std::string("contraction pattern: ") + e.what());
  }
  return p;
}

std::string data_dir() {
  if (const char* d = std::getenv("LPA_DATA_DIR"); d && *d) return d;
  return LPA_DATA_DIR;
}

namespace {

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot read " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::schema, path + ": " + e.what());
  }
}

int levi(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0;
  // parity of the permutation (a, b, c) of (0, 1, 2)
  int inv = (a > b) + (a > c) + (b > c);
  return inv % 2 == 0 ? 1 : -1;
}

}  // namespace

std::vector<ContractionPattern> load_patterns(const std::string& path) {
  auto j = read_json_file(path.empty() ? data_dir() + "/patterns.json" : path);
  std::vector<ContractionPattern> out;
  try {
    for (const auto& p : j.at("patterns")) out.push_back(ContractionPattern::from_json(p));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::schema, std::string("patterns file: ") + e.what());
  }
  return out;
}

Polynomial contract_invariant(const ContractionPattern& pattern, const Algebra& L) {
  std::map<std::string, int> label_id;
  std::vector<int> uses;
  struct F {
    int kind;  // 0 s, 1 t, 2 q, 3 eps, 4 delta
    std::vector<int> lab;
  };
  std::vector<F> fs;
  for (const auto& f : pattern.factors) {
    static const std::map<std::string, std::pair<int, std::size_t>> kinds = {
        {"s", {0, 1}}, {"t", {1, 1}}, {"q", {2, 2}}, {"eps", {3, 3}}, {"delta", {4, 2}}};
    auto k = kinds.find(f.sym);
    if (k == kinds.end()) throw Error(ErrorKind::schema, pattern.name + ": unknown tensor symbol " + f.sym);
    if (f.idx.size() != k->second.second)
      throw Error(ErrorKind::schema, pattern.name + ": wrong index count for " + f.sym);
    F g{k->second.first, {}};
    for (const auto& l : f.idx) {
      auto [it, fresh] = label_id.emplace(l, static_cast<int>(uses.size()));
      if (fresh) uses.push_back(0);
      ++uses[static_cast<std::size_t>(it->second)];
      g.lab.push_back(it->second);
    }
    fs.push_back(std::move(g));
  }
  for (const auto& [l, id] : label_id)
    if (uses[static_cast<std::size_t>(id)] != 2)
      throw Error(ErrorKind::schema, pattern.name + ": dangling index label " + l);

  // Coordinate lookup by name.
  int sv[3], tv[3], qv[3][3];
  for (int a = 0; a < 3; ++a) {
    sv[a] = L.index_of("s" + std::to_string(a + 1));
    tv[a] = L.index_of("t" + std::to_string(a + 1));
    for (int b = 0; b < 3; ++b) qv[a][b] = L.index_of("q" + std::to_string(a + 1) + std::to_string(b + 1));
  }

  const std::size_t n = uses.size();
  const std::size_t nv = static_cast<std::size_t>(L.dim());
  std::vector<int> val(n, 0);
  std::unordered_map<Monomial, long, MonomialHash> acc;
  std::vector<unsigned> exps(nv);
  for (;;) {
    long w = 1;
    std::fill(exps.begin(), exps.end(), 0U);
    for (const auto& f : fs) {
      auto v = [&](std::size_t k) { return val[static_cast<std::size_t>(f.lab[k])]; };
      switch (f.kind) {
        case 0: ++exps[static_cast<std::size_t>(sv[v(0)])]; break;
        case 1: ++exps[static_cast<std::size_t>(tv[v(0)])]; break;
        case 2: ++exps[static_cast<std::size_t>(qv[v(0)][v(1)])]; break;
        case 3: w *= levi(v(0), v(1), v(2)); break;
        case 4: w *= v(0) == v(1) ? 1 : 0; break;
      }
      if (w == 0) break;
    }
    if (w != 0) acc[Monomial::from_exponents(exps)] += w;
    std::size_t k = 0;
    while (k < n && ++val[k] == 3) val[k++] = 0;
    if (k == n) break;
  }
  std::vector<Polynomial::Term> terms;
  for (const auto& [m, c] : acc)
    if (c != 0) terms.emplace_back(m, GQ(c));
  return Polynomial::from_terms(nv, std::move(terms));
}

std::map<std::string, Polynomial> contraction_invariants(const Algebra& L) {
  std::map<std::string, Polynomial> out;
  for (const auto& p : load_patterns()) out[p.name] = contract_invariant(p, L);
  return out;
}

Polynomial eval_polynomial(const expr::Node& n, const Algebra& L, const std::map<std::string, Polynomial>& named) {
  const std::size_t nv = static_cast<std::size_t>(L.dim());
  expr::Interp<Polynomial> in;
  in.name = [&](const std::string& s) {
    auto it = named.find(s);
    if (it != named.end()) return it->second;
    int v = L.index_of(s);
    if (v < 0) throw Error(ErrorKind::unknown_name, "unknown name: " + s);
    return L.coordinate(v);
  };
  in.constant = [nv](const GQ& c) { return Polynomial::constant(nv, c); };
  in.add = [](const Polynomial& a, const Polynomial& b) { return a + b; };
  in.mul = [](const Polynomial& a, const Polynomial& b) { return a * b; };
  in.scale = [](const GQ& c, const Polynomial& a) { return a.scaled(c); };
  in.bracket = [&L](const Polynomial& a, const Polynomial& b) { return poisson_bracket(a, b, L); };
  return expr::evaluate(n, in);
}

Polynomial parse_polynomial(const std::string& text, const Algebra& L, const std::map<std::string, Polynomial>& named) {
  return eval_polynomial(*expr::parse(text), L, named);
}

const std::vector<BarredEntry>& barred_definitions() {
  static const std::vector<BarredEntry> defs = {
      {"b1", "C200", true},
      {"b2", "C020", true},
      {"b3", "C002", true},
      {"c1", "C111 - 2/3*C003", true},
      {"C2", "C111", false},
      {"d1", "C202 + C022 - C112 - 2*C004", true},
      {"D2", "C112", false},
      {"D3", "C022", false},
      {"D4", "C004", false},
      {"E1", "C113", false},
      {"F1", "C213", false},
      {"F2", "C204", false},
      {"F3", "C123", false},
      {"F4", "C024", false},
      {"G1", "C214", false},
      {"G2", "C124", false},
      {"H1", "C215", false},
      {"H2", "C125", false},
      {"I1", "C036", false},
      {"I2", "C306", false},
  };
  return defs;
}

namespace {

void finish_set(GeneratorSet& g, const Algebra& L) {
  g.zeta = 0;
  for (auto& e : g.entries) {
    e.degree = e.poly.degree();
    e.grading = poly_grading(e.poly, L);
    g.zeta = std::max(g.zeta, e.degree);
  }
  g.counts.assign(static_cast<std::size_t>(g.zeta), 0);
  for (const auto& e : g.entries) ++g.counts[static_cast<std::size_t>(e.degree - 1)];
}

}  // namespace

GeneratorSet barred_basis(const Algebra& L) {
  auto C = contraction_invariants(L);
  GeneratorSet g;
  for (const auto& d : barred_definitions()) {
    Generator e;
    e.name = d.name;
    e.poly = parse_polynomial(d.definition, L, C);
    e.central = d.central;
    g.entries.push_back(std::move(e));
  }
  finish_set(g, L);
  return g;
}

GeneratorSet printed_basis(const Algebra& L) {
  auto j = read_json_file(data_dir() + "/su4_polynomials.json");
  std::map<std::string, Polynomial> named;
  GeneratorSet g;
  try {
    for (const auto& [k, v] : j.at("polynomials").items()) named[k] = parse_polynomial(v.get<std::string>(), L);
    for (const auto& e : j.at("generators")) {
      Generator gen;
      gen.name = e.at("name").get<std::string>();
      gen.central = e.value("central", false);
      gen.poly = parse_polynomial(e.at("definition").get<std::string>(), L, named);
      named[gen.name] = gen.poly;
      g.entries.push_back(std::move(gen));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::schema, std::string("su4_polynomials.json: ") + e.what());
  }
  finish_set(g, L);
  return g;
}

const std::vector<std::pair<std::string, std::string>>& translation_identities() {
  static const std::vector<std::pair<std::string, std::string>> ids = {
      {"b1", "C200"},
      {"b2", "C020"},
      {"b3", "C002"},
      {"c1", "C111 - 2/3*C003"},
      {"C2", "C111"},
      {"d1", "C202 + C022 - C112 - 2*C004"},
      {"D2", "1/2*C112"},
      {"D3", "C022"},
      {"D4", "C004"},
      {"E1", "C113"},
      {"F1", "C213"},
      {"F2", "2*C204 - C200*C004"},
      {"F3", "C123"},
      {"F4", "2*C024 - C020*C004"},
      {"G1", "C214"},
      {"G2", "C124"},
      {"H1", "C215"},
      {"H2", "C125"},
      {"I1", "-8*C036"},
      {"I2", "-4*(C306 + C002*C214 + 1/6*C003*C213)"},
  };
  return ids;
}

bool TranslationReport::all_identities() const {
  for (const auto& c : identities)
    if (!c.ok) return false;
  return true;
}

bool TranslationReport::all_spans() const {
  for (const auto& c : spans)
    if (!c.ok) return false;
  return true;
}

TranslationReport verify_translation(const GeneratorSet& gens, const GeneratorSet& barred, const Algebra& L) {
  TranslationReport rep;
  auto C = contraction_invariants(L);
  for (const auto& [name, rhs] : translation_identities()) {
    int i = gens.index_of(name);
    if (i < 0) continue;
    TranslationCheck c;
    c.name = name;
    c.identity = name + " = " + rhs;
    c.diff = gens.entries[static_cast<std::size_t>(i)].poly - parse_polynomial(rhs, L, C);
    c.ok = c.diff.is_zero();
    rep.identities.push_back(std::move(c));
  }
  std::map<int, PolyEchelon> spans;
  std::map<GenMonomial, Polynomial> cache;
  for (const auto& e : gens.entries) {
    auto it = spans.find(e.degree);
    if (it == spans.end()) {
      PolyEchelon ech(static_cast<std::size_t>(L.dim()));
      int tag = 0;
      for (const auto& m : products_of_degree(barred, e.degree)) ech.insert(expand_monomial(m, barred, &cache), tag++);
      it = spans.emplace(e.degree, std::move(ech)).first;
    }
    TranslationCheck c;
    c.name = e.name;
    c.identity = e.name + " in span of barred products of degree " + std::to_string(e.degree);
    c.diff = it->second.reduce(e.poly);
    c.ok = c.diff.is_zero();
    rep.spans.push_back(std::move(c));
  }
  return rep;
}

}  // namespace lpa
