#pragma once

#include <map>
#include <string>
#include <vector>

#include "lpa/commutant.hpp"
#include "lpa/expr.hpp"

namespace lpa {

// One factor of a contraction: s(i), t(a), q(i,a), eps(i,j,k) or delta(i,j).
struct TensorFactor {
  std::string sym;
  std::vector<std::string> idx;
};

struct ContractionPattern {
  std::string name;
  std::vector<TensorFactor> factors;

  nlohmann::json to_json() const;
  static ContractionPattern from_json(const nlohmann::json& j);
};

// Directory holding patterns.json and the fixture files; LPA_DATA_DIR overrides.
std::string data_dir();
std::vector<ContractionPattern> load_patterns(const std::string& path = "");

// Sum over all index assignments in {1,2,3}. Coordinates are looked up by the
// names s<i>, t<a>, q<i><a>.
Polynomial contract_invariant(const ContractionPattern& pattern, const Algebra& L);
// Name -> polynomial for every pattern in the data file.
std::map<std::string, Polynomial> contraction_invariants(const Algebra& L);

// Polynomial of an expression whose names are coordinates or entries of `named`;
// brackets are Lie-Poisson brackets.
Polynomial eval_polynomial(const expr::Node& n, const Algebra& L,
                           const std::map<std::string, Polynomial>& named = {});
Polynomial parse_polynomial(const std::string& text, const Algebra& L,
                            const std::map<std::string, Polynomial>& named = {});

struct BarredEntry {
  std::string name;
  std::string definition;
  bool central;
};
// Names and definitions in terms of contraction invariants.
const std::vector<BarredEntry>& barred_definitions();
GeneratorSet barred_basis(const Algebra& L);

// Generators written in the unbarred basis of the printed polynomials:
// p-polynomials and F1..F4 from data/su4_polynomials.json, G, H, I through brackets.
GeneratorSet printed_basis(const Algebra& L);

struct TranslationCheck {
  std::string name;
  std::string identity;
  bool ok = false;
  Polynomial diff;
};

struct TranslationReport {
  // Listed identities for names present in the checked set.
  std::vector<TranslationCheck> identities;
  // Every generator lies in the span of barred products of its degree.
  std::vector<TranslationCheck> spans;
  bool all_identities() const;
  bool all_spans() const;
};

// Identities of the form name = expression in contraction invariants.
const std::vector<std::pair<std::string, std::string>>& translation_identities();
TranslationReport verify_translation(const GeneratorSet& gens, const GeneratorSet& barred, const Algebra& L);

}  // namespace lpa
