#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "lpa/errors.hpp"
#include "lpa/polynomial.hpp"

namespace lpa {

struct StructureEntry {
  int i = 0;
  int j = 0;
  int k = 0;
  GQ c;
};

// [g_r, g_s] lands in the sum of the target blocks.
struct BlockRule {
  int r = 0;
  int s = 0;
  std::vector<int> targets;
};

struct LieAlgebraSpec {
  std::string name;
  int dim = 0;
  std::vector<std::string> names;
  std::vector<StructureEntry> structure;
  std::vector<std::vector<int>> blocks;
  std::vector<int> subalgebra;
  // Empty means: derived from the structure constants.
  std::vector<BlockRule> block_rules;
  // Coordinates kept by the invariant slice; empty means all.
  std::vector<int> slice;

  nlohmann::json to_json() const;
  static LieAlgebraSpec from_json(const nlohmann::json& j);
};

enum class AlgebraViolation { antisymmetry, jacobi, subalgebra, block_rule, malformed };

class AlgebraError : public Error {
 public:
  AlgebraError(AlgebraViolation v, std::array<int, 3> triple, const std::string& what)
      : Error(ErrorKind::invalid_algebra, what), violation_(v), triple_(triple) {}
  AlgebraViolation violation() const { return violation_; }
  const std::array<int, 3>& triple() const { return triple_; }

 private:
  AlgebraViolation violation_;
  std::array<int, 3> triple_;
};

// Validated, immutable algebra.
class Algebra {
 public:
  struct Term {
    int k;
    GQ c;
  };
  struct PairEntry {
    int i;
    int j;
    std::vector<Term> terms;
  };

  const LieAlgebraSpec& spec() const { return spec_; }
  int dim() const { return spec_.dim; }
  const std::vector<std::string>& names() const { return spec_.names; }
  const std::vector<int>& subalgebra() const { return spec_.subalgebra; }
  const std::vector<std::vector<int>>& blocks() const { return spec_.blocks; }
  const std::vector<BlockRule>& block_rules() const { return spec_.block_rules; }
  int block_of(int v) const { return block_of_[static_cast<std::size_t>(v)]; }
  int num_blocks() const { return static_cast<int>(spec_.blocks.size()); }

  // C_ij^k with antisymmetry applied.
  GQ structure_constant(int i, int j, int k) const;
  const std::vector<Term>& bracket_terms(int i, int j) const {
    return table_[static_cast<std::size_t>(i * spec_.dim + j)];
  }
  // All ordered pairs (i, j) with a nonzero bracket.
  const std::vector<PairEntry>& pairs() const { return pairs_; }

  // {x_i, x_j} as a linear polynomial.
  Polynomial coordinate_bracket(int i, int j) const;
  Polynomial coordinate(int v) const { return Polynomial::variable(static_cast<std::size_t>(spec_.dim), v); }
  int index_of(const std::string& name) const;

  // Slice support: map from coordinates to slice variables (-1 if dropped).
  const std::vector<int>& slice_map() const { return slice_map_; }
  const std::vector<int>& slice_vars() const { return slice_vars_; }
  const std::vector<int>& off_slice_vars() const { return off_slice_; }
  bool has_proper_slice() const { return !off_slice_.empty(); }

  friend std::shared_ptr<const Algebra> load_algebra(const LieAlgebraSpec& spec);

 private:
  Algebra() = default;
  LieAlgebraSpec spec_;
  std::vector<int> block_of_;
  std::vector<std::vector<Term>> table_;
  std::vector<PairEntry> pairs_;
  std::vector<int> slice_map_, slice_vars_, off_slice_;
};

using AlgebraHandle = std::shared_ptr<const Algebra>;

// Validates antisymmetry, Jacobi, subalgebra closure and block rules.
AlgebraHandle load_algebra(const LieAlgebraSpec& spec);

LieAlgebraSpec su4_supermultiplet();
// {x_i, x_j} = i eps_ijk x_k with trivial subalgebra.
LieAlgebraSpec su2_spec();

Polynomial poisson_bracket(const Polynomial& p, const Polynomial& q, const Algebra& L);

const char* violation_name(AlgebraViolation v);

}  // namespace lpa
