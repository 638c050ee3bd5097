#pragma once

#include <random>
#include <vector>

#include "lpa/lie_algebra.hpp"
#include "lpa/modular.hpp"

namespace lpa {

// Restriction of invariants to the algebra's slice. An invariant is determined
// by its restriction; brackets of invariants need, in addition, the first
// derivatives in the directions leaving the slice (the jet).
class SliceContext {
 public:
  struct Jet {
    Polynomial value;
    // d[k]: derivative along the k-th off-slice coordinate, restricted.
    std::vector<Polynomial> d;
  };

  explicit SliceContext(const Algebra& L);

  const Algebra& algebra() const { return *L_; }
  std::size_t nvars() const { return slice_.size(); }
  const std::vector<int>& slice_vars() const { return slice_; }
  const std::vector<int>& off_vars() const { return off_; }

  Polynomial restrict(const Polynomial& full) const;
  Jet jet(const Polynomial& full) const;
  Jet mul(const Jet& a, const Jet& b) const;
  Jet add(const Jet& a, const Jet& b) const;
  Jet scale(const GQ& c, const Jet& a) const;
  Jet constant(const GQ& c) const;

  // {A, B} restricted to the slice.
  Polynomial bracket(const Jet& a, const Jet& b) const;

  // Gradient in all coordinates (slice and off-slice) restricted to the slice.
  std::vector<Polynomial> gradient(const Jet& a) const;

 private:
  const Algebra* L_;
  std::vector<int> slice_, off_, map_;
  // lin_[i][j]: sum_k C_ij^k x_k on the slice.
  std::vector<std::vector<Polynomial>> lin_;
};

// A polynomial compiled for fast evaluation modulo a prime.
class ModEvaluator {
 public:
  ModEvaluator() = default;
  ModEvaluator(const Polynomial& p, const modp::Field& F, int sign);
  bool ok() const { return ok_; }
  modp::u64 eval(const std::vector<std::vector<modp::u64>>& powers) const;

 private:
  bool ok_ = true;
  std::vector<std::uint8_t> exps_;
  std::vector<modp::u64> coeffs_;
  std::size_t nvars_ = 0;
};

// powers[v][e] = x_v^e mod p for e up to max_degree.
std::vector<std::vector<modp::u64>> power_table(const std::vector<modp::u64>& point, unsigned max_degree,
                                                const modp::Field& F);

}  // namespace lpa
