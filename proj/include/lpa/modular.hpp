#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "lpa/gaussian_rational.hpp"

namespace lpa::modp {

using u64 = std::uint64_t;

bool is_prime(u64 n);

// The n-th prime p = 1 (mod 4) below 2^62, counting downwards.
u64 nth_prime(std::size_t n);

class Field {
 public:
  explicit Field(u64 prime);

  u64 p() const { return p_; }
  u64 sqrt_minus_one() const { return r_; }

  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
  u64 neg(u64 a) const { return a ? p_ - a : 0; }
  u64 mul(u64 a, u64 b) const { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p_); }
  u64 pow(u64 a, u64 e) const;
  u64 inv(u64 a) const;
  u64 from_int(long v) const;

  // False when the denominator vanishes mod p.
  bool reduce(const mpq_class& q, u64& out) const;
  // Image of a + b*i under i -> sign * sqrt(-1).
  bool reduce(const GQ& z, int sign, u64& out) const;

 private:
  u64 p_;
  u64 r_ = 0;
};

using DenseMatrix = std::vector<std::vector<u64>>;

// Row-reduced echelon form in place (zero rows dropped); returns pivot columns.
std::vector<int> rref(DenseMatrix& rows, std::size_t ncols, const Field& F);

bool rational_reconstruct(const mpz_class& a, const mpz_class& m, mpq_class& out);

// Exact RREF over Q(i) assembled from images modulo several primes.
struct ExactRref {
  std::size_t ncols = 0;
  std::vector<int> pivots;
  // rows[r][c] for each column c in `cols` (the non-pivot columns requested).
  std::vector<int> cols;
  std::vector<std::vector<GQ>> rows;

  // Kernel basis: one vector per free column f, with 1 at f.
  std::vector<std::vector<GQ>> kernel() const;
};

// Fills `rows` with the matrix image for the given field and embedding sign.
// Returning false marks the prime as unusable.
using ModularBuilder = std::function<bool(const Field&, int sign, DenseMatrix& rows)>;
using RrefVerifier = std::function<bool(const ExactRref&)>;

struct MultimodularOptions {
  // Non-pivot columns to reconstruct; empty means all.
  std::vector<int> wanted_cols;
  std::size_t max_primes = 64;
  // Entries known to be real: skip the conjugate embedding.
  bool real = false;
};

ExactRref multimodular_rref(std::size_t ncols, const ModularBuilder& build, const RrefVerifier& verify,
                            const MultimodularOptions& opts = {});

// Exact RREF of an explicit sparse matrix over Q(i); verified through its kernel.
struct SparseEntry {
  int col;
  GQ value;
};
using SparseRowsGQ = std::vector<std::vector<SparseEntry>>;
ExactRref exact_rref(const SparseRowsGQ& rows, std::size_t ncols, bool real = false);

// Rank modulo one prime (an upper bound is not implied; used for oracles and diagnostics).
std::size_t rank_mod_p(const SparseRowsGQ& rows, std::size_t ncols, std::size_t prime_index = 0);

}  // namespace lpa::modp
