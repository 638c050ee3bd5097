#include "lpa/modular.hpp"

#include <algorithm>
#include <mutex>

#include "lpa/errors.hpp"

namespace lpa::modp {

namespace {

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = static_cast<u64>(static_cast<unsigned __int128>(r) * a % m);
    a = static_cast<u64>(static_cast<unsigned __int128>(a) * a % m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = static_cast<u64>(static_cast<unsigned __int128>(x) * x % n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 nth_prime(std::size_t n) {
  static std::mutex mu;
  static std::vector<u64> cache;
  std::lock_guard<std::mutex> lock(mu);
  u64 cand = cache.empty() ? (1ULL << 62) - 3 : cache.back() - 4;  // 2^62 - 3 = 1 mod 4
  while (cache.size() <= n) {
    if (is_prime(cand)) cache.push_back(cand);
    cand -= 4;
  }
  return cache[n];
}

Field::Field(u64 prime) : p_(prime) {
  for (u64 g = 2;; ++g) {
    if (powmod(g, (p_ - 1) / 2, p_) == p_ - 1) {
      r_ = powmod(g, (p_ - 1) / 4, p_);
      break;
    }
  }
}

u64 Field::pow(u64 a, u64 e) const { return powmod(a, e, p_); }
u64 Field::inv(u64 a) const { return powmod(a, p_ - 2, p_); }

u64 Field::from_int(long v) const {
  if (v >= 0) return static_cast<u64>(v) % p_;
  return neg(static_cast<u64>(-v) % p_);
}

bool Field::reduce(const mpq_class& q, u64& out) const {
  static_assert(sizeof(unsigned long) == 8, "64-bit unsigned long required");
  u64 d = mpz_fdiv_ui(q.get_den_mpz_t(), p_);
  if (d == 0) return false;
  u64 n = mpz_fdiv_ui(q.get_num_mpz_t(), p_);
  out = d == 1 ? n : mul(n, inv(d));
  return true;
}

bool Field::reduce(const GQ& z, int sign, u64& out) const {
  u64 a = 0, b = 0;
  if (!reduce(z.re(), a)) return false;
  if (sgn(z.im()) == 0) {
    out = a;
    return true;
  }
  if (!reduce(z.im(), b)) return false;
  u64 rb = mul(b, r_);
  out = sign > 0 ? add(a, rb) : sub(a, rb);
  return true;
}

std::vector<int> rref(DenseMatrix& rows, std::size_t ncols, const Field& F) {
  std::vector<int> pivots;
  std::size_t rank = 0;
  const std::size_t nrows = rows.size();
  for (std::size_t c = 0; c < ncols && rank < nrows; ++c) {
    std::size_t piv = rank;
    while (piv < nrows && rows[piv][c] == 0) ++piv;
    if (piv == nrows) continue;
    std::swap(rows[rank], rows[piv]);
    auto& prow = rows[rank];
    u64 inv = F.inv(prow[c]);
    for (std::size_t j = c; j < ncols; ++j)
      if (prow[j]) prow[j] = F.mul(prow[j], inv);
    std::vector<std::size_t> nz;
    for (std::size_t j = c + 1; j < ncols; ++j)
      if (prow[j]) nz.push_back(j);
    for (std::size_t r = 0; r < nrows; ++r) {
      if (r == rank) continue;
      u64 f = rows[r][c];
      if (!f) continue;
      auto& row = rows[r];
      u64 nf = F.neg(f);
      row[c] = 0;
      for (std::size_t j : nz) row[j] = F.add(row[j], F.mul(nf, prow[j]));
    }
    pivots.push_back(static_cast<int>(c));
    ++rank;
  }
  rows.resize(rank);
  return pivots;
}

bool rational_reconstruct(const mpz_class& a, const mpz_class& m, mpq_class& out) {
  mpz_class bound;
  mpz_class half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  mpz_class r0 = m, r1 = a % m;
  if (r1 < 0) r1 += m;
  mpz_class t0 = 0, t1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1;
    mpz_class t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (abs(t1) > bound || t1 == 0) return false;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return false;
  out = mpq_class(r1, t1);
  out.canonicalize();
  return true;
}

std::vector<std::vector<GQ>> ExactRref::kernel() const {
  std::vector<char> is_pivot(ncols, 0);
  for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = 1;
  std::vector<int> pos(ncols, -1);
  for (std::size_t j = 0; j < cols.size(); ++j) pos[static_cast<std::size_t>(cols[j])] = static_cast<int>(j);
  std::vector<std::vector<GQ>> out;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<GQ> v(ncols);
    v[f] = GQ(1);
    int j = pos[f];
    if (j < 0) throw Error(ErrorKind::internal, "kernel requested for unreconstructed column");
    for (std::size_t r = 0; r < pivots.size(); ++r) v[static_cast<std::size_t>(pivots[r])] = -rows[r][static_cast<std::size_t>(j)];
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

struct Accum {
  std::vector<int> pivots;
  mpz_class modulus = 1;
  // CRT residues for the real and imaginary parts.
  std::vector<std::vector<mpz_class>> re, im;
};

// Combines x (mod m) with y (mod p) into the residue mod m*p.
mpz_class u64_to_mpz(u64 v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return z;
}

u64 mpz_mod_u64(const mpz_class& a, u64 p) { return mpz_fdiv_ui(a.get_mpz_t(), p); }

// x (mod m) combined with y (mod p), minv = m^{-1} mod p.
void crt(mpz_class& x, const mpz_class& m, u64 y, const Field& F, u64 minv) {
  u64 t = F.mul(F.sub(y, mpz_mod_u64(x, F.p())), minv);
  if (t) x += m * u64_to_mpz(t);
}

}  // namespace

ExactRref multimodular_rref(std::size_t ncols, const ModularBuilder& build, const RrefVerifier& verify,
                            const MultimodularOptions& opts) {
  Accum acc;
  bool have = false;
  std::vector<int> cols;
  ExactRref last;
  bool have_last = false;
  std::size_t used = 0;
  for (std::size_t pi = 0; pi < opts.max_primes + 8; ++pi) {
    Field F(nth_prime(pi));
    const u64 p = F.p();
    DenseMatrix mp, mm;
    if (!build(F, +1, mp)) continue;
    for (auto& row : mp)
      if (row.size() != ncols) throw Error(ErrorKind::internal, "modular builder produced a row of wrong width");
    std::vector<int> piv = rref(mp, ncols, F);
    if (!opts.real) {
      if (!build(F, -1, mm)) continue;
      std::vector<int> piv2 = rref(mm, ncols, F);
      if (piv2 != piv) continue;
    }
    // Rank can only drop (or pivots shift right) at unlucky primes.
    if (have) {
      bool better = piv.size() > acc.pivots.size() || (piv.size() == acc.pivots.size() && piv < acc.pivots);
      bool worse = piv.size() < acc.pivots.size() || (piv.size() == acc.pivots.size() && piv > acc.pivots);
      if (worse) continue;
      if (better) have = false;
    }
    if (!have) {
      acc = Accum{};
      acc.pivots = piv;
      cols.clear();
      if (opts.wanted_cols.empty()) {
        std::vector<char> isp(ncols, 0);
        for (int c : piv) isp[static_cast<std::size_t>(c)] = 1;
        for (std::size_t c = 0; c < ncols; ++c)
          if (!isp[c]) cols.push_back(static_cast<int>(c));
      } else {
        cols = opts.wanted_cols;
      }
      acc.re.assign(piv.size(), std::vector<mpz_class>(cols.size()));
      acc.im.assign(piv.size(), std::vector<mpz_class>(cols.size()));
      have = true;
      have_last = false;
      used = 0;
    }
    const u64 two_inv = F.inv(2);
    const u64 two_r_inv = F.inv(F.mul(2, F.sqrt_minus_one()));
    const u64 minv = acc.modulus == 1 ? 1 : F.inv(mpz_mod_u64(acc.modulus, p));
    for (std::size_t r = 0; r < piv.size(); ++r)
      for (std::size_t j = 0; j < cols.size(); ++j) {
        u64 ep = mp[r][static_cast<std::size_t>(cols[j])];
        u64 em = opts.real ? ep : mm[r][static_cast<std::size_t>(cols[j])];
        u64 a = F.mul(F.add(ep, em), two_inv);
        u64 b = opts.real ? 0 : F.mul(F.sub(ep, em), two_r_inv);
        if (acc.modulus == 1) {
          acc.re[r][j] = u64_to_mpz(a);
          acc.im[r][j] = u64_to_mpz(b);
        } else {
          crt(acc.re[r][j], acc.modulus, a, F, minv);
          crt(acc.im[r][j], acc.modulus, b, F, minv);
        }
      }
    acc.modulus *= u64_to_mpz(p);
    ++used;

    ExactRref cur;
    cur.ncols = ncols;
    cur.pivots = acc.pivots;
    cur.cols = cols;
    cur.rows.assign(piv.size(), std::vector<GQ>(cols.size()));
    bool ok = true;
    for (std::size_t r = 0; r < piv.size() && ok; ++r)
      for (std::size_t j = 0; j < cols.size() && ok; ++j) {
        mpq_class a, b;
        if (sgn(acc.re[r][j]) == 0 && sgn(acc.im[r][j]) == 0) continue;
        ok = rational_reconstruct(acc.re[r][j], acc.modulus, a) && rational_reconstruct(acc.im[r][j], acc.modulus, b);
        if (ok) cur.rows[r][j] = GQ(a, b);
      }
    if (!ok) continue;
    bool stable = have_last && last.rows == cur.rows;
    last = cur;
    have_last = true;
    if (!stable) continue;
    if (!verify || verify(cur)) return cur;
    if (used > opts.max_primes) break;
  }
  throw Error(ErrorKind::internal, "multimodular reconstruction did not converge");
}

ExactRref exact_rref(const SparseRowsGQ& rows, std::size_t ncols, bool real) {
  auto build = [&](const Field& F, int sign, DenseMatrix& out) {
    out.assign(rows.size(), std::vector<u64>(ncols, 0));
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (const auto& e : rows[r]) {
        u64 v;
        if (!F.reduce(e.value, sign, v)) return false;
        out[r][static_cast<std::size_t>(e.col)] = F.add(out[r][static_cast<std::size_t>(e.col)], v);
      }
    return true;
  };
  auto verify = [&](const ExactRref& R) {
    for (const auto& v : R.kernel())
      for (const auto& row : rows) {
        GQ s;
        for (const auto& e : row) s.add_mul(e.value, v[static_cast<std::size_t>(e.col)]);
        if (!s.is_zero()) return false;
      }
    return true;
  };
  MultimodularOptions o;
  o.real = real;
  return multimodular_rref(ncols, build, verify, o);
}

std::size_t rank_mod_p(const SparseRowsGQ& rows, std::size_t ncols, std::size_t prime_index) {
  Field F(nth_prime(prime_index));
  DenseMatrix m(rows.size(), std::vector<u64>(ncols, 0));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& e : rows[r]) {
      u64 v;
      if (!F.reduce(e.value, +1, v)) throw Error(ErrorKind::internal, "unlucky prime in rank_mod_p");
      m[r][static_cast<std::size_t>(e.col)] = F.add(m[r][static_cast<std::size_t>(e.col)], v);
    }
  return rref(m, ncols, F).size();
}

}  // namespace lpa::modp
