#include "lpa/exact_linalg.hpp"

#include <algorithm>

namespace lpa {

std::vector<int> gq_rref(GQMatrix& m, std::size_t ncols) {
  std::vector<int> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < ncols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[rank], m[piv]);
    GQ inv = m[rank][c].inverse();
    for (std::size_t j = c; j < ncols; ++j)
      if (!m[rank][j].is_zero()) m[rank][j] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c].is_zero()) continue;
      GQ f = -m[r][c];
      for (std::size_t j = c; j < ncols; ++j)
        if (!m[rank][j].is_zero()) m[r][j].add_mul(f, m[rank][j]);
    }
    pivots.push_back(static_cast<int>(c));
    ++rank;
  }
  m.resize(rank);
  return pivots;
}

GQMatrix gq_kernel(GQMatrix m, std::size_t ncols) {
  auto piv = gq_rref(m, ncols);
  std::vector<char> isp(ncols, 0);
  for (int c : piv) isp[static_cast<std::size_t>(c)] = 1;
  GQMatrix out;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (isp[f]) continue;
    std::vector<GQ> v(ncols);
    v[f] = GQ(1);
    for (std::size_t r = 0; r < piv.size(); ++r) v[static_cast<std::size_t>(piv[r])] = -m[r][f];
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<GQMatrix> gq_inverse(const GQMatrix& m) {
  const std::size_t n = m.size();
  GQMatrix a(n, std::vector<GQ>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
    a[i][n + i] = GQ(1);
  }
  auto piv = gq_rref(a, 2 * n);
  if (piv.size() < n || (n > 0 && piv[n - 1] != static_cast<int>(n - 1))) return std::nullopt;
  GQMatrix inv(n, std::vector<GQ>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  return inv;
}

void add_combo(std::map<int, GQ>& acc, const std::map<int, GQ>& c, const GQ& f) {
  for (const auto& [k, v] : c) {
    GQ& slot = acc[k];
    slot.add_mul(v, f);
    if (slot.is_zero()) acc.erase(k);
  }
}

Polynomial PolyEchelon::reduce(const Polynomial& p, std::map<int, GQ>* coeffs) const {
  if (coeffs) coeffs->clear();
  Polynomial rem = p;
  for (const auto& [m, c] : p.terms()) {
    auto it = pivot_.find(m);
    if (it == pivot_.end()) continue;
    const Row& row = rows_[it->second];
    rem.add_scaled(row.poly, -c);
    if (coeffs) add_combo(*coeffs, row.combo, c);
  }
  return rem;
}

bool PolyEchelon::insert(const Polynomial& p, int tag) {
  std::map<int, GQ> used;
  Polynomial rem = reduce(p, &used);
  if (rem.is_zero()) return false;
  GQ inv = rem.leading().second.inverse();
  Row row;
  row.poly = rem.scaled(inv);
  row.combo[tag] = inv;
  add_combo(row.combo, used, -inv);
  const Monomial lead = row.poly.leading().first;
  for (auto& r : rows_) {
    GQ c = r.poly.coeff(lead);
    if (c.is_zero()) continue;
    r.poly.add_scaled(row.poly, -c);
    add_combo(r.combo, row.combo, -c);
  }
  pivot_[lead] = rows_.size();
  rows_.push_back(std::move(row));
  return true;
}

std::vector<Polynomial> PolyEchelon::basis() const {
  std::vector<Polynomial> out;
  for (auto it = pivot_.rbegin(); it != pivot_.rend(); ++it) out.push_back(rows_[it->second].poly);
  return out;
}

}  // namespace lpa
