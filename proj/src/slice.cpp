#include "lpa/slice.hpp"

namespace lpa {

SliceContext::SliceContext(const Algebra& L) : L_(&L) {
  const int n = L.dim();
  if (L.has_proper_slice()) {
    slice_ = L.slice_vars();
    off_ = L.off_slice_vars();
    map_ = L.slice_map();
  } else {
    for (int v = 0; v < n; ++v) {
      slice_.push_back(v);
      map_.push_back(v);
    }
  }
  const std::size_t ns = slice_.size();
  lin_.assign(static_cast<std::size_t>(n), std::vector<Polynomial>(static_cast<std::size_t>(n), Polynomial(ns)));
  for (const auto& e : L.pairs()) {
    Polynomial p(ns);
    for (const auto& t : e.terms) {
      int k = map_[static_cast<std::size_t>(t.k)];
      if (k >= 0) p += Polynomial::variable(ns, static_cast<std::size_t>(k)).scaled(t.c);
    }
    lin_[static_cast<std::size_t>(e.i)][static_cast<std::size_t>(e.j)] = std::move(p);
  }
}

Polynomial SliceContext::restrict(const Polynomial& full) const {
  if (full.nvars() != static_cast<std::size_t>(L_->dim())) throw DimensionError("slice restriction: wrong number of variables");
  return full.restrict_to(map_, slice_.size());
}

SliceContext::Jet SliceContext::jet(const Polynomial& full) const {
  Jet j;
  j.value = restrict(full);
  for (int v : off_) j.d.push_back(restrict(full.partial(static_cast<std::size_t>(v))));
  return j;
}

SliceContext::Jet SliceContext::mul(const Jet& a, const Jet& b) const {
  Jet r;
  r.value = a.value * b.value;
  for (std::size_t k = 0; k < off_.size(); ++k) r.d.push_back(a.value * b.d[k] + b.value * a.d[k]);
  return r;
}

SliceContext::Jet SliceContext::add(const Jet& a, const Jet& b) const {
  Jet r;
  r.value = a.value + b.value;
  for (std::size_t k = 0; k < off_.size(); ++k) r.d.push_back(a.d[k] + b.d[k]);
  return r;
}

SliceContext::Jet SliceContext::scale(const GQ& c, const Jet& a) const {
  Jet r;
  r.value = a.value.scaled(c);
  for (const auto& d : a.d) r.d.push_back(d.scaled(c));
  return r;
}

SliceContext::Jet SliceContext::constant(const GQ& c) const {
  Jet r;
  r.value = Polynomial::constant(slice_.size(), c);
  r.d.assign(off_.size(), Polynomial(slice_.size()));
  return r;
}

std::vector<Polynomial> SliceContext::gradient(const Jet& a) const {
  std::vector<Polynomial> g(static_cast<std::size_t>(L_->dim()), Polynomial(slice_.size()));
  for (std::size_t s = 0; s < slice_.size(); ++s) g[static_cast<std::size_t>(slice_[s])] = a.value.partial(s);
  for (std::size_t k = 0; k < off_.size(); ++k) g[static_cast<std::size_t>(off_[k])] = a.d[k];
  return g;
}

Polynomial SliceContext::bracket(const Jet& a, const Jet& b) const {
  auto ga = gradient(a);
  auto gb = gradient(b);
  const std::size_t n = static_cast<std::size_t>(L_->dim());
  Polynomial out(slice_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (ga[i].is_zero()) continue;
    Polynomial w(slice_.size());
    for (std::size_t j = 0; j < n; ++j)
      if (!lin_[i][j].is_zero() && !gb[j].is_zero()) w += lin_[i][j] * gb[j];
    if (!w.is_zero()) out += ga[i] * w;
  }
  return out;
}

ModEvaluator::ModEvaluator(const Polynomial& p, const modp::Field& F, int sign) : nvars_(p.nvars()) {
  exps_.reserve(p.size() * nvars_);
  coeffs_.reserve(p.size());
  for (const auto& [m, c] : p.terms()) {
    modp::u64 v;
    if (!F.reduce(c, sign, v)) {
      ok_ = false;
      return;
    }
    coeffs_.push_back(v);
    for (std::size_t k = 0; k < nvars_; ++k) exps_.push_back(static_cast<std::uint8_t>(m.exponent(k)));
  }
}

modp::u64 ModEvaluator::eval(const std::vector<std::vector<modp::u64>>& powers) const {
  const modp::u64 p = powers[0][0];
  unsigned __int128 acc = 0;
  std::size_t off = 0;
  for (std::size_t t = 0; t < coeffs_.size(); ++t, off += nvars_) {
    unsigned __int128 term = coeffs_[t];
    for (std::size_t k = 0; k < nvars_; ++k) {
      std::uint8_t e = exps_[off + k];
      if (e) term = term * powers[k][e] % p;
    }
    acc += term;
    if ((t & 31U) == 31U) acc %= p;
  }
  return static_cast<modp::u64>(acc % p);
}

std::vector<std::vector<modp::u64>> power_table(const std::vector<modp::u64>& point, unsigned max_degree,
                                                const modp::Field& F) {
  // Slot 0 holds the modulus, so evaluators need only the table.
  std::vector<std::vector<modp::u64>> t(point.size(), std::vector<modp::u64>(max_degree + 1));
  for (std::size_t v = 0; v < point.size(); ++v) {
    t[v][0] = F.p();
    modp::u64 x = 1;
    for (unsigned e = 1; e <= max_degree; ++e) {
      x = F.mul(x, point[v]);
      t[v][e] = x;
    }
  }
  return t;
}

}  // namespace lpa
