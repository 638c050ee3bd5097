#pragma once

#include <map>
#include <optional>
#include <vector>

#include "lpa/polynomial.hpp"

namespace lpa {

using GQMatrix = std::vector<std::vector<GQ>>;

// Gauss-Jordan over Q(i) in place; returns pivot columns and drops zero rows.
std::vector<int> gq_rref(GQMatrix& m, std::size_t ncols);
// Kernel basis with 1 at each free column.
GQMatrix gq_kernel(GQMatrix m, std::size_t ncols);
std::optional<GQMatrix> gq_inverse(const GQMatrix& m);

// Fully reduced echelon basis of a space of polynomials. The pivot of a row is
// its largest monomial and carries coefficient 1; no pivot occurs in another row.
// Every row remembers how it combines the inserted originals.
class PolyEchelon {
 public:
  struct Row {
    Polynomial poly;
    std::map<int, GQ> combo;
  };

  explicit PolyEchelon(std::size_t nvars) : nvars_(nvars) {}

  // Remainder of p modulo the span; `coeffs` (if given) receives p - rem as a
  // combination of the inserted originals.
  Polynomial reduce(const Polynomial& p, std::map<int, GQ>* coeffs = nullptr) const;
  bool contains(const Polynomial& p) const { return reduce(p).is_zero(); }
  // Returns true when p was independent of the current span.
  bool insert(const Polynomial& p, int tag);

  std::size_t rank() const { return rows_.size(); }
  const std::vector<Row>& rows() const { return rows_; }
  // Rows ordered by descending pivot.
  std::vector<Polynomial> basis() const;

 private:
  std::size_t nvars_;
  std::vector<Row> rows_;
  std::map<Monomial, std::size_t> pivot_;
};

void add_combo(std::map<int, GQ>& acc, const std::map<int, GQ>& c, const GQ& f);

}  // namespace lpa
