#include "compsem/linear_system.hpp"

#include <algorithm>

#include "compsem/error.hpp"

namespace compsem {

IncrementalEliminator::Outcome IncrementalEliminator::add(std::vector<Rational> coefficients,
                                                          Rational rhs, std::size_t origin) {
  if (coefficients.size() != columns_) {
    throw TypeError("equation has " + std::to_string(coefficients.size()) +
                    " coefficients, expected " + std::to_string(columns_));
  }
  for (const Row& row : rows_) {
    Rational factor = coefficients[row.pivot];
    if (factor == 0) continue;
    for (std::size_t j = row.pivot; j < columns_; ++j) {
      coefficients[j] -= factor * row.coefficients[j];
    }
    rhs -= factor * row.rhs;
  }

  auto nonzero = std::find_if(coefficients.begin(), coefficients.end(),
                              [](const Rational& q) { return q != 0; });
  if (nonzero == coefficients.end()) {
    return rhs == 0 ? Outcome::Redundant : Outcome::Inconsistent;
  }

  const auto pivot = static_cast<std::size_t>(nonzero - coefficients.begin());
  Rational scale = coefficients[pivot];
  for (std::size_t j = pivot; j < columns_; ++j) coefficients[j] /= scale;
  rhs /= scale;

  for (Row& row : rows_) {
    Rational factor = row.coefficients[pivot];
    if (factor == 0) continue;
    for (std::size_t j = pivot; j < columns_; ++j) {
      row.coefficients[j] -= factor * coefficients[j];
    }
    row.rhs -= factor * rhs;
  }

  auto pos = std::lower_bound(rows_.begin(), rows_.end(), pivot,
                              [](const Row& r, std::size_t p) { return r.pivot < p; });
  rows_.insert(pos, Row{pivot, std::move(coefficients), std::move(rhs), origin});
  return Outcome::Independent;
}

std::vector<std::size_t> IncrementalEliminator::basis_origins() const {
  std::vector<std::size_t> out;
  out.reserve(rows_.size());
  for (const Row& r : rows_) out.push_back(r.origin);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Rational> IncrementalEliminator::solution() const {
  std::vector<Rational> x(columns_, Rational(0));
  for (const Row& r : rows_) x[r.pivot] = r.rhs;
  return x;
}

}  // namespace compsem
