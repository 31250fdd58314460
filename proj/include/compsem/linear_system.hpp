#pragma once

#include <cstddef>
#include <vector>

#include "compsem/meaning.hpp"

namespace compsem {

/// Exact Gauss-Jordan elimination over the rationals, fed one equation at a
/// time. The basis is kept in reduced row echelon form; pivots are the first
/// nonzero column of each incoming row, so results depend only on the order
/// in which equations are added.
class IncrementalEliminator {
 public:
  enum class Outcome {
    Independent,   // raised the rank
    Redundant,     // implied by the equations already held
    Inconsistent,  // contradicts them: reduces to 0 = c with c != 0
  };

  explicit IncrementalEliminator(std::size_t columns) : columns_(columns) {}

  /// Adds `coefficients . x = rhs`, tagged with `origin`. Inconsistent and
  /// redundant equations are not retained.
  Outcome add(std::vector<Rational> coefficients, Rational rhs, std::size_t origin);

  std::size_t columns() const { return columns_; }
  std::size_t rank() const { return rows_.size(); }
  std::size_t nullity() const { return columns_ - rows_.size(); }
  /// Origins of the retained equations, ascending.
  std::vector<std::size_t> basis_origins() const;
  /// A solution of the retained equations with every free variable at 0.
  std::vector<Rational> solution() const;

 private:
  struct Row {
    std::size_t pivot;
    std::vector<Rational> coefficients;
    Rational rhs;
    std::size_t origin;
  };
  std::size_t columns_;
  std::vector<Row> rows_;  // sorted by pivot
};

}  // namespace compsem
