#pragma once

// Exact linear algebra over Q: sparse row echelon forms for quotient normal
// forms, fraction-free rank, dense solves and an exact simplex feasibility test.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "toricmorgan/rational.hpp"

namespace toricmorgan {

/// Sparse vector with strictly increasing indices and nonzero entries.
using SparseVector = std::vector<std::pair<std::uint32_t, Rational>>;

/// Incrementally built echelon basis of a subspace of Q^dim. The pivot of each
/// row is its highest index; reduction clears every pivot column, so reduced
/// vectors are supported on non-pivot columns only.
class RowEchelon {
 public:
  explicit RowEchelon(size_t dim = 0);

  size_t dim() const { return dim_; }
  size_t rank() const { return rows_.size(); }

  /// Adds v to the spanning set; returns true when it enlarged the span.
  bool insert(const SparseVector& v);
  SparseVector reduce(const SparseVector& v) const;
  bool is_pivot(std::uint32_t col) const { return pivot_row_[col] >= 0; }

 private:
  SparseVector reduce_dense(std::vector<Rational>& acc, std::uint32_t top) const;

  size_t dim_;
  std::vector<SparseVector> rows_;
  std::vector<int> pivot_row_;
  mutable std::vector<Rational> scratch_;
};

/// Rank of the span of the given rows, by fraction-free (integer) elimination
/// with content removal.
size_t fraction_free_rank(const std::vector<SparseVector>& rows);

using RatMatrix = std::vector<std::vector<Rational>>;

/// Unique solution x of A x = b when A has full column rank and the system is
/// consistent; nullopt otherwise.
std::optional<RatVector> solve_unique(const RatMatrix& a, const RatVector& b);

size_t rank(const RatMatrix& a);

/// Basis of {x : A x = 0} over Q, one vector per free column.
std::vector<RatVector> nullspace(const RatMatrix& a, size_t cols);

enum class Relation { LessEqual, GreaterEqual, Equal };

struct LinearConstraint {
  RatVector coefficients;
  Relation relation;
  Rational rhs;
};

struct LinearProgram {
  size_t num_vars = 0;
  /// Variables with index in this set are constrained to be >= 0; others are free.
  std::vector<bool> nonnegative;
  std::vector<LinearConstraint> constraints;
};

/// Exact phase-one simplex (Bland's rule). Returns a feasible point or nullopt.
std::optional<RatVector> find_feasible_point(const LinearProgram& lp);

}  // namespace toricmorgan
