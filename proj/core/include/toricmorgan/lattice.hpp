#pragma once

// Exact integer-lattice arithmetic: Hermite and Smith normal forms,
// sublattices of Z^n in canonical (row HNF) form, saturation, basis
// extension and integral kernels.

#include <compare>
#include <optional>
#include <vector>

#include "toricmorgan/rational.hpp"

namespace toricmorgan {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static IntMatrix identity(size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, size_t cols);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Integer& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(size_t r) const;
  std::vector<IntVector> row_list() const;
  void append_row(const IntVector& v);
  IntMatrix transpose() const;
  IntMatrix submatrix_rows(size_t begin, size_t end) const;

  void swap_rows(size_t a, size_t b);
  void swap_cols(size_t a, size_t b);
  /// row[dst] += k * row[src]
  void add_row_multiple(size_t dst, size_t src, const Integer& k);
  /// col[dst] += k * col[src]
  void add_col_multiple(size_t dst, size_t src, const Integer& k);
  void negate_row(size_t r);
  void negate_col(size_t c);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntVector operator*(const IntVector& row, const IntMatrix& m);

/// Determinant by fraction-free elimination. Square input only.
Integer determinant(const IntMatrix& m);

struct HermiteForm {
  IntMatrix H;  ///< row Hermite normal form of the input
  IntMatrix U;  ///< unimodular, H = U * M
};

/// Row-style HNF: nonzero rows first, pivots strictly increasing in column and
/// positive, entries above each pivot reduced into [0, pivot).
HermiteForm hnf(const IntMatrix& m);

struct SmithForm {
  IntMatrix D;  ///< diagonal, d_1 | d_2 | ..., nonnegative
  IntMatrix U;  ///< unimodular, D = U * M * V
  IntMatrix V;  ///< unimodular
};

SmithForm snf(const IntMatrix& m);

/// Nonzero diagonal entries of the Smith form.
std::vector<Integer> elementary_divisors(const IntMatrix& m);

size_t rank(const IntMatrix& m);

/// Inverse of a square unimodular matrix; throws MathError otherwise.
IntMatrix unimodular_inverse(const IntMatrix& m);

/// A sublattice of Z^n, stored by its row HNF basis so that structural
/// equality is lattice equality.
class Sublattice {
 public:
  Sublattice() = default;
  explicit Sublattice(size_t ambient_rank) : ambient_rank_(ambient_rank), basis_(0, ambient_rank) {}
  static Sublattice span(size_t ambient_rank, const std::vector<IntVector>& generators);
  static Sublattice span(const IntMatrix& generators);
  static Sublattice full(size_t ambient_rank);

  size_t ambient_rank() const { return ambient_rank_; }
  size_t rank() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }

  bool contains(const IntVector& v) const;
  bool contains(const Sublattice& other) const;
  /// Integer coordinates of v in the stored basis, if v lies in the lattice.
  std::optional<IntVector> coordinates(const IntVector& v) const;

  friend bool operator==(const Sublattice& a, const Sublattice& b) = default;
  friend std::strong_ordering operator<=>(const Sublattice& a, const Sublattice& b);

 private:
  size_t ambient_rank_ = 0;
  IntMatrix basis_;
};

/// Smallest split direct summand of Z^n containing L, i.e. (L tensor Q) cap Z^n.
Sublattice saturate(const Sublattice& lattice);

bool is_split_summand(const Sublattice& lattice);

/// Rows form a basis of `sup` whose first rank(sub) rows are the stored basis of `sub`.
/// Throws InputError if sub is not contained in sup or sup/sub has torsion.
IntMatrix extend_basis(const Sublattice& sub, const Sublattice& sup);

/// Saturated integral kernel {v : M v = 0}.
Sublattice kernel_lattice(const IntMatrix& m);

/// Values of a homomorphism Gamma -> Q/Z on a basis, each reduced to [0,1).
struct TorsionPhase {
  std::vector<Rational> values;

  TorsionPhase() = default;
  explicit TorsionPhase(std::vector<Rational> v);
  friend bool operator==(const TorsionPhase& a, const TorsionPhase& b) { return a.values == b.values; }
};

bool lexicographic_less(const IntVector& a, const IntVector& b);

}  // namespace toricmorgan
