#include "toricmorgan/lattice.hpp"

#include <algorithm>
#include <utility>

namespace toricmorgan {

IntMatrix IntMatrix::identity(size_t n) {
  IntMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InputError("row length mismatch");
    for (size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntVector IntMatrix::row(size_t r) const {
  return IntVector(data_.begin() + static_cast<long>(r * cols_),
                   data_.begin() + static_cast<long>((r + 1) * cols_));
}

std::vector<IntVector> IntMatrix::row_list() const {
  std::vector<IntVector> out;
  out.reserve(rows_);
  for (size_t r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

void IntMatrix::append_row(const IntVector& v) {
  if (v.size() != cols_) throw InputError("row length mismatch");
  data_.insert(data_.end(), v.begin(), v.end());
  ++rows_;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::submatrix_rows(size_t begin, size_t end) const {
  IntMatrix s(end - begin, cols_);
  for (size_t r = begin; r < end; ++r)
    for (size_t c = 0; c < cols_; ++c) s(r - begin, c) = (*this)(r, c);
  return s;
}

void IntMatrix::swap_rows(size_t a, size_t b) {
  if (a == b) return;
  for (size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(size_t a, size_t b) {
  if (a == b) return;
  for (size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(size_t dst, size_t src, const Integer& k) {
  if (k == 0) return;
  for (size_t c = 0; c < cols_; ++c) (*this)(dst, c) += k * (*this)(src, c);
}

void IntMatrix::add_col_multiple(size_t dst, size_t src, const Integer& k) {
  if (k == 0) return;
  for (size_t r = 0; r < rows_; ++r) (*this)(r, dst) += k * (*this)(r, src);
}

void IntMatrix::negate_row(size_t r) {
  for (size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::negate_col(size_t c) {
  for (size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw InputError("matrix dimension mismatch");
  IntMatrix p(a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (size_t j = 0; j < b.cols(); ++j) p(i, j) += a(i, k) * b(k, j);
    }
  return p;
}

IntVector operator*(const IntVector& row, const IntMatrix& m) {
  IntVector out(m.cols());
  for (size_t k = 0; k < m.rows(); ++k) {
    if (row[k] == 0) continue;
    for (size_t j = 0; j < m.cols(); ++j) out[j] += row[k] * m(k, j);
  }
  return out;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("determinant of non-square matrix");
  const size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      a.swap_rows(k, swap);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j));
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

HermiteForm hnf(const IntMatrix& m) {
  HermiteForm out{m, IntMatrix::identity(m.rows())};
  IntMatrix& H = out.H;
  IntMatrix& U = out.U;
  size_t pivot = 0;
  for (size_t col = 0; col < H.cols() && pivot < H.rows(); ++col) {
    while (true) {
      size_t best = H.rows();
      for (size_t r = pivot; r < H.rows(); ++r) {
        if (H(r, col) == 0) continue;
        if (best == H.rows() || abs(H(r, col)) < abs(H(best, col))) best = r;
      }
      if (best == H.rows()) break;
      H.swap_rows(pivot, best);
      U.swap_rows(pivot, best);
      bool done = true;
      for (size_t r = pivot + 1; r < H.rows(); ++r) {
        if (H(r, col) == 0) continue;
        Integer q = H(r, col) / H(pivot, col);
        H.add_row_multiple(r, pivot, -q);
        U.add_row_multiple(r, pivot, -q);
        if (H(r, col) != 0) done = false;
      }
      if (done) break;
    }
    if (pivot >= H.rows() || H(pivot, col) == 0) continue;
    if (H(pivot, col) < 0) {
      H.negate_row(pivot);
      U.negate_row(pivot);
    }
    for (size_t r = 0; r < pivot; ++r) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), H(r, col).get_mpz_t(), H(pivot, col).get_mpz_t());
      H.add_row_multiple(r, pivot, -q);
      U.add_row_multiple(r, pivot, -q);
    }
    ++pivot;
  }
  return out;
}

SmithForm snf(const IntMatrix& m) {
  SmithForm out{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  IntMatrix& D = out.D;
  IntMatrix& U = out.U;
  IntMatrix& V = out.V;
  const size_t rows = D.rows();
  const size_t cols = D.cols();
  for (size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      // smallest nonzero entry of the trailing block becomes the pivot
      size_t pr = rows, pc = cols;
      for (size_t r = t; r < rows; ++r)
        for (size_t c = t; c < cols; ++c) {
          if (D(r, c) == 0) continue;
          if (pr == rows || abs(D(r, c)) < abs(D(pr, pc))) {
            pr = r;
            pc = c;
          }
        }
      if (pr == rows) return out;
      D.swap_rows(t, pr);
      U.swap_rows(t, pr);
      D.swap_cols(t, pc);
      V.swap_cols(t, pc);

      bool clean = true;
      for (size_t r = t + 1; r < rows; ++r) {
        if (D(r, t) == 0) continue;
        Integer q = D(r, t) / D(t, t);
        D.add_row_multiple(r, t, -q);
        U.add_row_multiple(r, t, -q);
        if (D(r, t) != 0) clean = false;
      }
      for (size_t c = t + 1; c < cols; ++c) {
        if (D(t, c) == 0) continue;
        Integer q = D(t, c) / D(t, t);
        D.add_col_multiple(c, t, -q);
        V.add_col_multiple(c, t, -q);
        if (D(t, c) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility chain: pivot must divide the whole trailing block
      size_t bad_row = rows;
      for (size_t r = t + 1; r < rows && bad_row == rows; ++r)
        for (size_t c = t + 1; c < cols; ++c)
          if (D(r, c) % D(t, t) != 0) {
            bad_row = r;
            break;
          }
      if (bad_row == rows) break;
      D.add_row_multiple(t, bad_row, 1);
      U.add_row_multiple(t, bad_row, 1);
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      U.negate_row(t);
    }
  }
  return out;
}

std::vector<Integer> elementary_divisors(const IntMatrix& m) {
  SmithForm s = snf(m);
  std::vector<Integer> out;
  for (size_t i = 0; i < std::min(s.D.rows(), s.D.cols()); ++i)
    if (s.D(i, i) != 0) out.push_back(s.D(i, i));
  return out;
}

size_t rank(const IntMatrix& m) {
  HermiteForm h = hnf(m);
  size_t r = 0;
  for (size_t i = 0; i < h.H.rows(); ++i) {
    bool zero = true;
    for (size_t c = 0; c < h.H.cols(); ++c)
      if (h.H(i, c) != 0) {
        zero = false;
        break;
      }
    if (!zero) ++r;
  }
  return r;
}

Sublattice Sublattice::span(const IntMatrix& generators) {
  Sublattice s(generators.cols());
  HermiteForm h = hnf(generators);
  for (size_t r = 0; r < h.H.rows(); ++r) {
    IntVector row = h.H.row(r);
    if (!is_zero(row)) s.basis_.append_row(row);
  }
  return s;
}

Sublattice Sublattice::span(size_t ambient_rank, const std::vector<IntVector>& generators) {
  return span(IntMatrix::from_rows(generators, ambient_rank));
}

Sublattice Sublattice::full(size_t ambient_rank) { return span(IntMatrix::identity(ambient_rank)); }

std::optional<IntVector> Sublattice::coordinates(const IntVector& v) const {
  if (v.size() != ambient_rank_) throw InputError("vector length does not match lattice rank");
  IntVector coords(rank());
  size_t col = 0;
  for (size_t i = 0; i < rank(); ++i) {
    while (basis_(i, col) == 0) ++col;
    Integer residual = v[col];
    for (size_t k = 0; k < i; ++k) residual -= coords[k] * basis_(k, col);
    if (residual % basis_(i, col) != 0) return std::nullopt;
    coords[i] = residual / basis_(i, col);
  }
  IntVector check = coords * basis_;
  if (rank() == 0) check = IntVector(ambient_rank_);
  if (check != v) return std::nullopt;
  return coords;
}

bool Sublattice::contains(const IntVector& v) const { return coordinates(v).has_value(); }

bool Sublattice::contains(const Sublattice& other) const {
  for (size_t r = 0; r < other.rank(); ++r)
    if (!contains(other.basis().row(r))) return false;
  return true;
}

bool lexicographic_less(const IntVector& a, const IntVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::strong_ordering operator<=>(const Sublattice& a, const Sublattice& b) {
  if (auto c = a.ambient_rank_ <=> b.ambient_rank_; c != 0) return c;
  if (auto c = a.rank() <=> b.rank(); c != 0) return c;
  for (size_t r = 0; r < a.rank(); ++r)
    for (size_t c = 0; c < a.ambient_rank_; ++c) {
      int s = cmp(a.basis_(r, c), b.basis_(r, c));
      if (s < 0) return std::strong_ordering::less;
      if (s > 0) return std::strong_ordering::greater;
    }
  return std::strong_ordering::equal;
}

Sublattice kernel_lattice(const IntMatrix& m) {
  const size_t n = m.cols();
  HermiteForm h = hnf(m.transpose());
  std::vector<IntVector> kernel;
  for (size_t r = 0; r < h.H.rows(); ++r)
    if (is_zero(h.H.row(r))) kernel.push_back(h.U.row(r));
  return Sublattice::span(n, kernel);
}

Sublattice saturate(const Sublattice& lattice) {
  Sublattice orthogonal = kernel_lattice(lattice.basis());
  return kernel_lattice(orthogonal.basis());
}

bool is_split_summand(const Sublattice& lattice) {
  for (const auto& d : elementary_divisors(lattice.basis()))
    if (d != 1) return false;
  return true;
}

IntMatrix unimodular_inverse(const IntMatrix& v) {
  HermiteForm h = hnf(v);
  if (h.H != IntMatrix::identity(v.rows())) throw MathError("matrix is not unimodular");
  return h.U;
}

IntMatrix extend_basis(const Sublattice& sub, const Sublattice& sup) {
  if (sub.ambient_rank() != sup.ambient_rank()) throw InputError("extend_basis: ambient ranks differ");
  const size_t r = sub.rank();
  const size_t k = sup.rank();
  IntMatrix coords(r, k);
  for (size_t i = 0; i < r; ++i) {
    auto c = sup.coordinates(sub.basis().row(i));
    if (!c) throw InputError("extend_basis: sub is not contained in sup");
    for (size_t j = 0; j < k; ++j) coords(i, j) = (*c)[j];
  }
  for (const auto& d : elementary_divisors(coords))
    if (d != 1) throw InputError("extend_basis: quotient sup/sub has torsion");

  IntMatrix full = coords;
  if (r > 0) {
    // complete by unit vectors on the non-pivot columns of the HNF when that is unimodular
    HermiteForm h = hnf(coords);
    std::vector<bool> pivot_col(k, false);
    size_t col = 0;
    for (size_t i = 0; i < r; ++i) {
      while (h.H(i, col) == 0) ++col;
      pivot_col[col] = true;
    }
    for (size_t j = 0; j < k; ++j) {
      if (pivot_col[j]) continue;
      IntVector e(k);
      e[j] = 1;
      full.append_row(e);
    }
    if (abs(determinant(full)) != 1) {
      SmithForm s = snf(coords);
      IntMatrix w = unimodular_inverse(s.V);
      full = coords;
      for (size_t i = r; i < k; ++i) full.append_row(w.row(i));
    }
  } else {
    full = IntMatrix::identity(k);
  }
  if (abs(determinant(full)) != 1) throw MathError("extend_basis: completion is not unimodular");
  return full * sup.basis();
}

TorsionPhase::TorsionPhase(std::vector<Rational> v) : values(std::move(v)) {
  for (auto& q : values) q = reduce_mod_one(q);
}

}  // namespace toricmorgan
