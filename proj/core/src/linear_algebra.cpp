#include "toricmorgan/linear_algebra.hpp"

#include <algorithm>
#include <map>

namespace toricmorgan {

namespace {

std::vector<Rational>& thread_scratch(size_t dim) {
  thread_local std::vector<Rational> scratch;
  if (scratch.size() < dim) scratch.resize(dim);
  return scratch;
}

}  // namespace

RowEchelon::RowEchelon(size_t dim) : dim_(dim), pivot_row_(dim, -1) {}

SparseVector RowEchelon::reduce_dense(std::vector<Rational>& acc, std::uint32_t top) const {
  SparseVector out;
  for (std::int64_t col = top; col >= 0; --col) {
    Rational& a = acc[static_cast<size_t>(col)];
    if (sgn(a) == 0) continue;
    int p = pivot_row_[static_cast<size_t>(col)];
    if (p < 0) continue;
    const Rational factor = a;
    for (const auto& [idx, val] : rows_[static_cast<size_t>(p)]) acc[idx] -= factor * val;
  }
  for (std::uint32_t col = 0; col <= top; ++col) {
    Rational& a = acc[col];
    if (sgn(a) != 0) {
      out.emplace_back(col, a);
      a = 0;
    }
  }
  return out;
}

SparseVector RowEchelon::reduce(const SparseVector& v) const {
  if (v.empty()) return {};
  auto& acc = thread_scratch(dim_);
  for (const auto& [idx, val] : v) acc[idx] = val;
  return reduce_dense(acc, v.back().first);
}

bool RowEchelon::insert(const SparseVector& v) {
  SparseVector r = reduce(v);
  if (r.empty()) return false;
  const std::uint32_t lead = r.back().first;
  const Rational inv = 1 / r.back().second;
  for (auto& entry : r) entry.second *= inv;
  pivot_row_[lead] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(r));
  return true;
}

namespace {

using IntRow = std::vector<std::pair<std::uint32_t, Integer>>;

void remove_content(IntRow& row) {
  Integer g = 0;
  for (const auto& e : row) {
    g = gcd(g, e.second);
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& e : row) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
}

IntRow combine(const Integer& a, const IntRow& x, const Integer& b, const IntRow& y) {
  // a*x - b*y
  IntRow out;
  out.reserve(x.size() + y.size());
  size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, -b * y[j].second);
      ++j;
    } else {
      Integer v = a * x[i].second - b * y[j].second;
      if (v != 0) out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

size_t fraction_free_rank(const std::vector<SparseVector>& rows) {
  std::map<std::uint32_t, IntRow> pivots;
  for (const auto& row : rows) {
    if (row.empty()) continue;
    Integer l = 1;
    for (const auto& e : row) l = lcm(l, Integer(e.second.get_den()));
    IntRow r;
    r.reserve(row.size());
    for (const auto& e : row) {
      Rational s = e.second * l;
      r.emplace_back(e.first, s.get_num());
    }
    remove_content(r);
    while (!r.empty()) {
      auto it = pivots.find(r.back().first);
      if (it == pivots.end()) {
        pivots.emplace(r.back().first, std::move(r));
        break;
      }
      const Integer& a = it->second.back().second;
      const Integer& b = r.back().second;
      Integer g = gcd(a, b);
      r = combine(a / g, r, b / g, it->second);
      remove_content(r);
    }
  }
  return pivots.size();
}

namespace {

// Row-reduces in place; returns pivot columns in order.
std::vector<size_t> rref(RatMatrix& m, size_t cols) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t c = 0; c < cols && row < m.size(); ++c) {
    size_t p = row;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    Rational inv = 1 / m[row][c];
    for (auto& x : m[row]) x *= inv;
    for (size_t r = 0; r < m.size(); ++r) {
      if (r == row || sgn(m[r][c]) == 0) continue;
      Rational f = m[r][c];
      for (size_t k = 0; k < m[r].size(); ++k) m[r][k] -= f * m[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

std::optional<RatVector> solve_unique(const RatMatrix& a, const RatVector& b) {
  const size_t cols = a.empty() ? 0 : a[0].size();
  RatMatrix aug = a;
  for (size_t r = 0; r < aug.size(); ++r) aug[r].push_back(b[r]);
  if (a.empty()) return RatVector{};
  auto pivots = rref(aug, cols);
  if (pivots.size() != cols) return std::nullopt;
  for (size_t r = cols; r < aug.size(); ++r)
    if (sgn(aug[r][cols]) != 0) return std::nullopt;
  RatVector x(cols);
  for (size_t i = 0; i < cols; ++i) x[i] = aug[i][cols];
  return x;
}

size_t rank(const RatMatrix& a) {
  if (a.empty()) return 0;
  RatMatrix m = a;
  return rref(m, m[0].size()).size();
}

std::vector<RatVector> nullspace(const RatMatrix& a, size_t cols) {
  RatMatrix m = a;
  auto pivots = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<RatVector> basis;
  for (size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVector v(cols);
    v[f] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatVector> find_feasible_point(const LinearProgram& lp) {
  // Column layout: for each variable a positive part, plus a negative part if
  // free; then one slack per inequality; then one artificial per row.
  std::vector<size_t> pos_col(lp.num_vars), neg_col(lp.num_vars, SIZE_MAX);
  size_t ncols = 0;
  for (size_t i = 0; i < lp.num_vars; ++i) {
    pos_col[i] = ncols++;
    bool nonneg = i < lp.nonnegative.size() && lp.nonnegative[i];
    if (!nonneg) neg_col[i] = ncols++;
  }
  const size_t m = lp.constraints.size();
  std::vector<size_t> slack_col(m, SIZE_MAX);
  for (size_t r = 0; r < m; ++r)
    if (lp.constraints[r].relation != Relation::Equal) slack_col[r] = ncols++;
  const size_t first_artificial = ncols;
  ncols += m;

  RatMatrix t(m, RatVector(ncols + 1));
  for (size_t r = 0; r < m; ++r) {
    const auto& c = lp.constraints[r];
    for (size_t i = 0; i < lp.num_vars && i < c.coefficients.size(); ++i) {
      t[r][pos_col[i]] = c.coefficients[i];
      if (neg_col[i] != SIZE_MAX) t[r][neg_col[i]] = -c.coefficients[i];
    }
    if (c.relation == Relation::LessEqual) t[r][slack_col[r]] = 1;
    if (c.relation == Relation::GreaterEqual) t[r][slack_col[r]] = -1;
    t[r][ncols] = c.rhs;
    if (sgn(t[r][ncols]) < 0)
      for (auto& x : t[r]) x = -x;
    t[r][first_artificial + r] = 1;
  }
  std::vector<size_t> basis(m);
  for (size_t r = 0; r < m; ++r) basis[r] = first_artificial + r;

  // reduced costs of the phase-one objective (sum of artificials)
  RatVector cost(ncols + 1);
  for (size_t r = 0; r < m; ++r)
    for (size_t j = 0; j <= ncols; ++j)
      if (j < first_artificial || j == ncols) cost[j] -= t[r][j];

  while (true) {
    size_t enter = ncols;
    for (size_t j = 0; j < ncols; ++j)
      if (sgn(cost[j]) < 0) {
        enter = j;
        break;
      }
    if (enter == ncols) break;
    size_t leave = m;
    Rational best;
    for (size_t r = 0; r < m; ++r) {
      if (sgn(t[r][enter]) <= 0) continue;
      Rational ratio = t[r][ncols] / t[r][enter];
      if (leave == m || ratio < best || (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction; cannot happen in phase one
    Rational inv = 1 / t[leave][enter];
    for (auto& x : t[leave]) x *= inv;
    for (size_t r = 0; r < m; ++r) {
      if (r == leave || sgn(t[r][enter]) == 0) continue;
      Rational f = t[r][enter];
      for (size_t j = 0; j <= ncols; ++j) t[r][j] -= f * t[leave][j];
    }
    if (sgn(cost[enter]) != 0) {
      Rational f = cost[enter];
      for (size_t j = 0; j <= ncols; ++j) cost[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  if (sgn(cost[ncols]) != 0) return std::nullopt;

  RatVector column_value(ncols);
  for (size_t r = 0; r < m; ++r) column_value[basis[r]] = t[r][ncols];
  RatVector x(lp.num_vars);
  for (size_t i = 0; i < lp.num_vars; ++i) {
    x[i] = column_value[pos_col[i]];
    if (neg_col[i] != SIZE_MAX) x[i] -= column_value[neg_col[i]];
  }
  return x;
}

}  // namespace toricmorgan
