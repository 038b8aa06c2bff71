#include "toricmorgan/oracles.hpp"

#include "toricmorgan/linear_algebra.hpp"

namespace toricmorgan::oracles {

namespace {

Poincare multiply(const Poincare& a, const Poincare& b) {
  if (a.empty() || b.empty()) return {};
  Poincare out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Poincare power(const Poincare& p, size_t k) {
  Poincare out{1};
  for (size_t i = 0; i < k; ++i) out = multiply(out, p);
  return out;
}

Integer binomial(size_t n, size_t k) {
  if (k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

}  // namespace

std::vector<size_t> h_vector_betti(const Fan& fan) {
  std::vector<size_t> out(2 * fan.dim() + 1, 0);
  auto h = h_vector(fan);
  for (size_t k = 0; k < h.size(); ++k) out[2 * k] = h[k].get_ui();
  return out;
}

Poincare kunneth(const std::vector<Poincare>& factors) {
  Poincare out{1};
  for (const auto& f : factors) out = multiply(out, f);
  return out;
}

Poincare torus_poincare(size_t n) { return power({1, 1}, n); }

size_t ArithmeticMatroidData::multiplicity(const std::vector<size_t>& subset) const {
  if (subset.empty()) return 1;
  std::vector<IntVector> rows;
  std::vector<Rational> ph;
  for (size_t i : subset) {
    rows.push_back(chars[i]);
    ph.push_back(phases[i]);
  }
  auto result = decompose_system(IntMatrix::from_rows(rows, ambient_rank), ph);
  return result.consistent ? result.layers.size() : 0;
}

size_t ArithmeticMatroidData::rank(const std::vector<size_t>& subset) const {
  if (subset.empty()) return 0;
  std::vector<IntVector> rows;
  for (size_t i : subset) rows.push_back(chars[i]);
  return toricmorgan::rank(IntMatrix::from_rows(rows, ambient_rank));
}

ArithmeticMatroidData divisorial_data(const Arrangement& arrangement) {
  ArithmeticMatroidData out;
  out.ambient_rank = arrangement.dim;
  for (const auto& l : arrangement.layers) {
    if (l.rank() != 1) throw InputError("the arithmetic Tutte oracle only handles divisorial layers");
    out.chars.push_back(l.gamma().basis().row(0));
    out.phases.push_back(l.phase().values[0]);
  }
  return out;
}

Bivariate arithmetic_tutte(const ArithmeticMatroidData& data) {
  const size_t g = data.chars.size();
  if (g > 20) throw InputError("ground set too large for subset enumeration");
  std::vector<size_t> all(g);
  for (size_t i = 0; i < g; ++i) all[i] = i;
  const size_t r = data.rank(all);
  Bivariate out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g); ++mask) {
    std::vector<size_t> subset;
    for (size_t i = 0; i < g; ++i)
      if ((mask >> i) & 1) subset.push_back(i);
    const size_t m = data.multiplicity(subset);
    if (m == 0) continue;
    const size_t rs = data.rank(subset);
    const size_t a = r - rs, b = subset.size() - rs;
    // expand (x-1)^a (y-1)^b
    for (size_t i = 0; i <= a; ++i)
      for (size_t j = 0; j <= b; ++j) {
        Integer c = binomial(a, i) * binomial(b, j) * m;
        if ((a - i + b - j) % 2) c = -c;
        out[{static_cast<unsigned>(i), static_cast<unsigned>(j)}] += c;
      }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

DivisorialOracle poincare_divisorial(const ArithmeticMatroidData& data) {
  DivisorialOracle out;
  out.tutte = arithmetic_tutte(data);
  std::vector<size_t> all(data.chars.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = i;
  const size_t r = data.rank(all);
  Poincare p;
  out.valid = true;
  for (const auto& [exps, c] : out.tutte) {
    if (exps.second != 0) continue;
    if (exps.first > r) {
      out.valid = false;
      continue;
    }
    // q^r ((2q+1)/q)^a = (2q+1)^a q^{r-a}
    Poincare term(r - exps.first, 0);
    term.push_back(c);
    term = multiply(term, power({1, 2}, exps.first));
    if (p.size() < term.size()) p.resize(term.size(), 0);
    for (size_t k = 0; k < term.size(); ++k) p[k] += term[k];
  }
  p = multiply(p, torus_poincare(data.ambient_rank - r));
  while (!p.empty() && p.back() == 0) p.pop_back();
  out.poincare = p;
  if (p.empty() || p[0] != 1) out.valid = false;
  for (const auto& c : p)
    if (c < 0) out.valid = false;
  return out;
}

bool self_check() {
  ArithmeticMatroidData point{1, {{1}}, {0}};
  ArithmeticMatroidData two{1, {{1}, {1}}, {0, ratio(1, 2)}};
  ArithmeticMatroidData divisor{2, {{1, 0}}, {0}};
  auto a = poincare_divisorial(point);
  auto b = poincare_divisorial(two);
  auto c = poincare_divisorial(divisor);
  return a.valid && a.poincare == Poincare{1, 2} && b.valid && b.poincare == Poincare{1, 3} && c.valid &&
         c.poincare == kunneth({{1, 2}, torus_poincare(1)});
}

std::vector<size_t> punctured_torus_betti(size_t n) {
  if (n == 0) throw InputError("punctured_torus_betti needs n >= 1");
  std::vector<size_t> out(2 * n + 1, 0);
  for (size_t k = 0; k + 2 <= 2 * n; ++k) out[k] = binomial(n, k).get_ui();
  out[2 * n - 1] = binomial(n, 2 * n - 1).get_ui() + 1;
  return out;
}

std::vector<size_t> punctured_line_betti(size_t k) { return {1, k}; }

std::vector<size_t> as_betti(const Poincare& p, size_t length) {
  std::vector<size_t> out(length, 0);
  for (size_t k = 0; k < p.size(); ++k) {
    if (p[k] < 0) throw MathError("negative Betti number from an oracle");
    if (k < length) out[k] = p[k].get_ui();
    else if (p[k] != 0) throw MathError("oracle polynomial longer than the Betti table");
  }
  return out;
}

std::string to_string(const Poincare& p) {
  std::string out;
  for (size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0) continue;
    std::string term;
    if (k == 0) term = p[k].get_str();
    else term = (p[k] == 1 ? "" : p[k].get_str()) + (k == 1 ? "q" : "q^" + std::to_string(k));
    out += out.empty() ? term : " + " + term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace toricmorgan::oracles
