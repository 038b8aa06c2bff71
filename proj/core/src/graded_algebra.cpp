#include "toricmorgan/graded_algebra.hpp"

#include <algorithm>
#include <future>
#include <set>

namespace toricmorgan {

void add_term(Element& acc, const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = acc.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) acc.erase(it);
  }
}

void add_to(Element& acc, const Element& e, const Rational& factor) {
  if (sgn(factor) == 0) return;
  for (const auto& [m, c] : e) add_term(acc, m, c * factor);
}

Element scaled(const Element& e, const Rational& factor) {
  Element out;
  add_to(out, e, factor);
  return out;
}

Element operator+(const Element& a, const Element& b) {
  Element out = a;
  add_to(out, b);
  return out;
}

Element operator-(const Element& a, const Element& b) {
  Element out = a;
  add_to(out, b, -1);
  return out;
}

size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  size_t h = 1469598103934665603ULL;
  for (auto e : m) {
    h ^= e;
    h *= 1099511628211ULL;
  }
  return h;
}

MonomialAlgebra::MonomialAlgebra(std::vector<GeneratorSpec> generators, Rule rule)
    : generators_(std::move(generators)), rule_(std::move(rule)) {
  for (const auto& g : generators_)
    if (g.degree <= 0) throw InputError("generator " + g.name + " must have positive degree");
}

std::optional<size_t> MonomialAlgebra::find_generator(const std::string& name) const {
  for (size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i].name == name) return i;
  return std::nullopt;
}

int MonomialAlgebra::degree(const Monomial& m) const {
  int d = 0;
  for (size_t i = 0; i < m.size(); ++i) d += m[i] * generators_[i].degree;
  return d;
}

bool MonomialAlgebra::admissible(const Monomial& m) const {
  for (size_t i = 0; i < m.size(); ++i)
    if (generators_[i].odd() && m[i] > 1) return false;
  return !rule_ || rule_(m);
}

const MonomialAlgebra::DegreeCache& MonomialAlgebra::cache(int d) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = cache_.find(d);
  if (it != cache_.end()) return *it->second;
  auto entry = std::make_unique<DegreeCache>();
  if (d >= 0) {
    Monomial m = unit_monomial();
    std::function<void(size_t, int)> rec = [&](size_t i, int remaining) {
      if (remaining == 0) {
        entry->basis.push_back(m);
        return;
      }
      if (i == generators_.size()) return;
      rec(i + 1, remaining);
      const int gd = generators_[i].degree;
      const int cap = generators_[i].odd() ? 1 : remaining / gd;
      int used = 0;
      for (int k = 1; k <= cap && gd * k <= remaining; ++k) {
        ++m[i];
        ++used;
        if (rule_ && !rule_(m)) break;
        rec(i + 1, remaining - gd * k);
      }
      m[i] -= static_cast<std::uint16_t>(used);
    };
    rec(0, d);
    std::sort(entry->basis.begin(), entry->basis.end());
    for (std::uint32_t k = 0; k < entry->basis.size(); ++k) entry->index.emplace(entry->basis[k], k);
  }
  auto& ref = *entry;
  cache_.emplace(d, std::move(entry));
  return ref;
}

const std::vector<Monomial>& MonomialAlgebra::degree_basis(int d) const { return cache(d).basis; }

std::optional<std::uint32_t> MonomialAlgebra::index_in_degree(const Monomial& m) const {
  const auto& c = cache(degree(m));
  auto it = c.index.find(m);
  if (it == c.index.end()) return std::nullopt;
  return it->second;
}

Element MonomialAlgebra::one() const { return Element{{unit_monomial(), Rational(1)}}; }

Element MonomialAlgebra::gen(size_t i) const {
  Monomial m = unit_monomial();
  m[i] = 1;
  return Element{{m, Rational(1)}};
}

Element MonomialAlgebra::gen(const std::string& name) const {
  auto i = find_generator(name);
  if (!i) throw InputError("unknown generator " + name);
  return gen(*i);
}

int MonomialAlgebra::multiply_monomials(const Monomial& a, const Monomial& b, Monomial& out) const {
  // a and b are ordered products in generator order; moving each odd factor of
  // b past the odd factors of a with larger index costs a sign.
  int parity = 0;
  int odd_in_a_above = 0;
  for (size_t i = generators_.size(); i-- > 0;) {
    if (!generators_[i].odd()) continue;
    if (a[i] && b[i]) return 0;
    if (b[i]) parity ^= odd_in_a_above & 1;
    if (a[i]) ++odd_in_a_above;
  }
  out.resize(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = static_cast<std::uint16_t>(a[i] + b[i]);
  if (rule_ && !rule_(out)) return 0;
  return parity ? -1 : 1;
}

Element MonomialAlgebra::multiply(const Element& a, const Element& b) const {
  Element out;
  Monomial prod;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      int s = multiply_monomials(ma, mb, prod);
      if (s == 0) continue;
      Rational c = ca * cb;
      if (s < 0) c = -c;
      add_term(out, prod, c);
    }
  return out;
}

Element MonomialAlgebra::power(const Element& a, unsigned k) const {
  Element out = one();
  for (unsigned i = 0; i < k; ++i) out = multiply(out, a);
  return out;
}

std::optional<int> MonomialAlgebra::homogeneous_degree(const Element& e) const {
  if (e.empty()) return std::nullopt;
  int d = degree(e.begin()->first);
  for (const auto& [m, c] : e)
    if (degree(m) != d) return std::nullopt;
  return d;
}

std::string MonomialAlgebra::to_string(const Monomial& m) const {
  std::string out;
  for (size_t i = 0; i < m.size(); ++i) {
    if (!m[i]) continue;
    if (!out.empty()) out += "*";
    out += generators_[i].name;
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::string MonomialAlgebra::to_string(const Element& e) const {
  if (e.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : e) {
    const bool negative = sgn(c) < 0;
    if (!out.empty()) out += negative ? " - " : " + ";
    else if (negative) out += "-";
    Rational mag = negative ? Rational(-c) : c;
    const std::string mono = to_string(m);
    if (mag == 1) out += mono;
    else if (mono == "1") out += toricmorgan::to_string(mag);
    else out += toricmorgan::to_string(mag) + "*" + mono;
  }
  return out;
}

std::vector<Monomial> MonomialAlgebra::minimal_inadmissible(int d) const {
  std::set<Monomial> out;
  for (size_t y = 0; y < generators_.size(); ++y) {
    const int rest = d - generators_[y].degree;
    if (rest < 0) continue;
    for (const auto& m : degree_basis(rest)) {
      if (generators_[y].odd() && m[y]) continue;
      Monomial u = m;
      ++u[y];
      if (admissible(u)) continue;
      bool minimal = true;
      for (size_t z = 0; z < u.size() && minimal; ++z) {
        if (!u[z] || z == y) continue;
        Monomial v = u;
        --v[z];
        minimal = admissible(v);
      }
      if (minimal) out.insert(u);
    }
  }
  return {out.begin(), out.end()};
}

DegreewiseQuotient::DegreewiseQuotient(std::shared_ptr<const MonomialAlgebra> ambient, std::vector<Element> generators,
                                       int dmax, bool parallel)
    : ambient_(std::move(ambient)), dmax_(dmax) {
  if (dmax < 0) throw InputError("truncation degree must be nonnegative");
  for (auto& g : generators) {
    if (g.empty()) continue;
    // terms on inadmissible monomials are zero in the ambient algebra
    Element clean;
    for (const auto& [m, c] : g)
      if (ambient_->admissible(m)) add_term(clean, m, c);
    if (clean.empty()) continue;
    auto d = ambient_->homogeneous_degree(clean);
    if (!d) throw InputError("non-homogeneous ideal generator " + ambient_->to_string(g));
    generator_degrees_.push_back(*d);
    generators_.push_back(std::move(clean));
  }
  for (int d = 0; d <= dmax_ + 1; ++d) ambient_->degree_basis(d);
  degrees_.resize(static_cast<size_t>(dmax_) + 1);
  if (parallel) {
    std::vector<std::future<void>> jobs;
    for (int d = 0; d <= dmax_; ++d) jobs.push_back(std::async(std::launch::async, [this, d] { build_degree(d); }));
    for (auto& j : jobs) j.get();
  } else {
    for (int d = 0; d <= dmax_; ++d) build_degree(d);
  }
}

void DegreewiseQuotient::build_degree(int d) {
  Degree& data = degrees_[static_cast<size_t>(d)];
  const auto& amb = ambient_->degree_basis(d);
  data.killed.assign(amb.size(), false);
  data.span = RowEchelon(amb.size());
  Monomial prod;
  std::vector<size_t> polynomial_gens;
  for (size_t k = 0; k < generators_.size(); ++k) {
    const int rest = d - generator_degrees_[k];
    if (rest < 0) continue;
    if (generators_[k].size() != 1) {
      polynomial_gens.push_back(k);
      continue;
    }
    const Monomial& g = generators_[k].begin()->first;
    for (const auto& m : ambient_->degree_basis(rest))
      if (ambient_->multiply_monomials(g, m, prod) != 0) data.killed[*ambient_->index_in_degree(prod)] = true;
  }
  for (size_t k : polynomial_gens) {
    const int rest = d - generator_degrees_[k];
    for (const auto& m : ambient_->degree_basis(rest)) {
      std::map<std::uint32_t, Rational> acc;
      for (const auto& [gm, c] : generators_[k]) {
        int s = ambient_->multiply_monomials(gm, m, prod);
        if (s == 0) continue;
        std::uint32_t idx = *ambient_->index_in_degree(prod);
        if (data.killed[idx]) continue;
        acc[idx] += s > 0 ? c : Rational(-c);
      }
      SparseVector v;
      for (auto& [idx, c] : acc)
        if (sgn(c) != 0) v.emplace_back(idx, c);
      if (!v.empty()) data.span.insert(v);
    }
  }
  data.rep_of.assign(amb.size(), -1);
  for (std::uint32_t i = 0; i < amb.size(); ++i) {
    if (data.killed[i] || data.span.is_pivot(i)) continue;
    data.rep_of[i] = static_cast<std::int32_t>(data.reps.size());
    data.reps.push_back(amb[i]);
  }
}

const DegreewiseQuotient::Degree& DegreewiseQuotient::degree_data(int d) const {
  if (d < 0 || d > dmax_)
    throw MathError("degree " + std::to_string(d) + " exceeds the truncation degree " + std::to_string(dmax_));
  return degrees_[static_cast<size_t>(d)];
}

size_t DegreewiseQuotient::dim(int d) const {
  if (d < 0) return 0;
  return degree_data(d).reps.size();
}

std::vector<size_t> DegreewiseQuotient::dims() const {
  std::vector<size_t> out;
  for (int d = 0; d <= dmax_; ++d) out.push_back(dim(d));
  return out;
}

size_t DegreewiseQuotient::ideal_dim(int d) const {
  const Degree& data = degree_data(d);
  return static_cast<size_t>(std::count(data.killed.begin(), data.killed.end(), true)) + data.span.rank();
}

const std::vector<Monomial>& DegreewiseQuotient::basis(int d) const { return degree_data(d).reps; }

SparseVector DegreewiseQuotient::coordinates(const Element& e, int d) const {
  const Degree& data = degree_data(d);
  std::map<std::uint32_t, Rational> acc;
  for (const auto& [m, c] : e) {
    if (ambient_->degree(m) != d) throw MathError("element is not homogeneous of degree " + std::to_string(d));
    if (!ambient_->admissible(m)) continue;
    std::uint32_t idx = *ambient_->index_in_degree(m);
    if (data.killed[idx]) continue;
    acc[idx] += c;
  }
  SparseVector v;
  for (auto& [idx, c] : acc)
    if (sgn(c) != 0) v.emplace_back(idx, c);
  SparseVector reduced = data.span.reduce(v);
  SparseVector out;
  out.reserve(reduced.size());
  for (auto& [idx, c] : reduced) out.emplace_back(static_cast<std::uint32_t>(data.rep_of[idx]), std::move(c));
  return out;
}

Element DegreewiseQuotient::from_coordinates(const SparseVector& v, int d) const {
  const Degree& data = degree_data(d);
  Element out;
  for (const auto& [i, c] : v) add_term(out, data.reps[i], c);
  return out;
}

Element DegreewiseQuotient::normal_form(const Element& e) const {
  std::map<int, Element> by_degree;
  for (const auto& [m, c] : e) by_degree[ambient_->degree(m)].emplace(m, c);
  Element out;
  for (const auto& [d, part] : by_degree) add_to(out, from_coordinates(coordinates(part, d), d));
  return out;
}

bool DegreewiseQuotient::is_zero(const Element& e) const { return normal_form(e).empty(); }

Element DegreewiseQuotient::multiply(const Element& a, const Element& b) const {
  return normal_form(ambient_->multiply(a, b));
}

Derivation::Derivation(std::shared_ptr<const MonomialAlgebra> algebra, std::vector<Element> images)
    : algebra_(std::move(algebra)), images_(std::move(images)) {
  if (images_.size() != algebra_->num_generators()) throw InputError("derivation needs one image per generator");
  for (size_t i = 0; i < images_.size(); ++i) {
    auto d = algebra_->homogeneous_degree(images_[i]);
    if (d && *d != algebra_->generator(i).degree + 1)
      throw InputError("derivation image of " + algebra_->generator(i).name + " has the wrong degree");
  }
}

Element Derivation::apply(const Monomial& m) const {
  Element out;
  const size_t n = m.size();
  int prefix_degree = 0;
  for (size_t i = 0; i < n; ++i) {
    if (!m[i]) continue;
    const int gdeg = algebra_->generator(i).degree;
    if (!images_[i].empty()) {
      Monomial prefix(n, 0), suffix(n, 0);
      for (size_t j = 0; j < i; ++j) prefix[j] = m[j];
      prefix[i] = static_cast<std::uint16_t>(m[i] - 1);
      for (size_t j = i + 1; j < n; ++j) suffix[j] = m[j];
      // d(g^a) = a g^(a-1) d(g); for odd g the exponent is 1
      Element left{{prefix, Rational(prefix_degree % 2 ? -1 : 1) * m[i]}};
      Element term = algebra_->multiply(algebra_->multiply(left, images_[i]), Element{{suffix, Rational(1)}});
      add_to(out, term);
    }
    prefix_degree += gdeg * m[i];
  }
  return out;
}

Element Derivation::apply(const Element& e) const {
  Element out;
  for (const auto& [m, c] : e) add_to(out, apply(m), c);
  return out;
}

std::optional<std::string> derivation_defect(const DegreewiseQuotient& q, const Derivation& der) {
  const auto& alg = q.ambient();
  for (const auto& g : q.ideal_generators()) {
    auto d = alg.homogeneous_degree(g);
    if (!d || *d + 1 > q.dmax()) continue;
    Element image = der.apply(g);
    if (!q.is_zero(image))
      return "d(" + alg.to_string(g) + ") = " + alg.to_string(q.normal_form(image)) + " is not in the ideal";
  }
  for (int deg = 1; deg + 1 <= q.dmax(); ++deg)
    for (const auto& u : alg.minimal_inadmissible(deg)) {
      Element image = der.apply(u);
      if (!q.is_zero(image))
        return "d(" + alg.to_string(u) + ") = " + alg.to_string(q.normal_form(image)) +
               " does not vanish although the monomial does";
    }
  return std::nullopt;
}

bool check_derivation(const DegreewiseQuotient& q, const Derivation& der) { return !derivation_defect(q, der); }

CohomologySummary cohomology(const DegreewiseQuotient& q, const Derivation& der, bool check_square, bool parallel) {
  if (auto defect = derivation_defect(q, der)) throw MathError("derivation does not preserve the ideal: " + *defect);
  const int top = q.dmax();
  CohomologySummary out;
  out.chain_dims = q.dims();
  out.ranks.assign(static_cast<size_t>(top) + 1, 0);
  std::vector<std::vector<SparseVector>> images(static_cast<size_t>(top));
  auto matrix = [&](int d) {
    std::vector<SparseVector> rows;
    for (const auto& m : q.basis(d)) rows.push_back(q.coordinates(der.apply(m), d + 1));
    images[static_cast<size_t>(d)] = std::move(rows);
    out.ranks[static_cast<size_t>(d)] = fraction_free_rank(images[static_cast<size_t>(d)]);
  };
  if (parallel) {
    std::vector<std::future<void>> jobs;
    for (int d = 0; d < top; ++d) jobs.push_back(std::async(std::launch::async, matrix, d));
    for (auto& j : jobs) j.get();
  } else {
    for (int d = 0; d < top; ++d) matrix(d);
  }
  if (check_square) {
    for (int d = 0; d + 1 < top && out.d_squared_zero; ++d)
      for (const auto& row : images[static_cast<size_t>(d)]) {
        Element dd = der.apply(q.from_coordinates(row, d + 1));
        if (!q.coordinates(dd, d + 2).empty()) {
          out.d_squared_zero = false;
          break;
        }
      }
  }
  for (int d = 0; d < top; ++d) {
    const size_t rank_out = out.ranks[static_cast<size_t>(d)];
    const size_t rank_in = d > 0 ? out.ranks[static_cast<size_t>(d - 1)] : 0;
    out.dims.push_back(out.chain_dims[static_cast<size_t>(d)] - rank_out - rank_in);
  }
  return out;
}

AlgebraMap::AlgebraMap(const DegreewiseQuotient& source, const DegreewiseQuotient& target, std::vector<Element> images)
    : source_(&source), target_(&target), images_(std::move(images)) {
  const auto& src = source.ambient();
  if (images_.size() != src.num_generators()) throw InputError("algebra map needs one image per generator");
  for (size_t i = 0; i < images_.size(); ++i) {
    if (images_[i].empty()) continue;
    auto d = target.ambient().homogeneous_degree(images_[i]);
    if (!d || *d != src.generator(i).degree)
      throw InputError("image of " + src.generator(i).name + " is not homogeneous of degree " +
                       std::to_string(src.generator(i).degree));
  }
}

Element AlgebraMap::apply(const Monomial& m) const {
  const auto& tgt = target_->ambient();
  Element out = tgt.one();
  for (size_t i = 0; i < m.size(); ++i)
    for (unsigned k = 0; k < m[i]; ++k) {
      out = tgt.multiply(out, images_[i]);
      if (out.empty()) return out;
    }
  return target_->normal_form(out);
}

Element AlgebraMap::apply(const Element& e) const {
  Element out;
  for (const auto& [m, c] : e) add_to(out, apply(m), c);
  return target_->normal_form(out);
}

std::optional<std::string> AlgebraMap::defect(const Derivation* source_d, const Derivation* target_d) const {
  const auto& src = source_->ambient();
  const int top = std::min(source_->dmax(), target_->dmax());
  for (const auto& g : source_->ideal_generators()) {
    auto d = src.homogeneous_degree(g);
    if (!d || *d > top) continue;
    Element image = apply(g);
    if (!image.empty())
      return "relation " + src.to_string(g) + " maps to " + target_->ambient().to_string(image);
  }
  for (int deg = 1; deg <= top; ++deg)
    for (const auto& u : src.minimal_inadmissible(deg)) {
      Element image = apply(u);
      if (!image.empty())
        return "vanishing monomial " + src.to_string(u) + " maps to " + target_->ambient().to_string(image);
    }
  if (source_d && target_d) {
    for (size_t i = 0; i < src.num_generators(); ++i) {
      if (src.generator(i).degree + 1 > top) continue;
      Element lhs = apply(source_d->apply(src.gen(i)));
      Element rhs = target_->normal_form(target_d->apply(images_[i]));
      if (lhs != rhs)
        return "d does not commute on " + src.generator(i).name + ": " + target_->ambient().to_string(lhs) +
               " vs " + target_->ambient().to_string(rhs);
    }
  }
  return std::nullopt;
}

void AlgebraMap::verify(const Derivation* source_d, const Derivation* target_d) const {
  if (auto w = defect(source_d, target_d)) throw MathError("algebra map check failed: " + *w);
}

}  // namespace toricmorgan
