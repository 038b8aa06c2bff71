#include "toricmorgan/toric_dga.hpp"

#include <algorithm>

namespace toricmorgan {

std::uint64_t cone_mask(const ConeIndices& cone) {
  std::uint64_t mask = 0;
  for (size_t r : cone) mask |= std::uint64_t{1} << r;
  return mask;
}

FaceSet::FaceSet(const Fan& fan) {
  if (fan.num_rays() > 64) throw InputError("fans with more than 64 rays are not supported");
  for (const auto& cone : fan.all_cones()) faces_.insert(cone_mask(cone));
}

namespace {

std::vector<GeneratorSpec> x_generators(size_t n) {
  std::vector<GeneratorSpec> gens;
  for (size_t c = 0; c < n; ++c) gens.push_back({"x" + std::to_string(c), 2});
  return gens;
}

std::uint64_t support_mask(const Monomial& m, size_t num_rays) {
  std::uint64_t mask = 0;
  for (size_t i = 0; i < m.size(); ++i)
    if (m[i]) mask |= std::uint64_t{1} << (i % num_rays);
  return mask;
}

Element apply_images(const MonomialAlgebra& target, const std::vector<Element>& images, const Element& e) {
  Element out;
  for (const auto& [m, c] : e) {
    Element term = target.one();
    for (size_t i = 0; i < m.size() && !term.empty(); ++i)
      for (unsigned k = 0; k < m[i]; ++k) term = target.multiply(term, images[i]);
    add_to(out, term, c);
  }
  return out;
}

}  // namespace

std::shared_ptr<const MonomialAlgebra> build_A(const Fan& fan) {
  auto faces = std::make_shared<FaceSet>(fan);
  const size_t n = fan.num_rays();
  return std::make_shared<MonomialAlgebra>(
      x_generators(n), [faces, n](const Monomial& m) { return faces->contains(support_mask(m, n)); });
}

std::shared_ptr<const MonomialAlgebra> build_A_colon(const Fan& fan, const ConeIndices& cone) {
  if (!fan.is_cone(cone)) throw InputError("build_A_colon: not a cone of the fan");
  auto faces = std::make_shared<FaceSet>(fan);
  const size_t n = fan.num_rays();
  const std::uint64_t base = cone_mask(cone);
  return std::make_shared<MonomialAlgebra>(
      x_generators(n), [faces, n, base](const Monomial& m) { return faces->contains(support_mask(m, n) | base); });
}

std::vector<Element> xi_elements(const Fan& fan, const MonomialAlgebra& algebra, const IntMatrix& basis,
                                 size_t x_offset) {
  const size_t n = fan.dim();
  IntMatrix l = basis.rows() == 0 ? IntMatrix::identity(n) : basis;
  if (l.cols() != n) throw InputError("xi_elements: basis has wrong width");
  std::vector<Element> out;
  for (size_t j = 0; j < l.rows(); ++j) {
    Element xi;
    for (size_t c = 0; c < fan.num_rays(); ++c) {
      Integer v = dot(l.row(j), fan.ray(c));
      if (v != 0) add_to(xi, algebra.gen(x_offset + c), Rational(v));
    }
    out.push_back(std::move(xi));
  }
  return out;
}

DegreewiseQuotient build_B(const Fan& fan, int dmax, const IntMatrix& basis) {
  auto a = build_A(fan);
  if (dmax < 0) dmax = 2 * static_cast<int>(fan.dim());
  return DegreewiseQuotient(a, xi_elements(fan, *a, basis), dmax);
}

DegreewiseQuotient build_B_colon(const Fan& fan, const ConeIndices& cone, int dmax) {
  auto a = build_A_colon(fan, cone);
  if (dmax < 0) dmax = 2 * static_cast<int>(fan.dim());
  return DegreewiseQuotient(a, xi_elements(fan, *a), dmax);
}

size_t colon_rank(const Fan& fan, const ConeIndices& cone) {
  auto b = build_B_colon(fan, cone, 2 * static_cast<int>(fan.dim()) + 2);
  size_t total = 0;
  for (size_t d : b.dims()) total += d;
  return total;
}

ToricDGA build_D(const Fan& fan) {
  auto faces = std::make_shared<FaceSet>(fan);
  const size_t n = fan.num_rays();
  std::vector<GeneratorSpec> gens = x_generators(n);
  for (size_t c = 0; c < n; ++c) gens.push_back({"tau" + std::to_string(c), 1});
  auto algebra = std::make_shared<MonomialAlgebra>(
      gens, [faces, n](const Monomial& m) { return faces->contains(support_mask(m, n)); });
  std::vector<Element> images(2 * n);
  for (size_t c = 0; c < n; ++c) images[n + c] = algebra->gen(c);
  auto d = std::make_shared<Derivation>(algebra, std::move(images));
  return ToricDGA{fan, algebra, d};
}

DegreewiseQuotient d_quotient(const ToricDGA& dga, int dmax) { return DegreewiseQuotient(dga.algebra, {}, dmax); }

ToricC build_C(const Fan& fan, int dmax, const IntMatrix& basis, bool parallel) {
  ToricC out;
  out.dga = build_D(fan);
  if (dmax < 0) dmax = 2 * static_cast<int>(fan.dim()) + 2;
  out.quotient = std::make_unique<DegreewiseQuotient>(out.dga.algebra, xi_elements(fan, *out.dga.algebra, basis),
                                                      dmax, parallel);
  out.psi = xi_elements(fan, *out.dga.algebra, basis, fan.num_rays());
  return out;
}

Element homotopy_S(const ToricDGA& dga, const Element& e) {
  const size_t n = dga.num_rays();
  Element out;
  for (const auto& [m, c] : e) {
    size_t i1 = n, j1 = n;
    for (size_t k = 0; k < n && i1 == n; ++k)
      if (m[dga.x(k)]) i1 = k;
    for (size_t k = 0; k < n && j1 == n; ++k)
      if (m[dga.tau(k)]) j1 = k;
    if (i1 == n && j1 == n) throw InputError("homotopy_S is defined on positive degrees only");
    if (i1 >= j1) continue;
    Monomial s = m;
    --s[dga.x(i1)];
    s[dga.tau(i1)] = 1;
    add_term(out, s, c);
  }
  return out;
}

std::vector<RatVector> refinement_coefficients(const Fan& f, const Fan& g) {
  std::vector<RatVector> coeff(f.num_rays(), RatVector(g.num_rays()));
  for (size_t d = 0; d < g.num_rays(); ++d) {
    RatVector v(g.ray(d).begin(), g.ray(d).end());
    RatVector s = eval_s_all(f, v);
    for (size_t c = 0; c < f.num_rays(); ++c) coeff[c][d] = s[c];
  }
  return coeff;
}

std::vector<Element> gamma_images(const Fan& f, const Fan& g, const MonomialAlgebra& target, size_t x_offset) {
  auto coeff = refinement_coefficients(f, g);
  std::vector<Element> images(f.num_rays());
  for (size_t c = 0; c < f.num_rays(); ++c)
    for (size_t d = 0; d < g.num_rays(); ++d)
      if (sgn(coeff[c][d]) != 0) add_to(images[c], target.gen(x_offset + d), coeff[c][d]);
  return images;
}

std::vector<Element> zeta_images(const Fan& f, const Fan& g, const MonomialAlgebra& target, size_t x_offset,
                                 size_t tau_offset) {
  if (tau_offset == SIZE_MAX) tau_offset = x_offset + g.num_rays();
  auto coeff = refinement_coefficients(f, g);
  std::vector<Element> images(2 * f.num_rays());
  for (size_t c = 0; c < f.num_rays(); ++c)
    for (size_t d = 0; d < g.num_rays(); ++d) {
      if (sgn(coeff[c][d]) == 0) continue;
      add_to(images[c], target.gen(x_offset + d), coeff[c][d]);
      add_to(images[f.num_rays() + c], target.gen(tau_offset + d), coeff[c][d]);
    }
  return images;
}

namespace {

void require_refinement(const Fan& g, const Fan& f) {
  if (!is_refinement(g, f).is_refinement) throw InputError("the second fan does not refine the first");
}

}  // namespace

AlgebraMap gamma_map(const Fan& f, const DegreewiseQuotient& a_f, const Fan& g, const DegreewiseQuotient& a_g) {
  require_refinement(g, f);
  return AlgebraMap(a_f, a_g, gamma_images(f, g, a_g.ambient()));
}

AlgebraMap zeta_map(const ToricDGA& f, const DegreewiseQuotient& d_f, const ToricDGA& g,
                    const DegreewiseQuotient& d_g) {
  require_refinement(g.fan, f.fan);
  return AlgebraMap(d_f, d_g, zeta_images(f.fan, g.fan, *g.algebra));
}

AlgebraMap chi_map(const ToricC& f, const ToricC& g) {
  require_refinement(g.dga.fan, f.dga.fan);
  return AlgebraMap(*f.quotient, *g.quotient, zeta_images(f.dga.fan, g.dga.fan, *g.dga.algebra));
}

Rational mu_eval(const Fan& fan, const MonomialAlgebra& algebra, const Element& e, const RatVector& v,
                 size_t x_offset) {
  RatVector s = eval_s_all(fan, v);
  Rational total = 0;
  for (const auto& [m, c] : e) {
    Rational term = c;
    for (size_t i = 0; i < m.size(); ++i) {
      if (!m[i]) continue;
      if (i < x_offset || i >= x_offset + fan.num_rays() || algebra.generator(i).degree != 2)
        throw InputError("mu_eval: element involves generators other than x_c");
      for (unsigned k = 0; k < m[i]; ++k) term *= s[i - x_offset];
    }
    total += term;
  }
  return total;
}

bool roc_equal(const Fan& f, const Element& a, const Fan& g, const Element& b) {
  Fan h = common_refinement(f, g);
  auto a_h = build_A(h);
  Element pa = apply_images(*a_h, gamma_images(f, h, *a_h), a);
  Element pb = apply_images(*a_h, gamma_images(g, h, *a_h), b);
  return pa == pb;
}

Element chi_minus(const Fan& fan, const MonomialAlgebra& algebra, const IntVector& chi, size_t x_offset) {
  if (!equal_sign_check(fan, chi)) throw InputError("chi_minus: character " + to_string(chi) + " is not equal-sign");
  Element out;
  for (size_t c = 0; c < fan.num_rays(); ++c) {
    Integer v = dot(chi, fan.ray(c));
    if (v < 0) add_to(out, algebra.gen(x_offset + c), Rational(v));
  }
  return out;
}

}  // namespace toricmorgan
