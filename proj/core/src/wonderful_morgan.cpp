#include "toricmorgan/wonderful_morgan.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace toricmorgan {

std::vector<IntVector> PairBasis::complement() const {
  std::vector<IntVector> out;
  for (size_t r = sub_rank; r < rows.rows(); ++r) out.push_back(rows.row(r));
  return out;
}

const PairBasis& EqualSignBases::find(size_t i, size_t j) const {
  for (const auto& p : pairs)
    if (p.i == i && p.j == j) return p;
  throw InputError("no basis stored for the pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
}

EqualSignBases equal_sign_bases(const CombinatorialData& data, int variant) {
  const size_t m = data.size();
  EqualSignBases out;
  std::set<IntVector> chars;
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j <= m; ++j) {
      if (j < m && !data.strictly_below(i, j)) continue;
      const Sublattice sub = j < m ? data.gammas[j] : Sublattice(data.dim);
      PairBasis pb;
      pb.i = i;
      pb.j = j;
      pb.rows = extend_basis(sub, data.gammas[i]);
      pb.sub_rank = sub.rank();
      if (variant == 1) {
        for (size_t r = pb.sub_rank; r < pb.rows.rows(); ++r) pb.rows.negate_row(r);
        if (pb.sub_rank > 0 && pb.sub_rank < pb.rows.rows()) pb.rows.add_row_multiple(pb.sub_rank, 0, 1);
      } else if (variant != 0) {
        throw InputError("unknown basis variant " + std::to_string(variant));
      }
      for (size_t r = 0; r < pb.rows.rows(); ++r) chars.insert(pb.rows.row(r));
      out.pairs.push_back(std::move(pb));
    }
  out.char_set.assign(chars.begin(), chars.end());
  return out;
}

namespace {

bool ray_in(const Sublattice& gamma, const IntVector& c) {
  for (size_t r = 0; r < gamma.rank(); ++r)
    if (dot(gamma.basis().row(r), c) != 0) return false;
  return true;
}

Fan seed_fan(size_t n, SeedFan seed) {
  if (seed == SeedFan::ProjectiveSpace || n == 1) return projective_space_fan(n);
  Fan f = projective_space_fan(1);
  for (size_t k = 1; k < n; ++k) f = product_fan(f, projective_space_fan(1));
  return f;
}

MonomialAlgebra::Rule make_rule(const Fan& fan, const Layout& layout, std::uint64_t base_cone,
                                std::vector<std::uint64_t> comparable) {
  auto faces = std::make_shared<FaceSet>(fan);
  return [faces, layout, base_cone, comparable = std::move(comparable)](const Monomial& mono) {
    std::uint64_t mask = base_cone;
    for (size_t c = 0; c < layout.num_rays; ++c)
      if (mono[layout.x + c] || (layout.tau != SIZE_MAX && mono[layout.tau + c])) mask |= std::uint64_t{1} << c;
    if (!faces->contains(mask)) return false;
    if (comparable.empty()) return true;
    std::uint64_t used = 0;
    for (size_t i = 0; i < layout.m; ++i)
      if (mono[layout.t + i] || (layout.kappa != SIZE_MAX && mono[layout.kappa + i])) used |= std::uint64_t{1} << i;
    for (size_t i = 0; i < layout.m; ++i)
      if (((used >> i) & 1) && (used & ~comparable[i])) return false;
    return true;
  };
}

std::vector<std::uint64_t> comparability_masks(const CombinatorialData& data) {
  if (data.size() > 64) throw InputError("at most 64 layers are supported");
  std::vector<std::uint64_t> out(data.size(), 0);
  for (size_t i = 0; i < data.size(); ++i)
    for (size_t j = 0; j < data.size(); ++j)
      if (data.comparable(i, j)) out[i] |= std::uint64_t{1} << j;
  return out;
}

std::vector<GeneratorSpec> generator_list(const Layout& layout) {
  std::vector<GeneratorSpec> gens;
  for (size_t c = 0; c < layout.num_rays; ++c) gens.push_back({"x" + std::to_string(c), 2});
  if (layout.tau != SIZE_MAX)
    for (size_t c = 0; c < layout.num_rays; ++c) gens.push_back({"tau" + std::to_string(c), 1});
  if (layout.t != SIZE_MAX)
    for (size_t i = 0; i < layout.m; ++i) gens.push_back({"t" + std::to_string(i + 1), 2});
  if (layout.kappa != SIZE_MAX)
    for (size_t i = 0; i < layout.m; ++i) gens.push_back({"k" + std::to_string(i + 1), 1});
  return gens;
}

Layout polynomial_layout(size_t num_rays, size_t m) {
  Layout l;
  l.num_rays = num_rays;
  l.m = m;
  l.x = 0;
  l.t = num_rays;
  return l;
}

bool is_chain(const CombinatorialData& data, std::vector<size_t> elems) {
  for (size_t a = 0; a < elems.size(); ++a)
    for (size_t b = a + 1; b < elems.size(); ++b)
      if (!data.comparable(elems[a], elems[b])) return false;
  return true;
}

int top_degree(const CombinatorialData& data) { return 2 * static_cast<int>(data.dim); }

}  // namespace

std::optional<std::string> compatibility_defect(const Fan& fan, const CombinatorialData& data,
                                                const EqualSignBases& bases) {
  if (fan.dim() != data.dim) return "fan dimension differs from the arrangement";
  ValidationReport report = validate(fan);
  if (!report.ok()) {
    std::string msg = "fan is not smooth, complete and projective";
    if (!report.messages.empty()) msg += ": " + report.messages.front();
    return msg;
  }
  for (const auto& chi : bases.char_set)
    if (!equal_sign_check(fan, chi)) return "character (" + to_string(chi) + ") does not have equal sign";
  for (size_t i = 0; i < data.size(); ++i) {
    Sublattice v = kernel_lattice(data.gammas[i].basis());
    if (!is_compatible_with_subspace(fan, v)) return "a cone meets V_Gamma of layer " + std::to_string(i + 1) + " badly";
    Fan sub = subfan_in_subspace(fan, v);
    ValidationReport r = validate(sub);
    if (!(r.structural && r.smooth && r.complete && r.intersections_are_faces))
      return "the subfan in V_Gamma of layer " + std::to_string(i + 1) + " is not smooth and complete";
  }
  return std::nullopt;
}

CompatibleFan make_compatible(const Fan& fan, const CombinatorialData& data, const EqualSignBases& bases) {
  if (auto defect = compatibility_defect(fan, data, bases)) throw MathError("fan is not compatible: " + *defect);
  return CompatibleFan{fan, bases};
}

CompatibleFan build_compatible_fan(const CombinatorialData& data, const EqualSignBases& bases, SeedFan seed,
                                   const std::vector<IntVector>& extra_chars) {
  if (data.dim == 0) throw InputError("arrangements live in a torus of positive dimension");
  std::vector<IntVector> chars = bases.char_set;
  chars.insert(chars.end(), extra_chars.begin(), extra_chars.end());
  Fan fan = resolve_smooth(hyperplane_refine(seed_fan(data.dim, seed), chars));
  EqualSignBases checked = bases;
  checked.char_set = chars;
  if (auto defect = compatibility_defect(fan, data, checked))
    throw MathError("constructed fan is not compatible: " + *defect);
  return CompatibleFan{fan, bases};
}

std::vector<Element> p_coefficients(const PairBasis& pair, const Fan& fan, const MonomialAlgebra& algebra,
                                    size_t x_offset) {
  std::vector<Element> coeffs{algebra.one()};
  for (const auto& chi : pair.complement()) {
    Element root = chi_minus(fan, algebra, chi, x_offset);
    std::vector<Element> next(coeffs.size() + 1);
    for (size_t k = 0; k < coeffs.size(); ++k) {
      add_to(next[k + 1], coeffs[k]);
      add_to(next[k], algebra.multiply(root, coeffs[k]), -1);
    }
    coeffs = std::move(next);
  }
  return coeffs;
}

Element p_substitute(const std::vector<Element>& coefficients, const MonomialAlgebra& algebra, const Element& t) {
  Element acc;
  for (size_t k = coefficients.size(); k-- > 0;) acc = algebra.multiply(acc, t) + coefficients[k];
  return acc;
}

std::string p_polynomial_string(const PairBasis& pair, const Fan& fan) {
  auto a = build_A(fan);
  auto coeffs = p_coefficients(pair, fan, *a);
  std::string out;
  for (size_t k = coeffs.size(); k-- > 0;) {
    if (coeffs[k].empty()) continue;
    std::string c = a->to_string(coeffs[k]);
    std::string power = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
    std::string term;
    if (power.empty()) term = coeffs[k].size() > 1 ? "(" + c + ")" : c;
    else if (c == "1") term = power;
    else term = (coeffs[k].size() > 1 ? "(" + c + ")" : c) + "*" + power;
    out += out.empty() ? term : " + " + term;
  }
  return out.empty() ? "0" : out;
}

Element minus_t_sum(const CombinatorialData& data, size_t i, const MonomialAlgebra& algebra, const Layout& layout) {
  Element out;
  for (size_t h = 0; h < data.size(); ++h)
    if (h == i || data.strictly_below(h, i)) add_to(out, algebra.gen(layout.t + h), -1);
  return out;
}

Element f_polynomial(const CompatibleFan& cf, const CombinatorialData& data, size_t i, size_t j,
                     const MonomialAlgebra& algebra, const Layout& layout) {
  const PairBasis& pair = cf.bases.find(i, j);
  Element p = p_substitute(p_coefficients(pair, cf.fan, algebra, layout.x), algebra,
                           minus_t_sum(data, i, algebra, layout));
  if (j < data.size()) p = algebra.multiply(p, algebra.gen(layout.t + j));
  return p;
}

std::vector<Element> PresentationI::all() const {
  std::vector<Element> out = xi;
  for (const auto* fam : {&family1, &family2, &family3}) out.insert(out.end(), fam->begin(), fam->end());
  return out;
}

PresentationI ideal_I(const CompatibleFan& cf, const CombinatorialData& data) {
  const Fan& fan = cf.fan;
  const size_t m = data.size();
  PresentationI out;
  out.layout = polynomial_layout(fan.num_rays(), m);
  out.ambient = std::make_shared<MonomialAlgebra>(generator_list(out.layout), make_rule(fan, out.layout, 0, {}));
  const MonomialAlgebra& alg = *out.ambient;
  out.xi = xi_elements(fan, alg, {}, out.layout.x);
  for (size_t i = 0; i < m; ++i)
    for (size_t c = 0; c < fan.num_rays(); ++c)
      if (!ray_in(data.gammas[i], fan.ray(c)))
        out.family1.push_back(alg.multiply(alg.gen(out.layout.t + i), alg.gen(out.layout.x + c)));
  for (size_t s = 0; s < m; ++s)
    for (size_t r = s + 1; r < m; ++r)
      if (!data.comparable(s, r))
        out.family2.push_back(alg.multiply(alg.gen(out.layout.t + s), alg.gen(out.layout.t + r)));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j <= m; ++j)
      if (j == m || data.strictly_below(i, j)) out.family3.push_back(f_polynomial(cf, data, i, j, alg, out.layout));
  return out;
}

std::vector<size_t> y_cohomology(const CompatibleFan& cf, const CombinatorialData& data) {
  PresentationI pres = ideal_I(cf, data);
  const int top = top_degree(data);
  DegreewiseQuotient q(pres.ambient, pres.all(), top + 2);
  auto dims = q.dims();
  if (dims[static_cast<size_t>(top + 1)] != 0 || dims[static_cast<size_t>(top + 2)] != 0)
    throw MathError("presentation of H*(Y) has classes above the top degree");
  dims.resize(static_cast<size_t>(top) + 1);
  return dims;
}

bool is_nested_pair(const CompatibleFan& cf, const CombinatorialData& data, const NestedPair& pair) {
  for (size_t k = 0; k + 1 < pair.flag.size(); ++k)
    if (!data.strictly_below(pair.flag[k], pair.flag[k + 1])) return false;
  if (!cf.fan.is_cone(pair.cone)) return false;
  if (pair.flag.empty()) return true;
  const Sublattice& g = data.gammas[pair.flag.front()];
  return std::all_of(pair.cone.begin(), pair.cone.end(), [&](size_t r) { return ray_in(g, cf.fan.ray(r)); });
}

std::vector<NestedPair> nested_pairs(const CompatibleFan& cf, const CombinatorialData& data) {
  std::vector<std::vector<size_t>> chains{{}};
  std::function<void(std::vector<size_t>&)> extend = [&](std::vector<size_t>& chain) {
    chains.push_back(chain);
    for (size_t j = 0; j < data.size(); ++j)
      if (data.strictly_below(chain.back(), j)) {
        chain.push_back(j);
        extend(chain);
        chain.pop_back();
      }
  };
  for (size_t i = 0; i < data.size(); ++i) {
    std::vector<size_t> chain{i};
    extend(chain);
  }
  std::vector<NestedPair> out;
  for (const auto& chain : chains)
    for (const auto& cone : cf.fan.all_cones()) {
      NestedPair p{chain, cone};
      if (is_nested_pair(cf, data, p)) out.push_back(std::move(p));
    }
  return out;
}

std::vector<size_t> stratum_cohomology(const NestedPair& pair, const CompatibleFan& cf, const CombinatorialData& data,
                                       bool redundant) {
  if (!is_nested_pair(cf, data, pair)) throw InputError("not a nested pair");
  const Fan& fan = cf.fan;
  const size_t m = data.size();
  Layout layout = polynomial_layout(fan.num_rays(), m);
  auto alg = std::make_shared<MonomialAlgebra>(generator_list(layout), make_rule(fan, layout, cone_mask(pair.cone), {}));
  PresentationI pres = ideal_I(cf, data);
  // same generator layout, so elements transfer verbatim through pi
  std::vector<Element> gens = pres.all();
  auto in_flag = [&](size_t i) { return std::find(pair.flag.begin(), pair.flag.end(), i) != pair.flag.end(); };
  if (!pair.flag.empty()) {
    const Sublattice& g = data.gammas[pair.flag.front()];
    for (size_t c = 0; c < fan.num_rays(); ++c)
      if (!ray_in(g, fan.ray(c))) gens.push_back(alg->gen(layout.x + c));
  }
  for (size_t i = 0; i < m; ++i) {
    bool cone_inside = std::all_of(pair.cone.begin(), pair.cone.end(),
                                   [&](size_t r) { return ray_in(data.gammas[i], fan.ray(r)); });
    std::vector<size_t> with = pair.flag;
    if (!in_flag(i)) with.push_back(i);
    if (!cone_inside || !is_chain(data, with)) gens.push_back(alg->gen(layout.t + i));
  }
  for (size_t i = 0; i < m; ++i) {
    // smallest flag element strictly containing G_i
    std::optional<size_t> h;
    for (size_t f : pair.flag)
      if (data.strictly_below(i, f)) {
        h = f;
        break;
      }
    const Element t_value = minus_t_sum(data, i, *alg, layout);
    if (h) {
      gens.push_back(p_substitute(p_coefficients(cf.bases.find(i, *h), fan, *alg, layout.x), *alg, t_value));
    }
    if (!redundant) continue;
    if (!h) gens.push_back(f_polynomial(cf, data, i, m, *alg, layout));
    for (size_t j = 0; j < m; ++j) {
      if (!data.strictly_below(i, j)) continue;
      std::vector<size_t> with = pair.flag;
      if (!in_flag(j)) with.push_back(j);
      if (!is_chain(data, with)) continue;
      std::optional<size_t> smallest;
      for (size_t f : pair.flag)
        if (data.strictly_below(i, f) && (!smallest || data.strictly_below(f, *smallest))) smallest = f;
      if (smallest && data.strictly_below(*smallest, j)) {
        Element p = p_substitute(p_coefficients(cf.bases.find(i, *smallest), fan, *alg, layout.x), *alg, t_value);
        gens.push_back(alg->multiply(p, alg->gen(layout.t + j)));
      } else {
        gens.push_back(f_polynomial(cf, data, i, j, *alg, layout));
      }
    }
  }
  const int top = 2 * (static_cast<int>(data.dim) - static_cast<int>(pair.codim()));
  if (top < 0) throw MathError("nested pair of codimension larger than the dimension");
  DegreewiseQuotient q(alg, std::move(gens), top + 2);
  auto dims = q.dims();
  if (dims[static_cast<size_t>(top + 1)] != 0 || dims[static_cast<size_t>(top + 2)] != 0)
    throw MathError("stratum presentation has classes above its dimension");
  dims.resize(static_cast<size_t>(top) + 1);
  return dims;
}

std::vector<size_t> morgan_direct(const CompatibleFan& cf, const CombinatorialData& data) {
  std::vector<size_t> total(static_cast<size_t>(top_degree(data)) + 1, 0);
  for (const auto& pair : nested_pairs(cf, data)) {
    auto dims = stratum_cohomology(pair, cf, data);
    for (size_t k = 0; k < dims.size(); ++k) {
      const size_t deg = k + pair.codim();
      if (deg >= total.size()) {
        if (dims[k] != 0) throw MathError("stratum class beyond degree 2n");
        continue;
      }
      total[deg] += dims[k];
    }
  }
  return total;
}

BAlgebra build_B_algebra(const CombinatorialData& data) {
  Layout layout;
  layout.num_rays = 0;
  layout.m = data.size();
  layout.x = 0;
  layout.t = 0;
  layout.kappa = data.size();
  auto comparable = comparability_masks(data);
  auto rule = [layout, comparable](const Monomial& mono) {
    std::uint64_t used = 0;
    for (size_t i = 0; i < layout.m; ++i)
      if (mono[layout.t + i] || mono[layout.kappa + i]) used |= std::uint64_t{1} << i;
    for (size_t i = 0; i < layout.m; ++i)
      if (((used >> i) & 1) && (used & ~comparable[i])) return false;
    return true;
  };
  auto alg = std::make_shared<MonomialAlgebra>(generator_list(layout), rule);
  std::vector<Element> images(2 * data.size());
  for (size_t i = 0; i < data.size(); ++i) images[layout.kappa + i] = alg->gen(layout.t + i);
  return BAlgebra{alg, std::make_shared<Derivation>(alg, std::move(images))};
}

MorganN build_N(const CompatibleFan& cf, const CombinatorialData& data, ThetaFamilies families, int dmax,
                bool parallel) {
  const Fan& fan = cf.fan;
  const size_t n_rays = fan.num_rays();
  const size_t m = data.size();
  MorganN out;
  out.cfan = cf;
  out.layout.num_rays = n_rays;
  out.layout.m = m;
  out.layout.x = 0;
  out.layout.tau = n_rays;
  out.layout.t = 2 * n_rays;
  out.layout.kappa = 2 * n_rays + m;
  const Layout& L = out.layout;
  out.ambient = std::make_shared<MonomialAlgebra>(generator_list(L), make_rule(fan, L, 0, comparability_masks(data)));
  const MonomialAlgebra& alg = *out.ambient;

  std::vector<Element> images(alg.num_generators());
  for (size_t c = 0; c < n_rays; ++c) images[L.tau + c] = alg.gen(L.x + c);
  for (size_t i = 0; i < m; ++i) images[L.kappa + i] = alg.gen(L.t + i);
  out.d = std::make_shared<Derivation>(out.ambient, std::move(images));

  out.xi = xi_elements(fan, alg, {}, L.x);
  for (size_t j = 0; j < m; ++j)
    for (size_t c = 0; c < n_rays; ++c) {
      if (ray_in(data.gammas[j], fan.ray(c))) continue;
      for (size_t a : {L.x + c, L.tau + c})
        for (size_t b : {L.t + j, L.kappa + j}) out.theta.family1.push_back(alg.multiply(alg.gen(a), alg.gen(b)));
    }
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j <= m; ++j)
      if (j == m || data.strictly_below(i, j)) out.theta.family2.push_back(f_polynomial(cf, data, i, j, alg, L));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) {
      if (!data.strictly_below(i, j)) continue;
      Element p = p_substitute(p_coefficients(cf.bases.find(i, j), fan, alg, L.x), alg, minus_t_sum(data, i, alg, L));
      out.theta.family3.push_back(alg.multiply(p, alg.gen(L.kappa + j)));
    }

  std::vector<Element> gens = out.xi;
  if (families.family1) gens.insert(gens.end(), out.theta.family1.begin(), out.theta.family1.end());
  if (families.family2) gens.insert(gens.end(), out.theta.family2.begin(), out.theta.family2.end());
  if (families.family3) gens.insert(gens.end(), out.theta.family3.begin(), out.theta.family3.end());
  if (dmax < 0) dmax = top_degree(data) + 3;
  out.quotient = std::make_unique<DegreewiseQuotient>(out.ambient, std::move(gens), dmax, parallel);
  return out;
}

std::string BettiTable::poincare() const {
  std::string out;
  for (size_t d = 0; d < betti.size(); ++d) {
    if (betti[d] == 0) continue;
    std::string term;
    if (d == 0) term = std::to_string(betti[d]);
    else {
      term = betti[d] == 1 ? "" : std::to_string(betti[d]);
      term += d == 1 ? "q" : "q^" + std::to_string(d);
    }
    out += out.empty() ? term : " + " + term;
  }
  return out.empty() ? "0" : out;
}

BettiTable betti_of(const MorganN& model, bool strict, bool parallel) {
  CohomologySummary h = cohomology(*model.quotient, *model.d, true, parallel);
  BettiTable out;
  out.n = model.cfan.fan.dim();
  const size_t top = 2 * out.n;
  out.chain_dims = h.chain_dims;
  out.d_squared_zero = h.d_squared_zero;
  for (size_t d = 0; d < h.dims.size(); ++d) {
    if (d <= top) out.betti.push_back(h.dims[d]);
    else out.above.push_back(h.dims[d]);
  }
  if (strict) {
    if (!out.d_squared_zero) throw MathError("d^2 != 0 on N_F");
    for (size_t v : out.above)
      if (v != 0) throw MathError("N_F has cohomology above degree 2n");
  }
  return out;
}

BettiTable betti(const CombinatorialData& data, const PipelineOptions& options) {
  EqualSignBases bases = equal_sign_bases(data, options.basis_variant);
  CompatibleFan cf = build_compatible_fan(data, bases, options.seed);
  MorganN model = build_N(cf, data, options.families, -1, options.parallel);
  return betti_of(model, options.strict, options.parallel);
}

BettiTable betti(const Arrangement& arrangement, const PipelineOptions& options) {
  LayerPoset poset = saturate_arrangement(arrangement);
  return betti(combinatorial_data(poset, arrangement.dim), options);
}

AlgebraMap phi_map(const MorganN& f, const MorganN& g) {
  const Fan& ff = f.cfan.fan;
  const Fan& gf = g.cfan.fan;
  if (!is_refinement(gf, ff).is_refinement) throw InputError("phi_map: the target fan does not refine the source");
  if (f.layout.m != g.layout.m) throw InputError("phi_map: different arrangements");
  const MonomialAlgebra& tgt = *g.ambient;
  std::vector<Element> images(f.ambient->num_generators());
  auto toric = zeta_images(ff, gf, tgt, g.layout.x, g.layout.tau);
  for (size_t c = 0; c < ff.num_rays(); ++c) {
    images[f.layout.x + c] = toric[c];
    images[f.layout.tau + c] = toric[ff.num_rays() + c];
  }
  for (size_t i = 0; i < f.layout.m; ++i) {
    images[f.layout.t + i] = tgt.gen(g.layout.t + i);
    images[f.layout.kappa + i] = tgt.gen(g.layout.kappa + i);
  }
  return AlgebraMap(*f.quotient, *g.quotient, std::move(images));
}

Fan elementary_refinement(const Fan& fan) {
  for (const auto& cone : fan.all_cones())
    if (cone.size() == 2) {
      IntVector v = fan.ray(cone[0]);
      for (size_t k = 0; k < v.size(); ++k) v[k] += fan.ray(cone[1])[k];
      return stellar_subdivide(fan, v);
    }
  return fan;
}

}  // namespace toricmorgan
