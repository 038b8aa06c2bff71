#include "toricmorgan/arrangement.hpp"

#include "toricmorgan/linear_algebra.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace toricmorgan {

std::optional<std::string> layer_defect(const IntMatrix& rows, const std::vector<Rational>& phases) {
  if (rows.rows() != phases.size()) return "number of phases differs from number of characters";
  if (rows.rows() == 0) return "a layer needs at least one character";
  if (rank(rows) != rows.rows()) return "characters are linearly dependent";
  Sublattice gamma = Sublattice::span(rows);
  if (!is_split_summand(gamma))
    return "the characters do not span a split direct summand; split the system into connected layers "
           "(decompose_system) first";
  return std::nullopt;
}

bool validate_layer(const IntMatrix& rows, const std::vector<Rational>& phases) {
  return !layer_defect(rows, phases).has_value();
}

Layer::Layer(const IntMatrix& rows, const std::vector<Rational>& phases) {
  if (auto defect = layer_defect(rows, phases)) throw InputError("invalid layer: " + *defect);
  gamma_ = Sublattice::span(rows);
  // phase of each canonical basis row, via its coordinates in the given rows
  std::vector<Rational> values;
  RatMatrix a(rows.cols(), RatVector(rows.rows()));
  for (size_t i = 0; i < rows.rows(); ++i)
    for (size_t c = 0; c < rows.cols(); ++c) a[c][i] = rows(i, c);
  for (size_t r = 0; r < gamma_.rank(); ++r) {
    RatVector target(rows.cols());
    for (size_t c = 0; c < rows.cols(); ++c) target[c] = gamma_.basis()(r, c);
    auto coeff = solve_unique(a, target);
    if (!coeff) throw MathError("canonical basis row outside the span of the given characters");
    Rational p = 0;
    for (size_t i = 0; i < rows.rows(); ++i) {
      if ((*coeff)[i].get_den() != 1) throw MathError("canonical basis row is not an integral combination");
      Rational phase = phases[i];
      phase.canonicalize();
      p += (*coeff)[i] * phase;
    }
    values.push_back(p);
  }
  phase_ = TorsionPhase(std::move(values));
}

Layer Layer::from_canonical(Sublattice gamma, TorsionPhase phase) {
  Layer out;
  out.gamma_ = std::move(gamma);
  out.phase_ = std::move(phase);
  return out;
}

Rational Layer::phase_of(const IntVector& chi) const {
  auto coords = gamma_.coordinates(chi);
  if (!coords) throw InputError("character " + toricmorgan::to_string(chi) + " is not in the layer's lattice");
  Rational p = 0;
  for (size_t i = 0; i < coords->size(); ++i) p += (*coords)[i] * phase_.values[i];
  return reduce_mod_one(p);
}

std::string Layer::to_string() const {
  std::string out = "{";
  for (size_t r = 0; r < rank(); ++r) {
    if (r) out += "; ";
    out += "chi=(" + toricmorgan::to_string(gamma_.basis().row(r), ",") + ") phase=" +
           toricmorgan::to_string(phase_.values[r]);
  }
  return out + "}";
}

bool canonical_less(const Layer& a, const Layer& b) {
  if (auto c = a.gamma_ <=> b.gamma_; c != 0) return c < 0;
  return std::lexicographical_compare(a.phase_.values.begin(), a.phase_.values.end(), b.phase_.values.begin(),
                                      b.phase_.values.end());
}

DecomposeResult decompose_system(const IntMatrix& chars, const std::vector<Rational>& given_phases) {
  std::vector<Rational> phases = given_phases;
  for (auto& p : phases) p.canonicalize();
  if (chars.rows() != phases.size()) throw InputError("decompose_system: one phase per character required");
  const size_t n = chars.cols();
  DecomposeResult out;
  Sublattice closure = saturate(Sublattice::span(chars));
  const size_t k = closure.rank();
  if (k == 0) {
    for (const auto& p : phases)
      if (sgn(reduce_mod_one(p)) != 0) {
        out.consistent = false;
        return out;
      }
    out.layers.push_back(Layer::from_canonical(Sublattice(n), TorsionPhase{}));
    return out;
  }
  // chars = M * basis(closure)
  IntMatrix m(chars.rows(), k);
  for (size_t i = 0; i < chars.rows(); ++i) {
    auto coords = closure.coordinates(chars.row(i));
    if (!coords) throw MathError("character outside its saturation");
    for (size_t j = 0; j < k; ++j) m(i, j) = (*coords)[j];
  }
  // M beta = alpha (mod 1); with D = U M V and beta = V gamma: D gamma = U alpha
  SmithForm s = snf(m);
  RatVector u_alpha(chars.rows());
  for (size_t r = 0; r < chars.rows(); ++r) {
    Rational acc = 0;
    for (size_t i = 0; i < chars.rows(); ++i) acc += s.U(r, i) * phases[i];
    u_alpha[r] = reduce_mod_one(acc);
  }
  for (size_t r = k; r < chars.rows(); ++r)
    if (sgn(u_alpha[r]) != 0) {
      out.consistent = false;
      return out;
    }
  std::vector<Integer> divisors(k);
  for (size_t j = 0; j < k; ++j) {
    divisors[j] = s.D(j, j);
    if (divisors[j] == 0) throw MathError("decompose_system: rank deficiency after saturation");
  }
  std::vector<Integer> shift(k);
  std::set<std::vector<Rational>> seen;
  std::function<void(size_t)> enumerate = [&](size_t j) {
    if (j == k) {
      RatVector gamma(k);
      for (size_t i = 0; i < k; ++i) gamma[i] = (u_alpha[i] + shift[i]) / Rational(divisors[i]);
      std::vector<Rational> beta(k);
      for (size_t r = 0; r < k; ++r) {
        Rational acc = 0;
        for (size_t i = 0; i < k; ++i) acc += s.V(r, i) * gamma[i];
        beta[r] = reduce_mod_one(acc);
      }
      if (seen.insert(beta).second) out.layers.push_back(Layer::from_canonical(closure, TorsionPhase(beta)));
      return;
    }
    for (shift[j] = 0; shift[j] < divisors[j]; ++shift[j]) enumerate(j + 1);
  };
  enumerate(0);
  std::sort(out.layers.begin(), out.layers.end(), canonical_less);
  return out;
}

std::vector<Layer> intersect_layers(const Layer& a, const Layer& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw InputError("intersect_layers: dimension mismatch");
  IntMatrix rows(0, a.ambient_rank());
  std::vector<Rational> phases;
  for (const Layer* l : {&a, &b})
    for (size_t r = 0; r < l->rank(); ++r) {
      rows.append_row(l->gamma().basis().row(r));
      phases.push_back(l->phase().values[r]);
    }
  return decompose_system(rows, phases).layers;
}

bool inclusion_test(const Layer& a, const Layer& b) {
  if (!a.gamma().contains(b.gamma())) return false;
  for (size_t r = 0; r < b.rank(); ++r)
    if (a.phase_of(b.gamma().basis().row(r)) != b.phase().values[r]) return false;
  return true;
}

namespace {

bool extension_less(const Layer& a, const Layer& b) {
  if (a.rank() != b.rank()) return a.rank() > b.rank();
  return canonical_less(a, b);
}

}  // namespace

LayerPoset::LayerPoset(std::vector<Layer> elements) : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end(), extension_less);
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  const size_t m = elements_.size();
  below_.assign(m, std::vector<bool>(m, false));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j)
      if (i != j && inclusion_test(elements_[i], elements_[j])) below_[i][j] = true;
}

LayerPoset LayerPoset::reordered(const std::vector<size_t>& order) const {
  const size_t m = size();
  std::vector<size_t> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  std::vector<size_t> expected(m);
  std::iota(expected.begin(), expected.end(), 0);
  if (sorted != expected) throw InputError("reordered: not a permutation");
  for (size_t a = 0; a < m; ++a)
    for (size_t b = 0; b < a; ++b)
      if (below_[order[a]][order[b]]) throw InputError("reordered: order violates inclusion");
  LayerPoset out;
  for (size_t i : order) out.elements_.push_back(elements_[i]);
  out.below_.assign(m, std::vector<bool>(m, false));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) out.below_[i][j] = below_[order[i]][order[j]];
  return out;
}

std::optional<LayerPoset> LayerPoset::alternative_linear_extension() const {
  // topological sort preferring the latest available element
  const size_t m = size();
  std::vector<bool> placed(m, false);
  std::vector<size_t> order;
  for (size_t step = 0; step < m; ++step) {
    for (size_t c = m; c-- > 0;) {
      if (placed[c]) continue;
      bool ready = true;
      for (size_t p = 0; p < m && ready; ++p)
        if (!placed[p] && below_[p][c]) ready = false;
      if (ready) {
        placed[c] = true;
        order.push_back(c);
        break;
      }
    }
  }
  std::vector<size_t> identity(m);
  std::iota(identity.begin(), identity.end(), 0);
  if (order == identity) return std::nullopt;
  return reordered(order);
}

LayerPoset saturate_arrangement(const Arrangement& arrangement) {
  std::vector<Layer> all;
  auto present = [&](const Layer& l) { return std::find(all.begin(), all.end(), l) != all.end(); };
  for (const auto& l : arrangement.layers) {
    if (l.ambient_rank() != arrangement.dim) throw InputError("layer dimension does not match the arrangement");
    if (!present(l)) all.push_back(l);
  }
  size_t processed = 0;
  while (processed < all.size()) {
    const size_t end = all.size();
    std::vector<Layer> fresh;
    for (size_t i = processed; i < end; ++i)
      for (size_t j = 0; j < end; ++j) {
        if (j >= processed && j <= i) continue;
        for (auto& comp : intersect_layers(all[i], all[j]))
          if (!present(comp) && std::find(fresh.begin(), fresh.end(), comp) == fresh.end())
            fresh.push_back(std::move(comp));
      }
    processed = end;
    for (auto& l : fresh) all.push_back(std::move(l));
  }
  return LayerPoset(std::move(all));
}

CombinatorialData combinatorial_data(const LayerPoset& poset, size_t dim) {
  CombinatorialData out;
  out.dim = dim;
  for (size_t i = 0; i < poset.size(); ++i) {
    out.gammas.push_back(poset.element(i).gamma());
    out.labels.push_back(poset.element(i).to_string());
  }
  out.below.assign(poset.size(), std::vector<bool>(poset.size(), false));
  for (size_t i = 0; i < poset.size(); ++i)
    for (size_t j = 0; j < poset.size(); ++j) out.below[i][j] = poset.strictly_below(i, j);
  return out;
}

}  // namespace toricmorgan
