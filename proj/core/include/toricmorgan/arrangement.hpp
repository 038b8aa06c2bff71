#pragma once

// Toric arrangements whose layers are cosets of subtori through torsion points:
// K = {t : chi(t) = exp(2 pi i phase(chi)) for chi in Gamma}.

#include <optional>
#include <string>
#include <vector>

#include "toricmorgan/lattice.hpp"

namespace toricmorgan {

class Layer {
 public:
  Layer() = default;
  /// Canonicalizes to the HNF basis of span(rows). Throws InputError if the rows
  /// are dependent, Gamma is not a split summand, or lengths disagree.
  Layer(const IntMatrix& rows, const std::vector<Rational>& phases);
  static Layer from_canonical(Sublattice gamma, TorsionPhase phase);

  const Sublattice& gamma() const { return gamma_; }
  const TorsionPhase& phase() const { return phase_; }
  size_t ambient_rank() const { return gamma_.ambient_rank(); }
  size_t rank() const { return gamma_.rank(); }
  /// Complex dimension of the layer.
  size_t dimension() const { return ambient_rank() - rank(); }

  /// Phase of an arbitrary character of Gamma, in [0,1).
  Rational phase_of(const IntVector& chi) const;

  std::string to_string() const;

  friend bool operator==(const Layer& a, const Layer& b) { return a.gamma_ == b.gamma_ && a.phase_ == b.phase_; }
  friend bool canonical_less(const Layer& a, const Layer& b);

 private:
  Sublattice gamma_;
  TorsionPhase phase_;
};

bool canonical_less(const Layer& a, const Layer& b);

/// Null if valid, otherwise the reason.
std::optional<std::string> layer_defect(const IntMatrix& rows, const std::vector<Rational>& phases);
bool validate_layer(const IntMatrix& rows, const std::vector<Rational>& phases);

struct Arrangement {
  size_t dim = 0;
  std::vector<Layer> layers;
};

struct DecomposeResult {
  std::vector<Layer> layers;
  bool consistent = true;
};

/// Solution set of chi_i(t) = exp(2 pi i phase_i) as a disjoint union of layers.
DecomposeResult decompose_system(const IntMatrix& chars, const std::vector<Rational>& phases);

std::vector<Layer> intersect_layers(const Layer& a, const Layer& b);

/// Is K_a contained in K_b?
bool inclusion_test(const Layer& a, const Layer& b);

class LayerPoset {
 public:
  LayerPoset() = default;
  /// Sorts by decreasing rank of Gamma, ties broken canonically.
  explicit LayerPoset(std::vector<Layer> elements);

  size_t size() const { return elements_.size(); }
  const std::vector<Layer>& elements() const { return elements_; }
  const Layer& element(size_t i) const { return elements_[i]; }
  /// G_i strictly contained in G_j.
  bool strictly_below(size_t i, size_t j) const { return below_[i][j]; }
  bool comparable(size_t i, size_t j) const { return i == j || below_[i][j] || below_[j][i]; }

  /// Same poset listed in another order; throws InputError unless order is a
  /// permutation with G_i strictly inside G_j implying i before j.
  LayerPoset reordered(const std::vector<size_t>& order) const;
  /// A different admissible listing, when one exists.
  std::optional<LayerPoset> alternative_linear_extension() const;

 private:
  std::vector<Layer> elements_;
  std::vector<std::vector<bool>> below_;
};

LayerPoset saturate_arrangement(const Arrangement& arrangement);

/// What the cohomology computation is allowed to see: the poset and the lattices.
struct CombinatorialData {
  size_t dim = 0;
  std::vector<Sublattice> gammas;
  std::vector<std::vector<bool>> below;  ///< below[i][j]: G_i strictly inside G_j
  std::vector<std::string> labels;       ///< for reports only

  size_t size() const { return gammas.size(); }
  bool strictly_below(size_t i, size_t j) const { return below[i][j]; }
  bool comparable(size_t i, size_t j) const { return i == j || below[i][j] || below[j][i]; }
};

CombinatorialData combinatorial_data(const LayerPoset& poset, size_t dim);

}  // namespace toricmorgan
