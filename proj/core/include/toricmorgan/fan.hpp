#pragma once

// Rational simplicial fans in V = X_*(T) tensor R, given by primitive rays and
// maximal cones. Everything here is exact.

#include <optional>
#include <string>
#include <vector>

#include "toricmorgan/lattice.hpp"
#include "toricmorgan/linear_algebra.hpp"

namespace toricmorgan {

/// Sorted ray indices into the owning fan's ray list.
using ConeIndices = std::vector<size_t>;

class Fan {
 public:
  Fan() = default;
  /// Sorts rays lexicographically and cones canonically. Does not validate;
  /// duplicate or non-primitive rays are reported by validate().
  Fan(size_t dim, std::vector<IntVector> rays, std::vector<ConeIndices> max_cones);

  /// The fan {0} in a zero-dimensional space.
  static Fan zero();

  size_t dim() const { return dim_; }
  const std::vector<IntVector>& rays() const { return rays_; }
  const IntVector& ray(size_t i) const { return rays_[i]; }
  size_t num_rays() const { return rays_.size(); }
  const std::vector<ConeIndices>& max_cones() const { return max_cones_; }

  /// Every face of every maximal cone (including the zero cone), ordered by
  /// dimension then lexicographically.
  const std::vector<ConeIndices>& all_cones() const { return all_cones_; }
  bool is_cone(const ConeIndices& rays) const;
  std::optional<size_t> ray_index(const IntVector& v) const;

  /// Coefficients of v in the rays of `cone` when v lies in its linear span.
  std::optional<RatVector> coordinates_in_cone(const ConeIndices& cone, const RatVector& v) const;

  friend bool operator==(const Fan& a, const Fan& b) {
    return a.dim_ == b.dim_ && a.rays_ == b.rays_ && a.max_cones_ == b.max_cones_;
  }

 private:
  size_t dim_ = 0;
  std::vector<IntVector> rays_;
  std::vector<ConeIndices> max_cones_;
  std::vector<ConeIndices> all_cones_;
};

struct ValidationReport {
  bool structural = true;  ///< no duplicate, zero, non-primitive rays; indices in range
  bool simplicial = false;
  bool smooth = false;
  bool complete = false;
  bool projective = false;
  bool intersections_are_faces = false;
  std::vector<std::string> messages;

  bool ok() const {
    return structural && simplicial && smooth && complete && projective && intersections_are_faces;
  }
};

ValidationReport validate(const Fan& fan);

Fan projective_space_fan(size_t n);
Fan product_fan(const Fan& a, const Fan& b);
Fan hirzebruch_fan(long a);

/// Multiplicity |det| of a full-dimensional simplicial cone.
Integer multiplicity(const Fan& fan, const ConeIndices& cone);

Fan stellar_subdivide(const Fan& fan, const IntVector& v);

/// Common refinement with the linear hyperplanes {chi = 0}, pulling-triangulated.
Fan hyperplane_refine(const Fan& fan, const std::vector<IntVector>& chars);

Fan resolve_smooth(const Fan& fan);

struct RefinementCheck {
  bool is_refinement = false;
  /// For each maximal cone of the finer fan, the minimal cone of the coarser fan containing it.
  std::vector<ConeIndices> containing_cone;
};

RefinementCheck is_refinement(const Fan& finer, const Fan& coarser);

Fan common_refinement(const Fan& a, const Fan& b);

/// s_c(v): the coefficient of ray c when v is written in the cone containing it.
Rational eval_s(const Fan& fan, size_t ray, const RatVector& v);

/// All s_c(v) at once.
RatVector eval_s_all(const Fan& fan, const RatVector& v);

/// A piecewise-linear function given by its values on the rays.
struct PLFunction {
  const Fan* fan = nullptr;
  RatVector ray_values;

  Rational operator()(const RatVector& v) const;
};

std::vector<size_t> f_vector(const Fan& fan);
std::vector<Integer> h_vector(const Fan& fan);

/// Cones of the fan lying in the subspace spanned by `subspace`, rewritten in
/// the stored basis of that (saturated) lattice.
Fan subfan_in_subspace(const Fan& fan, const Sublattice& subspace);

/// True iff every cone's relative interior lies in or misses span(subspace).
bool is_compatible_with_subspace(const Fan& fan, const Sublattice& subspace);

bool equal_sign_check(const Fan& fan, const IntVector& chi);

}  // namespace toricmorgan
