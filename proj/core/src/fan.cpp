#include "toricmorgan/fan.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace toricmorgan {

namespace {

RatVector to_rational(const IntVector& v) {
  RatVector out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

bool cone_less(const ConeIndices& a, const ConeIndices& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

size_t rational_rank(const std::vector<IntVector>& vectors) {
  if (vectors.empty()) return 0;
  RatMatrix m;
  for (const auto& v : vectors) m.push_back(to_rational(v));
  return rank(m);
}

}  // namespace

Fan::Fan(size_t dim, std::vector<IntVector> rays, std::vector<ConeIndices> max_cones) : dim_(dim) {
  std::vector<size_t> order(rays.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return lexicographic_less(rays[a], rays[b]); });
  std::vector<size_t> new_index(rays.size());
  rays_.reserve(rays.size());
  for (size_t i = 0; i < order.size(); ++i) {
    new_index[order[i]] = i;
    rays_.push_back(std::move(rays[order[i]]));
  }
  for (auto& cone : max_cones) {
    for (auto& idx : cone) {
      if (idx >= new_index.size()) throw InputError("cone references ray index out of range");
      idx = new_index[idx];
    }
    std::sort(cone.begin(), cone.end());
    cone.erase(std::unique(cone.begin(), cone.end()), cone.end());
  }
  std::sort(max_cones.begin(), max_cones.end());
  max_cones.erase(std::unique(max_cones.begin(), max_cones.end()), max_cones.end());
  max_cones_ = std::move(max_cones);

  std::set<ConeIndices> faces;
  for (const auto& cone : max_cones_) {
    const size_t k = cone.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      ConeIndices face;
      for (size_t i = 0; i < k; ++i)
        if (mask & (std::uint64_t{1} << i)) face.push_back(cone[i]);
      faces.insert(std::move(face));
    }
  }
  all_cones_.assign(faces.begin(), faces.end());
  std::sort(all_cones_.begin(), all_cones_.end(), cone_less);
}

Fan Fan::zero() { return Fan(0, {}, {ConeIndices{}}); }

bool Fan::is_cone(const ConeIndices& rays) const {
  return std::binary_search(all_cones_.begin(), all_cones_.end(), rays, cone_less);
}

std::optional<size_t> Fan::ray_index(const IntVector& v) const {
  auto it = std::lower_bound(rays_.begin(), rays_.end(), v, lexicographic_less);
  if (it == rays_.end() || *it != v) return std::nullopt;
  return static_cast<size_t>(it - rays_.begin());
}

std::optional<RatVector> Fan::coordinates_in_cone(const ConeIndices& cone, const RatVector& v) const {
  RatMatrix a(dim_, RatVector(cone.size()));
  for (size_t j = 0; j < cone.size(); ++j)
    for (size_t i = 0; i < dim_; ++i) a[i][j] = rays_[cone[j]][i];
  return solve_unique(a, v);
}

Integer multiplicity(const Fan& fan, const ConeIndices& cone) {
  std::vector<IntVector> rows;
  for (size_t r : cone) rows.push_back(fan.ray(r));
  IntMatrix m = IntMatrix::from_rows(rows, fan.dim());
  if (cone.size() == fan.dim()) return abs(determinant(m));
  Integer prod = 1;
  for (const auto& d : elementary_divisors(m)) prod *= d;
  return prod;
}

namespace {

struct WallData {
  size_t cone = 0;
  size_t opposite_ray = 0;
};

// Walls of full-dimensional simplicial maximal cones, with the cones containing them.
std::map<ConeIndices, std::vector<WallData>> collect_walls(const Fan& fan) {
  std::map<ConeIndices, std::vector<WallData>> walls;
  for (size_t c = 0; c < fan.max_cones().size(); ++c) {
    const auto& cone = fan.max_cones()[c];
    for (size_t skip = 0; skip < cone.size(); ++skip) {
      ConeIndices wall;
      for (size_t i = 0; i < cone.size(); ++i)
        if (i != skip) wall.push_back(cone[i]);
      walls[wall].push_back({c, cone[skip]});
    }
  }
  return walls;
}

RatVector wall_normal(const Fan& fan, const ConeIndices& wall) {
  RatMatrix m;
  for (size_t r : wall) m.push_back(to_rational(fan.ray(r)));
  auto ns = nullspace(m, fan.dim());
  if (ns.size() != 1) throw MathError("wall does not span a hyperplane");
  return ns[0];
}

// Pseudomanifold test: every wall in exactly two maximal cones, on opposite sides.
bool walls_close_up(const Fan& fan, std::vector<std::string>* messages) {
  if (fan.dim() == 0) return fan.max_cones().size() == 1;
  for (const auto& cone : fan.max_cones())
    if (cone.size() != fan.dim()) {
      if (messages) messages->push_back("maximal cone is not full-dimensional");
      return false;
    }
  for (const auto& [wall, users] : collect_walls(fan)) {
    if (users.size() != 2) {
      if (messages) messages->push_back("a wall lies in " + std::to_string(users.size()) + " maximal cones");
      return false;
    }
    RatVector h = wall_normal(fan, wall);
    int s0 = sgn(dot(fan.ray(users[0].opposite_ray), h));
    int s1 = sgn(dot(fan.ray(users[1].opposite_ray), h));
    if (s0 == 0 || s1 == 0 || s0 == s1) {
      if (messages) messages->push_back("two maximal cones lie on the same side of a wall");
      return false;
    }
  }
  return true;
}

// Some point of a cap b lies outside the cone spanned by the common rays.
bool intersection_exceeds_common_face(const Fan& fan, const ConeIndices& a, const ConeIndices& b) {
  const size_t n = fan.dim();
  LinearProgram lp;
  lp.num_vars = a.size() + b.size();
  lp.nonnegative.assign(lp.num_vars, true);
  for (size_t i = 0; i < n; ++i) {
    LinearConstraint c{RatVector(lp.num_vars), Relation::Equal, 0};
    for (size_t j = 0; j < a.size(); ++j) c.coefficients[j] = fan.ray(a[j])[i];
    for (size_t j = 0; j < b.size(); ++j) c.coefficients[a.size() + j] = -fan.ray(b[j])[i];
    lp.constraints.push_back(std::move(c));
  }
  LinearConstraint norm{RatVector(lp.num_vars), Relation::Equal, 1};
  bool any = false;
  for (size_t j = 0; j < a.size(); ++j)
    if (!std::binary_search(b.begin(), b.end(), a[j])) {
      norm.coefficients[j] = 1;
      any = true;
    }
  for (size_t j = 0; j < b.size(); ++j)
    if (!std::binary_search(a.begin(), a.end(), b[j])) {
      norm.coefficients[a.size() + j] = 1;
      any = true;
    }
  if (!any) return false;
  lp.constraints.push_back(std::move(norm));
  return find_feasible_point(lp).has_value();
}

bool has_strictly_convex_support_function(const Fan& fan) {
  if (fan.dim() == 0) return true;
  LinearProgram lp;
  lp.num_vars = fan.num_rays();
  lp.nonnegative.assign(lp.num_vars, false);
  for (const auto& [wall, users] : collect_walls(fan)) {
    const auto& cone = fan.max_cones()[users[0].cone];
    const IntVector& other = fan.ray(users[1].opposite_ray);
    auto alpha = fan.coordinates_in_cone(cone, to_rational(other));
    if (!alpha) return false;
    LinearConstraint c{RatVector(lp.num_vars), Relation::GreaterEqual, 1};
    c.coefficients[users[1].opposite_ray] += 1;
    for (size_t j = 0; j < cone.size(); ++j) c.coefficients[cone[j]] -= (*alpha)[j];
    lp.constraints.push_back(std::move(c));
  }
  return find_feasible_point(lp).has_value();
}

}  // namespace

ValidationReport validate(const Fan& fan) {
  ValidationReport report;
  const size_t n = fan.dim();
  if (n == 0) {
    report.simplicial = report.smooth = report.complete = report.projective = report.intersections_are_faces = true;
    return report;
  }
  for (size_t i = 0; i < fan.num_rays(); ++i) {
    const auto& r = fan.ray(i);
    if (r.size() != n) {
      report.structural = false;
      report.messages.push_back("ray " + std::to_string(i) + " has wrong length");
      continue;
    }
    if (is_zero(r)) {
      report.structural = false;
      report.messages.push_back("ray " + std::to_string(i) + " is zero");
    } else if (gcd_of(r) != 1) {
      report.structural = false;
      report.messages.push_back("ray (" + to_string(r) + ") is not primitive");
    }
    if (i > 0 && fan.ray(i - 1) == r) {
      report.structural = false;
      report.messages.push_back("duplicate ray (" + to_string(r) + ")");
    }
  }
  if (!report.structural) return report;

  report.simplicial = true;
  for (const auto& cone : fan.max_cones()) {
    std::vector<IntVector> rows;
    for (size_t r : cone) rows.push_back(fan.ray(r));
    if (rational_rank(rows) != cone.size()) {
      report.simplicial = false;
      report.messages.push_back("maximal cone with dependent rays");
    }
  }
  if (!report.simplicial) return report;

  report.smooth = true;
  for (const auto& cone : fan.max_cones())
    if (multiplicity(fan, cone) != 1) {
      report.smooth = false;
      report.messages.push_back("cone of multiplicity " + multiplicity(fan, cone).get_str());
    }

  report.intersections_are_faces = true;
  for (size_t a = 0; a < fan.max_cones().size() && report.intersections_are_faces; ++a)
    for (size_t b = a + 1; b < fan.max_cones().size(); ++b)
      if (intersection_exceeds_common_face(fan, fan.max_cones()[a], fan.max_cones()[b])) {
        report.intersections_are_faces = false;
        report.messages.push_back("two maximal cones overlap beyond a common face");
        break;
      }

  report.complete = report.intersections_are_faces && walls_close_up(fan, &report.messages);
  if (report.complete) {
    report.projective = has_strictly_convex_support_function(fan);
    if (!report.projective) report.messages.push_back("no strictly convex support function");
  }
  return report;
}

Fan projective_space_fan(size_t n) {
  if (n == 0) throw InputError("projective_space_fan: n must be positive");
  std::vector<IntVector> rays;
  for (size_t i = 0; i < n; ++i) {
    IntVector e(n);
    e[i] = 1;
    rays.push_back(e);
  }
  rays.push_back(IntVector(n, Integer(-1)));
  std::vector<ConeIndices> cones;
  for (size_t skip = 0; skip <= n; ++skip) {
    ConeIndices c;
    for (size_t i = 0; i <= n; ++i)
      if (i != skip) c.push_back(i);
    cones.push_back(c);
  }
  return Fan(n, rays, cones);
}

Fan product_fan(const Fan& a, const Fan& b) {
  const size_t n = a.dim() + b.dim();
  std::vector<IntVector> rays;
  for (const auto& r : a.rays()) {
    IntVector v(n);
    std::copy(r.begin(), r.end(), v.begin());
    rays.push_back(v);
  }
  for (const auto& r : b.rays()) {
    IntVector v(n);
    std::copy(r.begin(), r.end(), v.begin() + static_cast<long>(a.dim()));
    rays.push_back(v);
  }
  std::vector<ConeIndices> cones;
  for (const auto& ca : a.max_cones())
    for (const auto& cb : b.max_cones()) {
      ConeIndices c = ca;
      for (size_t j : cb) c.push_back(a.num_rays() + j);
      cones.push_back(c);
    }
  return Fan(n, rays, cones);
}

Fan hirzebruch_fan(long a) {
  if (a < 0) throw InputError("hirzebruch_fan: a must be nonnegative");
  std::vector<IntVector> rays = {{1, 0}, {0, 1}, {-1, Integer(a)}, {0, -1}};
  return Fan(2, rays, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

namespace {

// A maximal cone containing v together with v's coordinates there.
std::optional<std::pair<size_t, RatVector>> locate(const Fan& fan, const RatVector& v) {
  for (size_t c = 0; c < fan.max_cones().size(); ++c) {
    auto coords = fan.coordinates_in_cone(fan.max_cones()[c], v);
    if (!coords) continue;
    bool inside = std::all_of(coords->begin(), coords->end(), [](const Rational& x) { return sgn(x) >= 0; });
    if (inside) return std::make_pair(c, *coords);
  }
  return std::nullopt;
}

}  // namespace

Fan stellar_subdivide(const Fan& fan, const IntVector& v_in) {
  if (v_in.size() != fan.dim()) throw InputError("stellar_subdivide: vector has wrong length");
  if (is_zero(v_in)) throw InputError("stellar_subdivide: zero vector");
  IntVector v = primitive(v_in);
  auto where = locate(fan, to_rational(v));
  if (!where) throw InputError("stellar_subdivide: vector outside the support of the fan");
  const auto& [cone_idx, coords] = *where;
  const auto& cone = fan.max_cones()[cone_idx];
  ConeIndices face;
  for (size_t j = 0; j < cone.size(); ++j)
    if (sgn(coords[j]) > 0) face.push_back(cone[j]);
  if (face.size() == 1 && fan.ray(face[0]) == v) return fan;

  std::vector<IntVector> rays = fan.rays();
  const size_t new_ray = rays.size();
  rays.push_back(v);
  std::vector<ConeIndices> cones;
  for (const auto& c : fan.max_cones()) {
    if (!std::includes(c.begin(), c.end(), face.begin(), face.end())) {
      cones.push_back(c);
      continue;
    }
    for (size_t r : face) {
      ConeIndices piece;
      for (size_t x : c)
        if (x != r) piece.push_back(x);
      piece.push_back(new_ray);
      cones.push_back(piece);
    }
  }
  return Fan(fan.dim(), rays, cones);
}

namespace {

// A full-dimensional polyhedral cone known by both its extreme rays and a set of
// valid inequalities h.x >= 0 that includes every facet.
struct Cell {
  std::vector<IntVector> rays;
  std::vector<IntVector> inequalities;
};

std::vector<IntVector> simplicial_facet_normals(const Fan& fan, const ConeIndices& cone) {
  const size_t n = fan.dim();
  RatMatrix r(n, RatVector(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) r[i][j] = fan.ray(cone[i])[j];
  std::vector<IntVector> normals;
  for (size_t i = 0; i < n; ++i) {
    RatVector e(n);
    e[i] = 1;
    auto h = solve_unique(r, e);
    if (!h) throw MathError("cone rays are dependent");
    normals.push_back(primitive(*h));
  }
  return normals;
}

void for_each_subset(size_t total, size_t k, const std::function<void(const std::vector<size_t>&)>& fn) {
  std::vector<size_t> idx(k);
  std::function<void(size_t, size_t)> rec = [&](size_t pos, size_t start) {
    if (pos == k) {
      fn(idx);
      return;
    }
    for (size_t i = start; i + (k - pos) <= total; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
}

// Extreme rays of the pointed cone {x : h.x >= 0 for all h}.
std::vector<IntVector> extreme_rays(const std::vector<IntVector>& ineqs, size_t n) {
  std::set<IntVector> found;
  for_each_subset(ineqs.size(), n - 1, [&](const std::vector<size_t>& subset) {
    RatMatrix m;
    for (size_t i : subset) m.push_back(to_rational(ineqs[i]));
    auto ns = nullspace(m, n);
    if (ns.size() != 1) return;
    IntVector u = primitive(ns[0]);
    for (int sign : {1, -1}) {
      IntVector s = u;
      if (sign < 0)
        for (auto& x : s) x = -x;
      bool ok = std::all_of(ineqs.begin(), ineqs.end(), [&](const IntVector& h) { return dot(h, s) >= 0; });
      if (ok) found.insert(s);
    }
  });
  return {found.begin(), found.end()};
}

std::optional<Cell> make_cell(std::vector<IntVector> ineqs, size_t n) {
  Cell cell;
  cell.rays = extreme_rays(ineqs, n);
  if (rational_rank(cell.rays) != n) return std::nullopt;
  cell.inequalities = std::move(ineqs);
  return cell;
}

std::vector<ConeIndices> pulling_triangulation(const std::vector<size_t>& face, size_t k,
                                               const std::vector<IntVector>& global_rays,
                                               const std::vector<IntVector>& ineqs) {
  if (face.size() == k) return {face};
  const size_t apex = *std::min_element(face.begin(), face.end());
  std::set<std::vector<size_t>> facets;
  for (const auto& h : ineqs) {
    std::vector<size_t> sub;
    for (size_t r : face)
      if (dot(h, global_rays[r]) == 0) sub.push_back(r);
    if (std::find(sub.begin(), sub.end(), apex) != sub.end()) continue;
    std::vector<IntVector> vecs;
    for (size_t r : sub) vecs.push_back(global_rays[r]);
    if (rational_rank(vecs) == k - 1) facets.insert(sub);
  }
  std::vector<ConeIndices> out;
  for (const auto& facet : facets)
    for (auto simplex : pulling_triangulation(facet, k - 1, global_rays, ineqs)) {
      simplex.push_back(apex);
      std::sort(simplex.begin(), simplex.end());
      out.push_back(simplex);
    }
  return out;
}

Fan triangulate_cells(size_t n, const std::vector<Cell>& cells) {
  std::set<IntVector, decltype(&lexicographic_less)> ray_set(&lexicographic_less);
  for (const auto& cell : cells)
    for (const auto& r : cell.rays) ray_set.insert(r);
  std::vector<IntVector> rays(ray_set.begin(), ray_set.end());
  auto index_of = [&](const IntVector& r) {
    return static_cast<size_t>(std::lower_bound(rays.begin(), rays.end(), r, lexicographic_less) - rays.begin());
  };
  std::vector<ConeIndices> cones;
  for (const auto& cell : cells) {
    std::vector<size_t> face;
    for (const auto& r : cell.rays) face.push_back(index_of(r));
    std::sort(face.begin(), face.end());
    for (auto& s : pulling_triangulation(face, n, rays, cell.inequalities)) cones.push_back(std::move(s));
  }
  return Fan(n, rays, cones);
}

std::vector<Cell> cells_of(const Fan& fan) {
  std::vector<Cell> cells;
  for (const auto& cone : fan.max_cones()) {
    if (cone.size() != fan.dim()) throw InputError("fan has a maximal cone that is not full-dimensional");
    Cell c;
    for (size_t r : cone) c.rays.push_back(fan.ray(r));
    c.inequalities = simplicial_facet_normals(fan, cone);
    cells.push_back(std::move(c));
  }
  return cells;
}

}  // namespace

Fan hyperplane_refine(const Fan& fan, const std::vector<IntVector>& chars) {
  const size_t n = fan.dim();
  if (n == 0) return fan;
  std::vector<Cell> cells = cells_of(fan);
  for (const auto& chi : chars) {
    if (chi.size() != n) throw InputError("hyperplane_refine: character has wrong length");
    if (is_zero(chi)) continue;
    std::vector<Cell> next;
    for (auto& cell : cells) {
      bool pos = false, neg = false;
      for (const auto& r : cell.rays) {
        int s = sgn(dot(chi, r));
        pos |= s > 0;
        neg |= s < 0;
      }
      if (!(pos && neg)) {
        next.push_back(std::move(cell));
        continue;
      }
      IntVector minus = chi;
      for (auto& x : minus) x = -x;
      for (const IntVector& h : {chi, minus}) {
        auto ineqs = cell.inequalities;
        ineqs.push_back(h);
        if (auto piece = make_cell(std::move(ineqs), n)) next.push_back(std::move(*piece));
      }
    }
    cells = std::move(next);
  }
  return triangulate_cells(n, cells);
}

Fan resolve_smooth(const Fan& input) {
  const size_t n = input.dim();
  Fan fan = input;
  for (const auto& cone : fan.max_cones())
    if (cone.size() != n) throw InputError("resolve_smooth: non-simplicial or lower-dimensional cone");
  for (size_t iteration = 0;; ++iteration) {
    if (iteration > 100000) throw MathError("resolve_smooth did not terminate");
    size_t worst = fan.max_cones().size();
    Integer worst_mult = 1;
    for (size_t c = 0; c < fan.max_cones().size(); ++c) {
      Integer m = multiplicity(fan, fan.max_cones()[c]);
      if (m == 0) throw InputError("resolve_smooth: non-simplicial cone");
      if (m > worst_mult) {
        worst_mult = m;
        worst = c;
      }
    }
    if (worst == fan.max_cones().size()) return fan;

    const auto& cone = fan.max_cones()[worst];
    std::vector<IntVector> rows;
    for (size_t r : cone) rows.push_back(fan.ray(r));
    IntMatrix r_mat = IntMatrix::from_rows(rows, n);
    SmithForm s = snf(r_mat);
    IntMatrix v_inv = unimodular_inverse(s.V);

    // lattice points of the half-open fundamental parallelepiped, one per coset
    std::optional<RatVector> best;
    std::vector<Integer> k(n);
    std::function<void(size_t)> enumerate = [&](size_t i) {
      if (i == n) {
        IntVector p = k * v_inv;
        auto lambda = fan.coordinates_in_cone(cone, to_rational(p));
        RatVector frac(n);
        bool nonzero = false;
        for (size_t j = 0; j < n; ++j) {
          frac[j] = reduce_mod_one((*lambda)[j]);
          nonzero |= sgn(frac[j]) != 0;
        }
        if (nonzero && (!best || std::lexicographical_compare(frac.begin(), frac.end(), best->begin(), best->end())))
          best = frac;
        return;
      }
      for (k[i] = 0; k[i] < s.D(i, i); ++k[i]) enumerate(i + 1);
      k[i] = 0;
    };
    enumerate(0);
    if (!best) throw MathError("resolve_smooth: no interior lattice point in a singular cone");
    RatVector point(n);
    for (size_t j = 0; j < n; ++j)
      for (size_t i = 0; i < n; ++i) point[i] += (*best)[j] * fan.ray(cone[j])[i];
    IntVector p(n);
    for (size_t i = 0; i < n; ++i) p[i] = point[i].get_num();
    fan = stellar_subdivide(fan, p);
  }
}

RefinementCheck is_refinement(const Fan& finer, const Fan& coarser) {
  RefinementCheck out;
  if (finer.dim() != coarser.dim()) return out;
  if (!walls_close_up(finer, nullptr)) return out;
  for (const auto& cone : finer.max_cones()) {
    bool found = false;
    for (const auto& big : coarser.max_cones()) {
      std::set<size_t> support;
      bool inside = true;
      for (size_t r : cone) {
        auto coords = coarser.coordinates_in_cone(big, to_rational(finer.ray(r)));
        if (!coords || std::any_of(coords->begin(), coords->end(), [](const Rational& x) { return sgn(x) < 0; })) {
          inside = false;
          break;
        }
        for (size_t j = 0; j < big.size(); ++j)
          if (sgn((*coords)[j]) > 0) support.insert(big[j]);
      }
      if (inside) {
        out.containing_cone.emplace_back(support.begin(), support.end());
        found = true;
        break;
      }
    }
    if (!found) {
      out.containing_cone.clear();
      return out;
    }
  }
  out.is_refinement = true;
  return out;
}

Fan common_refinement(const Fan& a, const Fan& b) {
  if (a.dim() != b.dim()) throw InputError("common_refinement: dimension mismatch");
  const size_t n = a.dim();
  if (n == 0) return a;
  std::vector<Cell> cells_a = cells_of(a), cells_b = cells_of(b);
  std::vector<Cell> cells;
  for (const auto& ca : cells_a)
    for (const auto& cb : cells_b) {
      auto ineqs = ca.inequalities;
      ineqs.insert(ineqs.end(), cb.inequalities.begin(), cb.inequalities.end());
      if (auto cell = make_cell(std::move(ineqs), n)) cells.push_back(std::move(*cell));
    }
  return resolve_smooth(triangulate_cells(n, cells));
}

RatVector eval_s_all(const Fan& fan, const RatVector& v) {
  RatVector out(fan.num_rays());
  if (fan.dim() == 0) return out;
  auto where = locate(fan, v);
  if (!where) throw MathError("eval_s: point outside the support of the fan");
  const auto& cone = fan.max_cones()[where->first];
  for (size_t j = 0; j < cone.size(); ++j) out[cone[j]] = where->second[j];
  return out;
}

Rational eval_s(const Fan& fan, size_t ray, const RatVector& v) { return eval_s_all(fan, v)[ray]; }

Rational PLFunction::operator()(const RatVector& v) const {
  RatVector s = eval_s_all(*fan, v);
  Rational total = 0;
  for (size_t c = 0; c < s.size(); ++c) total += ray_values[c] * s[c];
  return total;
}

std::vector<size_t> f_vector(const Fan& fan) {
  std::vector<size_t> f(fan.dim() + 1, 0);
  for (const auto& c : fan.all_cones()) ++f[c.size()];
  return f;
}

std::vector<Integer> h_vector(const Fan& fan) {
  // sum_k h_k t^(n-k) = sum_i f_i (t-1)^(n-i)
  const size_t n = fan.dim();
  auto f = f_vector(fan);
  std::vector<Integer> poly(n + 1);  // poly[e] = coefficient of t^e
  for (size_t i = 0; i <= n; ++i) {
    const size_t e = n - i;
    Integer binom = 1;
    for (size_t j = 0; j <= e; ++j) {
      // (t-1)^e contributes C(e,j) t^j (-1)^(e-j)
      Integer term = binom * f[i];
      if ((e - j) % 2) term = -term;
      poly[j] += term;
      binom = binom * Integer(e - j) / Integer(j + 1);
    }
  }
  std::vector<Integer> h(n + 1);
  for (size_t k = 0; k <= n; ++k) h[k] = poly[n - k];
  return h;
}

namespace {

std::vector<IntVector> annihilator(const Sublattice& subspace) {
  return kernel_lattice(subspace.basis()).basis().row_list();
}

bool in_subspace(const std::vector<IntVector>& annihilator_rows, const IntVector& v) {
  return std::all_of(annihilator_rows.begin(), annihilator_rows.end(),
                     [&](const IntVector& chi) { return dot(chi, v) == 0; });
}

}  // namespace

bool is_compatible_with_subspace(const Fan& fan, const Sublattice& subspace) {
  auto ann = annihilator(subspace);
  if (ann.empty()) return true;
  for (const auto& cone : fan.max_cones()) {
    std::vector<size_t> outside;
    for (size_t r : cone)
      if (!in_subspace(ann, fan.ray(r))) outside.push_back(r);
    if (outside.empty()) continue;
    LinearProgram lp;
    lp.num_vars = cone.size();
    lp.nonnegative.assign(lp.num_vars, true);
    for (const auto& chi : ann) {
      LinearConstraint c{RatVector(lp.num_vars), Relation::Equal, 0};
      for (size_t j = 0; j < cone.size(); ++j) c.coefficients[j] = dot(chi, fan.ray(cone[j]));
      lp.constraints.push_back(std::move(c));
    }
    LinearConstraint norm{RatVector(lp.num_vars), Relation::Equal, 1};
    for (size_t j = 0; j < cone.size(); ++j)
      if (std::find(outside.begin(), outside.end(), cone[j]) != outside.end()) norm.coefficients[j] = 1;
    lp.constraints.push_back(std::move(norm));
    if (find_feasible_point(lp)) return false;
  }
  return true;
}

Fan subfan_in_subspace(const Fan& fan, const Sublattice& subspace) {
  if (subspace.ambient_rank() != fan.dim()) throw InputError("subfan_in_subspace: dimension mismatch");
  if (!is_compatible_with_subspace(fan, subspace))
    throw InputError("subfan_in_subspace: fan is not compatible with the subspace");
  const size_t k = subspace.rank();
  if (k == 0) return Fan::zero();
  auto ann = annihilator(subspace);
  std::vector<long> new_index(fan.num_rays(), -1);
  std::vector<IntVector> rays;
  for (size_t r = 0; r < fan.num_rays(); ++r) {
    if (!in_subspace(ann, fan.ray(r))) continue;
    auto coords = subspace.coordinates(fan.ray(r));
    if (!coords) throw MathError("ray in the subspace is not in the saturated lattice");
    new_index[r] = static_cast<long>(rays.size());
    rays.push_back(*coords);
  }
  std::vector<ConeIndices> inside;
  for (const auto& cone : fan.all_cones())
    if (std::all_of(cone.begin(), cone.end(), [&](size_t r) { return new_index[r] >= 0; })) inside.push_back(cone);
  std::vector<ConeIndices> maximal;
  for (const auto& c : inside) {
    bool is_max = true;
    for (const auto& d : inside)
      if (d.size() > c.size() && std::includes(d.begin(), d.end(), c.begin(), c.end())) {
        is_max = false;
        break;
      }
    if (!is_max) continue;
    ConeIndices mapped;
    for (size_t r : c) mapped.push_back(static_cast<size_t>(new_index[r]));
    maximal.push_back(mapped);
  }
  return Fan(k, rays, maximal);
}

bool equal_sign_check(const Fan& fan, const IntVector& chi) {
  for (const auto& cone : fan.max_cones()) {
    bool pos = false, neg = false;
    for (size_t r : cone) {
      int s = sgn(dot(chi, fan.ray(r)));
      pos |= s > 0;
      neg |= s < 0;
    }
    if (pos && neg) return false;
  }
  return true;
}

}  // namespace toricmorgan
