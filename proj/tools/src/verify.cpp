#include "toricmorgan/verify.hpp"

#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <random>

#include "toricmorgan/oracles.hpp"
#include "toricmorgan/toric_dga.hpp"

namespace toricmorgan::verify {

std::string join(const std::vector<size_t>& v, const char* sep) {
  std::string out;
  for (size_t k = 0; k < v.size(); ++k) out += (k ? sep : "") + std::to_string(v[k]);
  return out;
}

size_t Report::passed() const {
  size_t n = 0;
  for (const auto& r : results) n += r.pass;
  return n;
}

std::vector<NamedFan> fan_library() {
  const Fan p1 = projective_space_fan(1);
  std::vector<NamedFan> base{{"P1", p1},
                             {"P2", projective_space_fan(2)},
                             {"P1xP1", product_fan(p1, p1)},
                             {"F0", hirzebruch_fan(0)},
                             {"F1", hirzebruch_fan(1)},
                             {"F2", hirzebruch_fan(2)},
                             {"P1xP1xP1", product_fan(product_fan(p1, p1), p1)}};
  std::vector<NamedFan> out = base;
  for (const auto& f : base)
    if (f.fan.dim() >= 2) out.push_back({f.name + "+blowup", elementary_refinement(f.fan)});
  return out;
}

namespace {

Layer layer(std::vector<IntVector> rows, std::vector<Rational> phases) {
  const size_t n = rows.front().size();
  return Layer(IntMatrix::from_rows(rows, n), phases);
}

}  // namespace

Arrangement roots_of_unity(size_t m) {
  Arrangement a{1, {}};
  for (size_t k = 0; k < m; ++k) a.layers.push_back(layer({{1}}, {ratio(k, m)}));
  return a;
}

std::vector<TestArrangement> test_arrangements() {
  std::vector<TestArrangement> out;
  for (size_t m = 1; m <= 4; ++m) out.push_back({"C* minus " + std::to_string(m) + " point(s)", roots_of_unity(m)});
  out.push_back({"{t1=1}", {2, {layer({{1, 0}}, {0})}}});
  out.push_back({"{t1=1},{t2=1}", {2, {layer({{1, 0}}, {0}), layer({{0, 1}}, {0})}}});
  out.push_back({"{t1=1},{t2=1},{t1t2=1}", {2, {layer({{1, 0}}, {0}), layer({{0, 1}}, {0}), layer({{1, 1}}, {0})}}});
  out.push_back({"point (1,1)", {2, {layer({{1, 0}, {0, 1}}, {0, 0})}}});
  out.push_back({"points (1,1),(-1,-1)",
                 {2,
                  {layer({{1, 0}, {0, 1}}, {0, 0}),
                   layer({{1, 0}, {0, 1}}, {ratio(1, 2), ratio(1, 2)})}}});
  out.push_back({"point (1,1) on {t1=1}", {2, {layer({{1, 0}, {0, 1}}, {0, 0}), layer({{1, 0}}, {0})}}});
  out.push_back({"point on the line {t1=t2=1} in (C*)^3",
                 {3, {layer({{1, 0, 0}, {0, 1, 0}}, {0, 0}), layer({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {0, 0, 0})}}});
  return out;
}

namespace {

struct Run {
  std::string name;
  CombinatorialData data;
  EqualSignBases bases;
  MorganN model;
  BettiTable table;
};

class Context {
 public:
  explicit Context(const Options& options) : options_(options), rng_(options.seed) {}

  const Options& options() const { return options_; }
  std::mt19937_64& rng() { return rng_; }

  const std::vector<NamedFan>& fans() {
    if (fans_.empty()) fans_ = fan_library();
    return fans_;
  }

  std::vector<Run>& runs() {
    if (runs_.empty())
      for (auto& t : test_arrangements()) {
        CombinatorialData data = combinatorial_data(saturate_arrangement(t.arrangement), t.arrangement.dim);
        EqualSignBases bases = equal_sign_bases(data);
        CompatibleFan cf = build_compatible_fan(data, bases);
        runs_.push_back(Run{t.name, data, bases, MorganN{}, BettiTable{}});
        Run& r = runs_.back();
        r.model = build_N(cf, data, options_.families, -1, options_.parallel);
        r.table = table_of(r.model, t.name);
      }
    return runs_;
  }

  Run& run(const std::string& name) {
    for (auto& r : runs())
      if (r.name == name) return r;
    throw InputError("no test arrangement named " + name);
  }

  /// Non-strict cohomology; every call is recorded for the vanishing-margin criterion.
  BettiTable table_of(const MorganN& model, const std::string& label) {
    BettiTable t = betti_of(model, false, options_.parallel);
    margins_.push_back({label, t});
    return t;
  }

  const std::vector<std::pair<std::string, BettiTable>>& margins() const { return margins_; }

  Rational random_rational() {
    std::uniform_int_distribution<long> num(-60, 60), den(1, 17);
    return ratio(num(rng_), den(rng_));
  }

  RatVector random_point(size_t n) {
    RatVector v(n);
    for (auto& x : v) x = random_rational();
    return v;
  }

 private:
  Options options_;
  std::mt19937_64 rng_;
  std::vector<NamedFan> fans_;
  std::vector<Run> runs_;
  std::vector<std::pair<std::string, BettiTable>> margins_;
};

std::vector<size_t> padded(std::vector<size_t> v, size_t length) {
  v.resize(length, 0);
  return v;
}

std::string table_string(const BettiTable& t) {
  std::string out = "(" + join(t.betti) + ")";
  if (!t.above.empty()) out += " above 2n: (" + join(t.above) + ")";
  return out;
}

bool same_table(const BettiTable& a, const BettiTable& b) { return a.betti == b.betti && a.above == b.above; }

struct Check {
  CriterionResult& result;
  void expect(bool ok, const std::string& what) {
    result.details.push_back((ok ? "ok    " : "FAIL  ") + what);
    if (!ok) result.pass = false;
  }
};

std::vector<size_t> binomial_row(size_t n, size_t length) {
  std::vector<size_t> out(length, 0);
  size_t c = 1;
  for (size_t k = 0; k <= n; ++k) {
    out[k] = c;
    c = c * (n - k) / (k + 1);
  }
  return out;
}

void criterion1(Context& ctx, Check& check) {
  for (const auto& f : ctx.fans()) {
    ValidationReport r = validate(f.fan);
    check.expect(r.ok(), f.name + ": validate");
    const size_t n = f.fan.dim();
    auto b = build_B(f.fan, 2 * static_cast<int>(n));
    auto dims = b.dims();
    dims.resize(2 * n + 1, 0);
    auto oracle = oracles::h_vector_betti(f.fan);
    check.expect(dims == oracle, f.name + ": B_F dims (" + join(dims) + ") vs h-vector (" + join(oracle) + ")");
  }
}

void criterion2(Context& ctx, Check& check) {
  for (const auto& f : ctx.fans()) {
    const int n = static_cast<int>(f.fan.dim());
    ToricDGA d = build_D(f.fan);
    auto q = d_quotient(d, 2 * n + 2);
    auto h = cohomology(q, *d.d);
    std::vector<size_t> expected(static_cast<size_t>(2 * n + 2), 0);
    expected[0] = 1;
    check.expect(h.dims == expected && h.d_squared_zero, f.name + ": H*(D_F) = (" + join(h.dims) + ")");
  }
}

void criterion3(Context& ctx, Check& check) {
  for (const auto& f : ctx.fans()) {
    ToricDGA d = build_D(f.fan);
    const int top = 2 * static_cast<int>(f.fan.dim()) + 2;
    std::vector<Monomial> pool;
    for (int deg = 1; deg <= top; ++deg)
      for (const auto& m : d.algebra->degree_basis(deg)) pool.push_back(m);
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    size_t failures = 0;
    std::string witness;
    for (int trial = 0; trial < 200; ++trial) {
      const Monomial& m = pool[pick(ctx.rng())];
      Element e;
      add_term(e, m, 1);
      Element lhs;
      Element de = d.d->apply(e);
      if (!de.empty()) lhs = homotopy_S(d, de);
      add_to(lhs, d.d->apply(homotopy_S(d, e)));
      if (lhs != e) {
        if (!failures) witness = " first failure at " + d.algebra->to_string(m);
        ++failures;
      }
    }
    check.expect(failures == 0, f.name + ": (Sd+dS)(m) = m on 200 random monomials" + witness);
  }
}

void criterion4(Context& ctx, Check& check) {
  for (const auto& f : ctx.fans()) {
    const size_t n = f.fan.dim();
    ToricC c = build_C(f.fan, 2 * static_cast<int>(n) + 2, {}, ctx.options().parallel);
    auto h = cohomology(*c.quotient, *c.dga.d, true, ctx.options().parallel);
    auto expected = binomial_row(n, 2 * n + 2);
    check.expect(h.dims == expected && h.d_squared_zero,
                 f.name + ": H*(C_F) = (" + join(h.dims) + ") expected (" + join(expected) + ")");
  }
}

void criterion5(Context& ctx, Check& check) {
  for (const auto& f : ctx.fans()) {
    auto a = build_A(f.fan);
    const int n = static_cast<int>(f.fan.dim());
    std::vector<Element> gens;
    for (int deg = 2; deg <= 2 * (n + 1); deg += 2)
      for (const auto& m : a->minimal_inadmissible(deg)) {
        Element e;
        add_term(e, m, 1);
        gens.push_back(std::move(e));
      }
    size_t nonzero = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      RatVector v = ctx.random_point(f.fan.dim());
      for (const auto& g : gens)
        if (mu_eval(f.fan, *a, g, v) != 0) ++nonzero;
    }
    check.expect(nonzero == 0, f.name + ": " + std::to_string(gens.size()) +
                                   " generators of I_F vanish at 1000 random points");
  }
  const Fan p1 = projective_space_fan(1);
  std::vector<std::pair<std::string, Fan>> coarse{
      {"P2", projective_space_fan(2)}, {"P1xP1", product_fan(p1, p1)}, {"F1", hirzebruch_fan(1)}};
  for (const auto& [name, f] : coarse) {
    Fan g = elementary_refinement(f);
    auto af = build_A(f), ag = build_A(g);
    DegreewiseQuotient qf(af, {}, 6), qg(ag, {}, 6);
    AlgebraMap gamma = gamma_map(f, qf, g, qg);
    std::vector<Element> elements;
    for (size_t c = 0; c < f.num_rays(); ++c) elements.push_back(af->gen(c));
    for (int deg : {4, 6})
      for (const auto& m : af->degree_basis(deg)) {
        Element e;
        add_term(e, m, 1);
        elements.push_back(std::move(e));
      }
    size_t mismatches = 0;
    for (int trial = 0; trial < 100; ++trial) {
      RatVector v = ctx.random_point(f.dim());
      for (const auto& e : elements)
        if (mu_eval(f, *af, e, v) != mu_eval(g, *ag, gamma.apply(e), v)) ++mismatches;
    }
    check.expect(mismatches == 0, name + " -> blow-up: mu_F = mu_G o gamma on " + std::to_string(elements.size()) +
                                      " elements at 100 random points");
    ToricC cf = build_C(f), cg = build_C(g);
    AlgebraMap chi = chi_map(cf, cg);
    auto defect = chi.defect(cf.dga.d.get(), cg.dga.d.get());
    auto hf = cohomology(*cf.quotient, *cf.dga.d).dims, hg = cohomology(*cg.quotient, *cg.dga.d).dims;
    check.expect(!defect && hf == hg, name + " -> blow-up: chi map well defined, H*(C_F) = (" + join(hf) +
                                          ") = H*(C_G) = (" + join(hg) + ")" + (defect ? " " + *defect : ""));
  }
}

void expect_table(Check& check, const Run& r, const std::vector<size_t>& expected, const std::string& source) {
  auto want = padded(expected, r.table.betti.size());
  check.expect(r.table.betti == want,
               r.name + ": Betti " + table_string(r.table) + " expected (" + join(want) + ") [" + source + "]");
}

void criterion6(Context& ctx, Check& check) {
  for (size_t m = 1; m <= 4; ++m) {
    const Run& r = ctx.run("C* minus " + std::to_string(m) + " point(s)");
    expect_table(check, r, oracles::punctured_line_betti(m + 1), "C minus " + std::to_string(m + 1) + " points");
  }
}

void criterion7(Context& ctx, Check& check) {
  using oracles::kunneth;
  using oracles::torus_poincare;
  expect_table(check, ctx.run("{t1=1}"), oracles::as_betti(kunneth({{1, 2}, torus_poincare(1)}), 5),
               "Kunneth (1+2q)(1+q)");
  expect_table(check, ctx.run("{t1=1},{t2=1}"), oracles::as_betti(kunneth({{1, 2}, {1, 2}}), 5),
               "Kunneth (1+2q)^2");
  check.expect(oracles::self_check(), "arithmetic Tutte oracle reproduces its closed-form cases");
  for (const char* name : {"{t1=1}", "{t1=1},{t2=1}", "{t1=1},{t2=1},{t1t2=1}"}) {
    Run& r = ctx.run(name);
    Arrangement a;
    for (const auto& t : test_arrangements())
      if (t.name == name) a = t.arrangement;
    auto oracle = oracles::poincare_divisorial(oracles::divisorial_data(a));
    check.expect(oracle.valid, std::string(name) + ": oracle output is a valid Poincare polynomial");
    if (oracle.valid)
      expect_table(check, r, oracles::as_betti(oracle.poincare, 5),
                   "arithmetic Tutte " + oracles::to_string(oracle.poincare));
  }
}

/// A second compatible fan: the P^n seed when it differs, otherwise an elementary refinement.
std::optional<CompatibleFan> second_fan(const Run& r) {
  if (r.data.dim < 2) return std::nullopt;
  CompatibleFan other = build_compatible_fan(r.data, r.bases, SeedFan::ProjectiveSpace);
  if (other.fan == r.model.cfan.fan) other = make_compatible(elementary_refinement(r.model.cfan.fan), r.data, r.bases);
  return other;
}

void criterion8(Context& ctx, Check& check) {
  using oracles::kunneth;
  using oracles::torus_poincare;
  expect_table(check, ctx.run("point (1,1)"), oracles::punctured_torus_betti(2), "Mayer-Vietoris");
  // the point lies on the divisor, so the complement is that of the divisor alone
  expect_table(check, ctx.run("point (1,1) on {t1=1}"), oracles::as_betti(kunneth({{1, 2}, torus_poincare(1)}), 5),
               "Kunneth (1+2q)(1+q)");
  {
    oracles::Poincare punctured;
    for (size_t b : oracles::punctured_torus_betti(2)) punctured.push_back(b);
    expect_table(check, ctx.run("point on the line {t1=t2=1} in (C*)^3"),
                 oracles::as_betti(kunneth({punctured, torus_poincare(1)}), 7),
                 "Kunneth ((C*)^2 minus a point) x C*");
  }
  Run& r = ctx.run("points (1,1),(-1,-1)");
  auto other = second_fan(r);
  MorganN n2 = build_N(*other, r.data, ctx.options().families, -1, ctx.options().parallel);
  BettiTable t2 = ctx.table_of(n2, r.name + " (second fan)");
  check.expect(!(other->fan == r.model.cfan.fan), r.name + ": second fan has " + std::to_string(other->fan.num_rays()) +
                                                      " rays, first " + std::to_string(r.model.cfan.fan.num_rays()));
  check.expect(same_table(r.table, t2), r.name + ": Betti " + table_string(r.table) + " vs " + table_string(t2));
}

void criterion9(Context& ctx, Check& check) {
  for (auto& r : ctx.runs()) {
    auto morgan = morgan_direct(r.model.cfan, r.data);
    auto dims = r.model.quotient->dims();
    dims.resize(morgan.size());
    check.expect(dims == morgan, r.name + ": dim N_F^d (" + join(dims) + ") vs Morgan sum (" + join(morgan) + ")");
  }
}

void criterion10(Context& ctx, Check& check) {
  const auto& opt = ctx.options();
  for (auto& r : ctx.runs()) {
    if (auto other = second_fan(r)) {
      BettiTable t = ctx.table_of(build_N(*other, r.data, opt.families, -1, opt.parallel), r.name + " (fan b)");
      check.expect(same_table(r.table, t), r.name + ": (a) fans with " + std::to_string(r.model.cfan.fan.num_rays()) +
                                               " and " + std::to_string(other->fan.num_rays()) + " rays give " +
                                               table_string(r.table) + " and " + table_string(t));
    } else {
      check.expect(true, r.name + ": (a) P1 is the only complete fan in dimension 1, nothing to compare");
    }

    EqualSignBases alt = equal_sign_bases(r.data, 1);
    CompatibleFan common = build_compatible_fan(r.data, r.bases, SeedFan::ProductOfLines, alt.char_set);
    BettiTable t0 = ctx.table_of(build_N(common, r.data, opt.families, -1, opt.parallel), r.name + " (bases 0)");
    BettiTable t1 =
        ctx.table_of(build_N(CompatibleFan{common.fan, alt}, r.data, opt.families, -1, opt.parallel), r.name + " (bases 1)");
    check.expect(same_table(t0, t1) && same_table(t0, r.table),
                 r.name + ": (b) two basis choices give " + table_string(t0) + " and " + table_string(t1));

    Arrangement a;
    for (const auto& t : test_arrangements())
      if (t.name == r.name) a = t.arrangement;
    auto poset = saturate_arrangement(a);
    if (auto reordered = poset.alternative_linear_extension()) {
      CombinatorialData data = combinatorial_data(*reordered, a.dim);
      EqualSignBases bases = equal_sign_bases(data);
      CompatibleFan cf = build_compatible_fan(data, bases);
      BettiTable t = ctx.table_of(build_N(cf, data, opt.families, -1, opt.parallel), r.name + " (reordered)");
      check.expect(same_table(t, r.table), r.name + ": (c) other linear extension gives " + table_string(t));
    } else {
      check.expect(true, r.name + ": (c) the poset is a chain, its linear extension is unique");
    }
  }
}

void criterion11(Context& ctx, Check& check) {
  const auto& opt = ctx.options();
  for (auto& r : ctx.runs()) {
    Fan g = elementary_refinement(r.model.cfan.fan);
    CompatibleFan cg = make_compatible(g, r.data, r.bases);
    MorganN ng = build_N(cg, r.data, opt.families, -1, opt.parallel);
    BettiTable tg = ctx.table_of(ng, r.name + " (refined)");
    AlgebraMap phi = phi_map(r.model, ng);
    auto defect = phi.defect(r.model.d.get(), ng.d.get());
    std::string what = g == r.model.cfan.fan ? "identity refinement in dimension 1" : "stellar refinement";
    check.expect(!defect && same_table(r.table, tg), r.name + ": Phi for " + what + ", H*(N_F) " +
                                                         table_string(r.table) + " vs H*(N_G) " + table_string(tg) +
                                                         (defect ? ", " + *defect : ", relations and d preserved"));
  }
}

void criterion12(Context& ctx, Check& check) {
  ctx.runs();
  size_t bad = 0;
  for (const auto& [label, t] : ctx.margins()) {
    bool zero = t.above.size() == 2 && t.above[0] == 0 && t.above[1] == 0;
    if (!zero || !t.d_squared_zero) {
      ++bad;
      check.expect(false, label + ": H^{2n+1},H^{2n+2} = (" + join(t.above) + "), d^2 = 0: " +
                              (t.d_squared_zero ? "yes" : "no"));
    }
  }
  check.expect(bad == 0, std::to_string(ctx.margins().size()) + " runs with vanishing margin and d^2 = 0");
}

void criterion13(Context& ctx, Check& check) {
  for (int drop = 1; drop <= 3; ++drop) {
    ThetaFamilies families;
    if (drop == 1) families.family1 = false;
    if (drop == 2) families.family2 = false;
    if (drop == 3) families.family3 = false;
    std::vector<std::string> changed;
    for (auto& r : ctx.runs()) {
      try {
        MorganN m = build_N(r.model.cfan, r.data, families, -1, ctx.options().parallel);
        BettiTable t = betti_of(m, false, ctx.options().parallel);
        if (!same_table(t, r.table) || !t.d_squared_zero) changed.push_back(r.name + " -> " + table_string(t));
      } catch (const MathError& e) {
        changed.push_back(r.name + " -> " + e.what());
      }
    }
    std::string what = "dropping family (" + std::to_string(drop) + ") changes " + std::to_string(changed.size()) +
                       " table(s)";
    if (!changed.empty()) what += ", e.g. " + changed.front();
    check.expect(!changed.empty(), what);
  }
}

struct Criterion {
  const char* title;
  std::function<void(Context&, Check&)> body;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {"fan library validates, B_F dims equal the h-vector", criterion1},
      {"D_F is acyclic", criterion2},
      {"contraction identity Sd+dS = id", criterion3},
      {"H*(C_F) is an exterior algebra on n generators", criterion4},
      {"I_F in the kernel, mu compatible with refinement, chi preserves cohomology", criterion5},
      {"Betti numbers of points in C*", criterion6},
      {"Betti numbers of divisorial arrangements in (C*)^2", criterion7},
      {"Betti numbers of point arrangements in (C*)^2", criterion8},
      {"N_F has the dimensions of the Morgan algebra", criterion9},
      {"Betti tables independent of fan, bases and linear extension", criterion10},
      {"Phi is a quasi-isomorphism", criterion11},
      {"vanishing margin and d^2 = 0", criterion12},
      {"each Theta family is needed", criterion13},
  };
  return list;
}

CriterionResult run_one(Context& ctx, int id) {
  const auto& list = criteria();
  if (id < 1 || id > static_cast<int>(list.size())) throw InputError("no criterion " + std::to_string(id));
  CriterionResult result;
  result.id = id;
  result.title = list[static_cast<size_t>(id - 1)].title;
  result.pass = true;
  Check check{result};
  try {
    list[static_cast<size_t>(id - 1)].body(ctx, check);
  } catch (const std::exception& e) {
    check.expect(false, std::string("exception: ") + e.what());
  }
  return result;
}

}  // namespace

CriterionResult run_criterion(int id, const Options& options) {
  Context ctx(options);
  return run_one(ctx, id);
}

Report run_verify(const Options& options) {
  Context ctx(options);
  Report report;
  for (int id = 1; id <= static_cast<int>(criteria().size()); ++id) report.results.push_back(run_one(ctx, id));
  return report;
}

void print_report(const Report& report, std::ostream& out, bool machine) {
  for (const auto& r : report.results) {
    out << (r.pass ? "PASS" : "FAIL") << " " << r.id << " " << r.title << "\n";
    if (!machine)
      for (const auto& d : r.details) out << "    " << d << "\n";
  }
  out << "VERIFY " << (report.ok() ? "PASS" : "FAIL") << " " << report.passed() << "/" << report.results.size()
      << "\n";
}

}  // namespace toricmorgan::verify
