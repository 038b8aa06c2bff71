#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "toricmorgan/io.hpp"
#include "toricmorgan/oracles.hpp"
#include "toricmorgan/toric_dga.hpp"
#include "toricmorgan/verify.hpp"
#include "toricmorgan/wonderful_morgan.hpp"

using namespace toricmorgan;

namespace {

struct Flags {
  int dmax = -1;
  std::uint64_t seed = 1;
  bool parallel = false;
  bool machine = false;
  std::string seed_fan = "product";
  int basis_variant = 0;
  int criterion = 0;
  std::vector<int> drop_families;
  std::vector<std::string> chars;
  std::vector<std::string> stellar;
  std::string path;
};

std::ostream& prose(const Flags& f) {
  static std::ostringstream sink;
  sink.str("");
  return f.machine ? sink : std::cout;
}

IntVector parse_vector_arg(const std::string& text, size_t n) {
  std::istringstream ss(text);
  IntVector v;
  for (std::string w; ss >> w;) {
    Integer z;
    if (z.set_str(w, 10) != 0) throw InputError("not an integer vector: '" + text + "'");
    v.push_back(z);
  }
  if (v.size() != n) throw InputError("vector '" + text + "' should have " + std::to_string(n) + " entries");
  return v;
}

std::string join(const std::vector<size_t>& v) { return verify::join(v, " "); }

void print_report(const ValidationReport& r, const Flags& f) {
  auto& out = prose(f);
  out << "structural " << r.structural << "\nsimplicial " << r.simplicial << "\nsmooth " << r.smooth
      << "\ncomplete " << r.complete << "\nprojective " << r.projective << "\nintersections " << r.intersections_are_faces
      << "\n";
  for (const auto& m : r.messages) out << "  " << m << "\n";
}

int fan_check(const Flags& f) {
  Fan fan = parse_fan_file(f.path, false);
  ValidationReport r = validate(fan);
  print_report(r, f);
  std::cout << "VALID " << (r.ok() ? "yes" : "no") << "\n";
  return r.ok() ? 0 : 1;
}

int fan_resolve(const Flags& f) {
  Fan fan = resolve_smooth(parse_fan_file(f.path, false));
  std::cout << format_fan(fan);
  return 0;
}

int fan_refine(const Flags& f) {
  Fan fan = parse_fan_file(f.path, false);
  std::vector<IntVector> chars;
  for (const auto& c : f.chars) chars.push_back(parse_vector_arg(c, fan.dim()));
  if (!chars.empty()) fan = resolve_smooth(hyperplane_refine(fan, chars));
  for (const auto& s : f.stellar) fan = stellar_subdivide(fan, parse_vector_arg(s, fan.dim()));
  std::cout << format_fan(fan);
  return 0;
}

int fan_hvector(const Flags& f) {
  Fan fan = parse_fan_file(f.path);
  std::cout << "HVECTOR";
  for (const auto& h : h_vector(fan)) std::cout << " " << h;
  std::cout << "\n";
  return 0;
}

int toric_betti(const Flags& f) {
  Fan fan = parse_fan_file(f.path);
  const int n = static_cast<int>(fan.dim());
  auto b = build_B(fan, f.dmax < 0 ? 2 * n : f.dmax);
  auto dims = b.dims();
  prose(f) << "H*(X_F) = B_F, dims by degree: " << join(dims) << "\n";
  std::cout << "BETTI " << join(dims) << "\n";
  return 0;
}

int toric_dga(const Flags& f) {
  Fan fan = parse_fan_file(f.path);
  const int n = static_cast<int>(fan.dim());
  const int dmax = f.dmax < 0 ? 2 * n + 2 : f.dmax;
  ToricDGA d = build_D(fan);
  auto hd = cohomology(d_quotient(d, dmax), *d.d, true, f.parallel);
  ToricC c = build_C(fan, dmax, {}, f.parallel);
  auto hc = cohomology(*c.quotient, *c.dga.d, true, f.parallel);
  std::cout << "B_F " << join(build_B(fan).dims()) << "\n";
  std::cout << "D_F " << join(hd.chain_dims) << "\n";
  std::cout << "H(D_F) " << join(hd.dims) << "\n";
  std::cout << "C_F " << join(hc.chain_dims) << "\n";
  std::cout << "H(C_F) " << join(hc.dims) << "\n";
  if (!hd.d_squared_zero || !hc.d_squared_zero) throw MathError("d^2 != 0");
  return 0;
}

PipelineOptions pipeline_options(const Flags& f) {
  PipelineOptions o;
  if (f.seed_fan == "product") o.seed = SeedFan::ProductOfLines;
  else if (f.seed_fan == "projective") o.seed = SeedFan::ProjectiveSpace;
  else throw InputError("--fan-seed must be 'product' or 'projective'");
  o.basis_variant = f.basis_variant;
  o.parallel = f.parallel;
  return o;
}

struct Prepared {
  Arrangement arrangement;
  LayerPoset poset;
  CombinatorialData data;
};

Prepared prepare(const Flags& f) {
  Prepared p;
  p.arrangement = parse_arrangement_file(f.path);
  p.poset = saturate_arrangement(p.arrangement);
  p.data = combinatorial_data(p.poset, p.arrangement.dim);
  return p;
}

CompatibleFan compatible(const Prepared& p, const Flags& f) {
  PipelineOptions o = pipeline_options(f);
  return build_compatible_fan(p.data, equal_sign_bases(p.data, o.basis_variant), o.seed);
}

int arr_validate(const Flags& f) {
  Arrangement a = parse_arrangement_file(f.path);
  prose(f) << "dimension " << a.dim << ", " << a.layers.size() << " layer(s)\n";
  for (const auto& l : a.layers) prose(f) << "  " << l.to_string() << "\n";
  std::cout << "VALID yes\n";
  return 0;
}

int arr_saturate(const Flags& f) {
  Prepared p = prepare(f);
  std::cout << "LAYERS " << p.poset.size() << "\n";
  for (size_t i = 0; i < p.poset.size(); ++i)
    std::cout << "G" << i + 1 << " dim " << p.poset.element(i).dimension() << " " << p.poset.element(i).to_string()
              << "\n";
  return 0;
}

int arr_poset(const Flags& f) {
  Prepared p = prepare(f);
  for (size_t i = 0; i < p.data.size(); ++i) {
    std::cout << "G" << i + 1 << " <";
    for (size_t j = 0; j < p.data.size(); ++j)
      if (p.data.strictly_below(i, j)) std::cout << " G" << j + 1;
    std::cout << "\n";
  }
  return 0;
}

int arr_fan(const Flags& f) {
  Prepared p = prepare(f);
  std::cout << format_fan(compatible(p, f).fan);
  return 0;
}

int arr_betti(const Flags& f) {
  Prepared p = prepare(f);
  PipelineOptions o = pipeline_options(f);
  CompatibleFan cf = build_compatible_fan(p.data, equal_sign_bases(p.data, o.basis_variant), o.seed);
  MorganN model = build_N(cf, p.data, o.families, f.dmax, f.parallel);
  BettiTable t = betti_of(model, f.dmax < 0, f.parallel);
  auto& out = prose(f);
  out << "compatible fan: " << cf.fan.num_rays() << " rays, " << cf.fan.max_cones().size() << " maximal cones\n";
  out << "dim N_F^d: " << join(t.chain_dims) << "\n";
  out << "Poincare polynomial: " << t.poincare() << "\n";
  std::cout << "BETTI " << join(t.betti) << "\n";
  return 0;
}

int arr_strata(const Flags& f) {
  Prepared p = prepare(f);
  CompatibleFan cf = compatible(p, f);
  for (const auto& pair : nested_pairs(cf, p.data)) {
    std::cout << "flag {";
    for (size_t k = 0; k < pair.flag.size(); ++k) std::cout << (k ? "," : "") << "G" << pair.flag[k] + 1;
    std::cout << "} cone {";
    for (size_t k = 0; k < pair.cone.size(); ++k) std::cout << (k ? "," : "") << pair.cone[k];
    std::cout << "} codim " << pair.codim() << " dims " << join(stratum_cohomology(pair, cf, p.data)) << "\n";
  }
  std::cout << "MORGAN " << join(morgan_direct(cf, p.data)) << "\n";
  return 0;
}

int arr_presentation(const Flags& f) {
  Prepared p = prepare(f);
  CompatibleFan cf = compatible(p, f);
  std::cout << "rays";
  for (size_t c = 0; c < cf.fan.num_rays(); ++c) std::cout << "  x" << c << "=(" << to_string(cf.fan.ray(c)) << ")";
  std::cout << "\n";
  for (const auto& pb : cf.bases.pairs) {
    std::cout << "P[G" << pb.i + 1 << " in " << (pb.j == p.data.size() ? std::string("X") : "G" + std::to_string(pb.j + 1))
              << "] = " << p_polynomial_string(pb, cf.fan) << "\n";
  }
  PresentationI pres = ideal_I(cf, p.data);
  auto dump = [](const char* label, const MonomialAlgebra& alg, const std::vector<Element>& v) {
    for (const auto& e : v) std::cout << label << " " << alg.to_string(e) << "\n";
  };
  dump("I.xi", *pres.ambient, pres.xi);
  dump("I.1", *pres.ambient, pres.family1);
  dump("I.2", *pres.ambient, pres.family2);
  dump("I.3", *pres.ambient, pres.family3);
  MorganN n = build_N(cf, p.data, {}, 0);
  dump("Theta.1", *n.ambient, n.theta.family1);
  dump("Theta.2", *n.ambient, n.theta.family2);
  dump("Theta.3", *n.ambient, n.theta.family3);
  return 0;
}

int arr_oracle(const Flags& f) {
  Arrangement a = parse_arrangement_file(f.path);
  bool any = false;
  bool divisorial = !a.layers.empty();
  for (const auto& l : a.layers) divisorial = divisorial && l.rank() == 1;
  if (divisorial) {
    auto o = oracles::poincare_divisorial(oracles::divisorial_data(a));
    std::cout << "arithmetic-tutte " << (o.valid ? "" : "(invalid) ") << oracles::to_string(o.poincare) << "\n";
    any = true;
  }
  if (a.dim == 1) {
    std::cout << "punctured-line " << join(oracles::punctured_line_betti(a.layers.size() + 1)) << "\n";
    any = true;
  }
  if (a.layers.size() == 1 && a.layers[0].rank() == a.dim) {
    std::cout << "punctured-torus " << join(oracles::punctured_torus_betti(a.dim)) << "\n";
    any = true;
  }
  if (!any) std::cout << "no oracle applies\n";
  return 0;
}

int run_verify(const Flags& f) {
  verify::Options o;
  o.seed = f.seed;
  o.parallel = f.parallel;
  for (int k : f.drop_families) {
    if (k == 1) o.families.family1 = false;
    else if (k == 2) o.families.family2 = false;
    else if (k == 3) o.families.family3 = false;
    else throw InputError("--drop-family takes 1, 2 or 3");
  }
  verify::Report report;
  if (f.criterion > 0) report.results.push_back(verify::run_criterion(f.criterion, o));
  else report = verify::run_verify(o);
  verify::print_report(report, std::cout, f.machine);
  return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational models of toric arrangement complements"};
  app.require_subcommand(1);
  Flags flags;
  app.add_option("--dmax", flags.dmax, "Override the top computed degree");
  app.add_option("--seed", flags.seed, "Seed for randomized checks");
  app.add_flag("--parallel", flags.parallel, "Parallelize per degree");
  app.add_flag("--machine", flags.machine, "Only print machine-readable lines");
  app.add_option("--fan-seed", flags.seed_fan, "Seed fan for compatible fans: product or projective");
  app.add_option("--basis-variant", flags.basis_variant, "Equal-sign basis choice (0 or 1)");

  std::function<int(const Flags&)> action;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, int (*fn)(const Flags&),
                  bool takes_file = true) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->fallthrough();
    if (takes_file) sub->add_option("file", flags.path, "Input file")->required()->check(CLI::ExistingFile);
    sub->callback([&action, fn] { action = fn; });
    return sub;
  };

  CLI::App* fan = app.add_subcommand("fan", "Fans")->require_subcommand(1)->fallthrough();
  leaf(fan, "check", "Validate a fan file", fan_check);
  leaf(fan, "resolve", "Smooth resolution", fan_resolve);
  CLI::App* refine = leaf(fan, "refine", "Refine by hyperplanes and stellar subdivisions", fan_refine);
  refine->add_option("--char", flags.chars, "Character whose kernel refines the fan, e.g. \"1 -1\"");
  refine->add_option("--stellar", flags.stellar, "Vector to subdivide at");
  leaf(fan, "hvector", "h-vector", fan_hvector);

  CLI::App* toric = app.add_subcommand("toric", "Toric varieties")->require_subcommand(1)->fallthrough();
  leaf(toric, "betti", "Betti numbers of X_F", toric_betti);
  leaf(toric, "dga", "D_F and C_F", toric_dga);

  CLI::App* arr = app.add_subcommand("arr", "Toric arrangements")->require_subcommand(1)->fallthrough();
  leaf(arr, "validate", "Parse and validate", arr_validate);
  leaf(arr, "saturate", "Saturated arrangement", arr_saturate);
  leaf(arr, "poset", "Inclusion poset", arr_poset);
  leaf(arr, "fan", "A compatible fan", arr_fan);
  leaf(arr, "betti", "Betti numbers of the complement", arr_betti);
  leaf(arr, "strata", "Cohomology of the boundary strata", arr_strata);
  leaf(arr, "presentation", "Relations of H*(Y) and of N_F", arr_presentation);
  leaf(arr, "oracle", "Independent literature formulas", arr_oracle);

  CLI::App* ver = leaf(&app, "verify", "Run the acceptance suite", run_verify, false);
  ver->add_option("--criterion", flags.criterion, "Run one criterion only");
  ver->add_option("--drop-family", flags.drop_families, "Mutation run: leave out a Theta generator family");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return action(flags);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const MathError& e) {
    std::cerr << "math error: " << e.what() << "\n";
    return 1;
  }
}
