// singlab command line: solve singular schemes, run deformation families,
// evaluate the closed-form invariants, and reproduce the built-in examples.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <random>
#include <iostream>

#include "singlab/catalog.hpp"
#include "singlab/errors.hpp"
#include "singlab/invariants.hpp"
#include "singlab/manifest.hpp"
#include "singlab/preset.hpp"
#include "singlab/report_json.hpp"
#include "singlab/version.hpp"

using namespace singlab;

namespace {

using ordered_json = nlohmann::ordered_json;

struct CommonOptions {
  std::string field_path;
  std::string family;
  std::string preset;
  std::string out_path;
  std::string order = "grevlex";
  std::string t_seq;
  int m = 2;
  int kappa = 2;
  int beta = 0;
  bool special = false;
  unsigned long seed = 7;
  double eps_w = 1e-3;
  bool eps_w_set = false;
  double r_esc = 1e6;
  bool r_esc_set = false;
  double region = 0.0;  // 0 means unset
  double residual_tol = 1e-8;
  double cluster_tol = 1e-6;
  long budget = 200000;
};

MonomialOrder parse_order(const std::string& name) {
  if (name == "grevlex") return MonomialOrder::grevlex();
  if (name == "lex") return MonomialOrder::lex();
  throw ParseError("unknown order '" + name + "'", 0);
}

SolveOptions solve_options(const CommonOptions& o) {
  SolveOptions s;
  s.residual_tol = o.residual_tol;
  s.cluster_tol = o.cluster_tol;
  s.seed = o.seed;
  s.groebner.budget = o.budget;
  return s;
}

TSchedule schedule_from(const CommonOptions& o, const TSchedule& base) {
  TSchedule s = base;
  if (!o.t_seq.empty()) {
    s.ts.clear();
    std::stringstream parts(o.t_seq);
    std::string piece;
    while (std::getline(parts, piece, ',')) s.ts.push_back(Rational::parse(piece));
  }
  // flags override the family defaults only when actually given
  if (o.eps_w_set) s.eps_w = o.eps_w;
  if (o.r_esc_set) s.r_escape = o.r_esc;
  if (o.region > 0.0) s.region_radius = o.region;
  return s;
}

void write_json(const std::string& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

std::string cx(const cplx& z) {
  std::ostringstream os;
  os.precision(12);
  os << z.real();
  if (z.imag() != 0.0) os << (z.imag() > 0 ? "+" : "") << z.imag() << "i";
  return os.str();
}

int cmd_solve(const CommonOptions& o) {
  const FieldManifest manifest = load_manifest(o.field_path);
  (void)parse_order(o.order);  // validated; the solver's internal basis order is grevlex
  const auto pts = solve_points(singular_ideal(manifest.field), solve_options(o));
  long total = 0;
  for (const auto& p : pts) total += p.multiplicity;
  std::cout << "solved " << pts.size() << " points, total multiplicity = " << total << "\n";
  for (const auto& p : pts) {
    std::cout << "  mult " << p.multiplicity << "  residual " << p.residual << "  (";
    for (std::size_t i = 0; i < p.point.coords.size(); ++i)
      std::cout << (i ? ", " : "") << cx(p.point.coords[i]);
    std::cout << ")\n";
  }
  if (!o.out_path.empty()) {
    ordered_json j;
    j["command"] = "solve";
    j["version"] = kVersion;
    j["seed"] = o.seed;
    j["field"] = o.field_path;
    j["tolerances"] = {{"residual", o.residual_tol}, {"cluster", o.cluster_tol},
                       {"budget", o.budget}};
    j["total_multiplicity"] = total;
    ordered_json points = ordered_json::array();
    for (const auto& p : pts) {
      ordered_json pt;
      ordered_json coords = ordered_json::array();
      for (const auto& z : p.point.coords)
        coords.push_back(ordered_json::array({z.real(), z.imag()}));
      pt["coords"] = std::move(coords);
      pt["multiplicity"] = p.multiplicity;
      pt["residual"] = p.residual;
      points.push_back(std::move(pt));
    }
    j["points"] = std::move(points);
    write_json(o.out_path, j);
  }
  return 0;
}

int cmd_deform(const CommonOptions& o) {
  DeformationFamily family;
  CompleteIntersection w;
  TSchedule sched = TSchedule::standard();

  if (o.family == "example41") {
    const LineFamilyData data =
        o.beta > 0 ? line_family_planted_root(o.m) : line_family_generic(o.m, o.seed);
    auto [fam, pred] = line_family(data);
    family = std::move(fam);
    w = line_family_w();
    sched = line_family_schedule(o.m);
    std::cout << "predictions: generic mu = " << pred.generic_mu << ", beta = " << pred.beta
              << ", predicted mu = " << pred.predicted_mu << "\n";
  } else if (o.family == "example42") {
    auto inst = cubic_curve_family(o.seed);
    family = std::move(inst.refined);
    w = std::move(inst.w);
  } else if (o.family == "example43") {
    const RotationFamilyData data = o.special ? rotation_family_special(o.kappa)
                                              : rotation_family_generic(o.kappa, o.seed);
    auto [fam, pred] = rotation_family(data);
    family = std::move(fam);
    w = rotation_family_w();
    sched = rotation_family_schedule(pred);
  } else if (!o.field_path.empty()) {
    FieldManifest manifest = load_manifest(o.field_path);
    if (!manifest.w) throw ParseError("deform needs a manifest with a W line", 0);
    w = std::move(*manifest.w);
    const int n = manifest.field.nvars;
    // seeded constant direction
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<int> pick(1, 5);
    std::vector<MultivariatePolynomial> dir;
    for (int i = 0; i < n; ++i)
      dir.push_back(MultivariatePolynomial::constant(n, Rational(pick(rng))));
    family = DeformationFamily{std::move(manifest.field), VectorField(n, std::move(dir)),
                               "manifest translation"};
  } else {
    throw ParseError("deform needs --family or --field", 0);
  }

  const BasinReport report =
      classify_limits(family, schedule_from(o, sched), w, solve_options(o));
  std::cout << "trajectories: " << report.trajectories.size() << "\n";
  for (const auto& tr : report.trajectories) {
    std::cout << "  " << to_string(tr.classification) << " multiplicity " << tr.multiplicity;
    if (!tr.limit.empty()) {
      std::cout << "  limit (";
      for (std::size_t i = 0; i < tr.limit.size(); ++i)
        std::cout << (i ? ", " : "") << cx(tr.limit[i]);
      std::cout << ")";
    }
    std::cout << "\n";
  }
  std::cout << "mu_along_W = " << report.mu_along_w << "\n";
  if (!o.out_path.empty()) write_basin_report(o.out_path, report);
  return 0;
}

int cmd_nu(const CommonOptions& o) {
  const Preset preset = resolve_preset(o.preset);
  const AmbientSetup setup = preset.setup(o.m);
  const Rational nu = nu_value(setup, preset.table);
  std::cout << "nu(" << preset.name << ", m=" << o.m << ") = " << nu.str() << "\n";
  std::cout << "  setup: n=" << setup.n << " d=" << setup.d << " k=" << setup.k
            << " degW=" << setup.deg_w << " ell=" << setup.ell << "\n";
  if (!o.out_path.empty()) {
    ordered_json j;
    j["command"] = "nu";
    j["version"] = kVersion;
    j["preset"] = preset.name;
    j["m"] = o.m;
    j["nu"] = nu.str();
    write_json(o.out_path, j);
  }
  return 0;
}

int cmd_bounds(const CommonOptions& o, int k, int n, bool radial) {
  const long long bound = soares_bound(k, n, radial);
  std::cout << "index bound (k=" << k << ", n=" << n << (radial ? ", radial top" : "")
            << ") = " << bound << "\n";
  if (!o.out_path.empty()) {
    ordered_json j;
    j["command"] = "bounds";
    j["version"] = kVersion;
    j["k"] = k;
    j["n"] = n;
    j["radial"] = radial;
    j["bound"] = bound;
    write_json(o.out_path, j);
  }
  return 0;
}

int cmd_balance(const CommonOptions& o, int n, int k, const std::string& nus,
                const std::string& ns, long sum_isolated) {
  BalanceInput in;
  in.n = n;
  in.k = k;
  in.sum_isolated = sum_isolated;
  {
    std::stringstream parts(nus);
    std::string piece;
    while (std::getline(parts, piece, ',')) in.nu.push_back(Rational::parse(piece));
  }
  if (!ns.empty()) {
    std::stringstream parts(ns);
    std::string piece;
    while (std::getline(parts, piece, ',')) {
      if (piece == "?")
        in.n_embedded.push_back(std::nullopt);
      else
        in.n_embedded.push_back(std::stol(piece));
    }
  }
  const BalanceReport rep = global_balance(in);
  for (std::size_t j = 0; j < rep.n_embedded.size(); ++j)
    std::cout << "component " << (j + 1) << ": N = " << rep.n_embedded[j]
              << ", mu_along_W = " << rep.mu_along_w[j] << "\n";
  if (!o.out_path.empty()) {
    ordered_json j;
    j["command"] = "balance";
    j["version"] = kVersion;
    j["N"] = rep.n_embedded;
    j["mu_along_W"] = rep.mu_along_w;
    write_json(o.out_path, j);
  }
  return 0;
}

FieldManifest manifest_with_w(const CommonOptions& o) {
  FieldManifest manifest = load_manifest(o.field_path);
  if (!manifest.w) throw ParseError("manifest needs a W line", 0);
  return manifest;
}

int cmd_mult_w(const CommonOptions& o) {
  const FieldManifest manifest = manifest_with_w(o);
  GroebnerOptions gopts;
  gopts.budget = o.budget;
  const MultiplicityProfile prof = mult_along_w(manifest.field, *manifest.w, gopts);
  std::cout << "orders:";
  for (const auto& m : prof.orders) {
    if (m)
      std::cout << " " << *m;
    else
      std::cout << " inf";
  }
  std::cout << "\nm_W = " << prof.m_w << "\n";
  return 0;
}

int cmd_ell(const CommonOptions& o) {
  const FieldManifest manifest = manifest_with_w(o);
  VectorField field = manifest.field;
  CompleteIntersection w = *manifest.w;
  if (!w.coordinate_indices()) {
    std::cout << "W is not coordinate; straightening first\n";
    StraightenResult st = straighten(w, field);
    field = std::move(st.field);
    w = std::move(st.w);
  }
  const ExceptionalData exc = exceptional_order(field, w);
  std::cout << "m_E = " << exc.m_e << ", " << (exc.dicritical ? "dicritical" : "non-dicritical")
            << ", ell = " << exc.ell << "\n";
  return 0;
}

int cmd_totally_simple(const CommonOptions& o) {
  const FieldManifest manifest = manifest_with_w(o);
  GroebnerOptions gopts;
  gopts.budget = o.budget;
  std::optional<double> region;
  if (o.region > 0.0) region = o.region;
  const bool simple = totally_simple(manifest.field, *manifest.w, region, gopts);
  std::cout << "totally simple"
            << (region ? " (within |z| <= " + std::to_string(*region) + ")" : "") << ": "
            << (simple ? "true" : "false") << "\n";
  return simple ? 0 : 1;
}

struct CheckOutcome {
  int failures = 0;
  void report(const std::string& name, bool ok) {
    std::cout << (ok ? "  PASS  " : "  FAIL  ") << name << "\n";
    if (!ok) ++failures;
  }
};

double point_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

int cmd_check(const CommonOptions& o, int example) {
  CheckOutcome out;
  if (example == 41) {
    const int m = o.m;
    const auto [generic_fam, generic_pred] = line_family(line_family_generic(m, o.seed));
    out.report("foliation degree k = m", foliation_degree(generic_fam.base).k == m);
    out.report("multiplicity along W = m - 1",
               mult_along_w(generic_fam.base, line_family_w()).m_w == m - 1);
    const ExceptionalData exc = exceptional_order(generic_fam.base, line_family_w());
    out.report("exceptional level ell = m - 1", exc.ell == m - 1 && !exc.dicritical);
    out.report("not totally simple", !totally_simple(generic_fam.base, line_family_w()));
    const BasinReport generic_rep =
        classify_limits(generic_fam, line_family_schedule(m), line_family_w(), solve_options(o));
    out.report("generic perturbation: mu = m^2", limiting_milnor(generic_rep) == m * m);
    const auto [planted_fam, planted_pred] = line_family(line_family_planted_root(m));
    const BasinReport planted_rep =
        classify_limits(planted_fam, line_family_schedule(m), line_family_w(), solve_options(o));
    out.report("planted common root: mu = m^2 - m",
               limiting_milnor(planted_rep) == m * m - m && planted_pred.beta == 1);
    const Preset preset = resolve_preset("p3-line");
    const Rational nu = nu_value(preset.setup(m), preset.table);
    BalanceInput bal;
    bal.n = 3;
    bal.k = m;
    bal.nu = {nu};
    bal.sum_isolated = m + 1;
    const BalanceReport brep = global_balance(bal);
    out.report("balance: N = 0 and mu_W = m^3 + m^2",
               brep.n_embedded[0] == 0 &&
                   brep.mu_along_w[0] == static_cast<long>(m) * m * m + m * m);
  } else if (example == 42) {
    auto inst = cubic_curve_family(o.seed);
    const Rational t(1, 1000);
    out.report("total multiplicity 27 at t = 1/1000",
               multiplicity_dim(singular_ideal(inst.refined.at(t))) == 27);
    const BasinReport trans =
        classify_limits(inst.translation, TSchedule::standard(), inst.w, solve_options(o));
    long toW = 0, toA = 0;
    for (const auto& tr : trans.trajectories) {
      if (tr.classification == LimitClass::ToW) toW += tr.multiplicity;
      if (tr.classification == LimitClass::ToIsolated &&
          point_distance(tr.limit, inst.point_a) < 1e-3)
        toA += tr.multiplicity;
    }
    out.report("translation family: two to W, one to A", toW == 2 && toA == 1);
    // one extra level puts the isolated trajectories into the asymptotic
    // regime the limit extrapolation needs
    TSchedule deep = TSchedule::standard();
    deep.ts.push_back(Rational(1, 100000));
    const BasinReport refined = classify_limits(inst.refined, deep, inst.w, solve_options(o));
    long ref_toA = 0, z1_to_one = 0;
    for (const auto& tr : refined.trajectories) {
      if (tr.classification == LimitClass::ToIsolated && !tr.limit.empty() &&
          point_distance(tr.limit, inst.point_a) < 1e-3) {
        ref_toA += tr.multiplicity;
        continue;
      }
      if (tr.classification == LimitClass::ToIsolated && !tr.limit.empty() &&
          std::abs(tr.limit[0] - cplx(1, 0)) < 1e-2)
        z1_to_one += tr.multiplicity;
    }
    out.report("refined family: one trajectory to A", ref_toA == 1);
    out.report("refined family: seven escapers with z1 -> 1 (toward the curve's point "
               "at infinity)",
               z1_to_one == 7);
    DeformationFamily h3{chart_restrict(inst.refined.base, 2),
                         chart_restrict(inst.refined.direction, 2), "plane restriction"};
    out.report("restricted plane field: total multiplicity 13",
               multiplicity_dim(singular_ideal(h3.at(t))) == 13);
    const CompleteIntersection w2(2, {MultivariatePolynomial::variable(2, 0),
                                      MultivariatePolynomial::variable(2, 1)});
    const BasinReport h3rep = classify_limits(h3, TSchedule::standard(), w2, solve_options(o));
    bool hit = false;
    for (const auto& tr : h3rep.trajectories)
      if (!tr.limit.empty() && point_distance(tr.limit, inst.h3_limit) < 1e-4) hit = true;
    out.report("one plane trajectory converges to (16/7, 12/7)", hit);
  } else if (example == 43) {
    const auto [special_fam, pred] = rotation_family(rotation_family_special(o.kappa));
    out.report("totally simple within the validity region",
               totally_simple(special_fam.base, rotation_family_w(), pred.region_radius));
    const BasinReport rep = classify_limits(special_fam, rotation_family_schedule(pred),
                                            rotation_family_w(), solve_options(o));
    out.report("special direction: no singular points in the region",
               rep.trajectories.empty() && limiting_milnor(rep) == 0);
    const auto [generic_fam, gpred] = rotation_family(rotation_family_generic(o.kappa, o.seed));
    out.report("generic direction: total multiplicity >= 4k + 2",
               multiplicity_dim(singular_ideal(generic_fam.at(Rational(1, 100)))) >=
                   gpred.min_total_multiplicity);
  } else {
    throw ParseError("unknown example id (use 41, 42, or 43)", 0);
  }
  std::cout << (out.failures == 0 ? "all checks passed" : "checks FAILED") << "\n";
  return out.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"singlab: invariants and deformation experiments for polynomial vector "
               "fields singular along a positive-dimensional set"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CommonOptions o;
  int k_flag = 1, n_flag = 3;
  bool radial = false;
  std::string nus, ns;
  long sum_isolated = 0;
  int example = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", o.seed, "random seed recorded in every report");
    cmd->add_option("--out", o.out_path, "write the full JSON report here");
    cmd->add_option("--budget", o.budget, "Groebner reduction budget");
  };
  auto add_solver = [&](CLI::App* cmd) {
    cmd->add_option("--tol", o.residual_tol, "residual tolerance");
    cmd->add_option("--cluster-tol", o.cluster_tol, "eigenvalue clustering tolerance");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve the singular scheme of a field");
  solve->add_option("--field", o.field_path, "vector field manifest")->required();
  solve->add_option("--order", o.order, "monomial order: grevlex or lex");
  add_common(solve);
  add_solver(solve);

  CLI::App* deform = app.add_subcommand("deform", "run a deformation family");
  deform->add_option("--family", o.family,
                     "built-in family id: example41, example42, example43");
  deform->add_option("--field", o.field_path, "manifest with a W line");
  deform->add_option("--m", o.m, "family parameter m");
  deform->add_option("--kappa", o.kappa, "truncation order");
  deform->add_option("--beta", o.beta, "plant beta common roots (example41)");
  deform->add_flag("--special", o.special, "the tangent special direction (example43)");
  deform->add_option("--t-seq", o.t_seq, "comma separated schedule, e.g. 1/100,1/1000,1/10000");
  deform->add_option("--eps-w", o.eps_w, "W-proximity threshold");
  deform->add_option("--r-esc", o.r_esc, "escape threshold");
  deform->add_option("--region", o.region, "precompact region radius");
  add_common(deform);
  add_solver(deform);

  CLI::App* nu = app.add_subcommand("nu", "evaluate the nu invariant from a preset");
  nu->add_option("--preset", o.preset, "preset name or file")->required();
  nu->add_option("--m", o.m, "degree parameter m");
  add_common(nu);

  CLI::App* bounds = app.add_subcommand("bounds", "index bound at an isolated zero");
  bounds->add_option("--k", k_flag, "determinacy degree")->required();
  bounds->add_option("--n", n_flag, "ambient dimension")->required();
  bounds->add_flag("--radial", radial, "radial top jet");
  add_common(bounds);

  CLI::App* balance = app.add_subcommand("balance", "solve the global index identity");
  balance->add_option("--n", n_flag, "ambient projective dimension")->required();
  balance->add_option("--k", k_flag, "foliation degree")->required();
  balance->add_option("--nu", nus, "comma separated nu values")->required();
  balance->add_option("--N", ns, "known embedded counts; use ? for the unknown");
  balance->add_option("--sum-isolated", sum_isolated, "total isolated index sum")->required();
  add_common(balance);

  CLI::App* multw = app.add_subcommand("mult-w", "vanishing orders along W");
  multw->add_option("--field", o.field_path, "manifest with a W line")->required();
  add_common(multw);

  CLI::App* ell = app.add_subcommand("ell", "exceptional level along W");
  ell->add_option("--field", o.field_path, "manifest with a W line")->required();
  add_common(ell);

  CLI::App* tsimple = app.add_subcommand("totally-simple", "Jacobian minor test along W");
  tsimple->add_option("--field", o.field_path, "manifest with a W line")->required();
  tsimple->add_option("--region", o.region, "bounded region radius");
  add_common(tsimple);

  CLI::App* check = app.add_subcommand("check", "reproduce a built-in example end to end");
  check->add_option("id", example, "example id: 41, 42, or 43")->required();
  check->add_option("--m", o.m, "family parameter m");
  check->add_option("--kappa", o.kappa, "truncation order");
  add_common(check);
  add_solver(check);

  CLI11_PARSE(app, argc, argv);

  if (deform->parsed()) {
    o.eps_w_set = deform->count("--eps-w") > 0;
    o.r_esc_set = deform->count("--r-esc") > 0;
  }

  try {
    if (solve->parsed()) return cmd_solve(o);
    if (deform->parsed()) return cmd_deform(o);
    if (nu->parsed()) return cmd_nu(o);
    if (bounds->parsed()) return cmd_bounds(o, k_flag, n_flag, radial);
    if (balance->parsed()) return cmd_balance(o, n_flag, k_flag, nus, ns, sum_isolated);
    if (multw->parsed()) return cmd_mult_w(o);
    if (ell->parsed()) return cmd_ell(o);
    if (tsimple->parsed()) return cmd_totally_simple(o);
    if (check->parsed()) return cmd_check(o, example);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const MissingTableEntry& e) {
    std::cerr << "missing data: " << e.what() << "\n";
    return 2;
  } catch (const NotZeroDimensional& e) {
    std::cerr << "not zero-dimensional: " << e.what() << "\n";
    return 3;
  } catch (const ResourceLimitExceeded& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 4;
  } catch (const AmbiguousMatching& e) {
    std::cerr << "ambiguous matching: " << e.what() << "\n";
    return 5;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
