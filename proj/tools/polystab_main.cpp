#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "polystab/json_io.hpp"

namespace ps = polystab;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitIdentity = 3;
constexpr int kExitTolerance = 4;

ps::Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  ps::Json j;
  in >> j;
  return j;
}

void emit(const ps::Json& j, const std::string& out_dir, const std::string& name) {
  std::string text = j.dump(2) + "\n";
  if (out_dir.empty()) {
    std::cout << text;
  } else {
    fs::create_directories(out_dir);
    std::ofstream f(fs::path(out_dir) / name);
    f << text;
  }
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

std::vector<ps::Rational> parse_rational_list(const std::string& s) {
  std::vector<ps::Rational> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.find('.') != std::string::npos) {
      // decimal literal -> exact rational
      auto dotpos = tok.find('.');
      std::string ipart = tok.substr(0, dotpos), fpart = tok.substr(dotpos + 1);
      ps::Rational r = ps::parse_rational(ipart.empty() ? "0" : ipart);
      ps::Rational scale(1);
      for (size_t i = 0; i < fpart.size(); ++i) scale *= 10;
      r += ps::parse_rational(fpart) / scale;
      out.push_back(r);
    } else {
      out.push_back(ps::parse_rational(tok));
    }
  }
  return out;
}

// Deterministic PL test functions with integer slopes on the standard
// simplex, used by the identity battery.
ps::PLConvexFunction random_pl(const ps::LabeledPolytope& delta, std::mt19937_64& rng,
                               int max_pieces) {
  const int ell = delta.dim();
  auto ri = [&rng](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<unsigned long long>(hi - lo + 1));
  };
  int pieces = ri(1, max_pieces);
  std::vector<ps::AffineFunction> fs;
  for (int k = 0; k < pieces; ++k) {
    ps::RatVec lin(ell);
    for (int i = 0; i < ell; ++i) lin[i] = ps::Rational(ri(-2, 2));
    fs.emplace_back(std::move(lin), ps::Rational(ri(-2, 2), ri(1, 3)));
  }
  return make_pl(delta, std::move(fs));
}

ps::Polynomial random_poly(int dim, std::mt19937_64& rng, int max_degree) {
  auto ri = [&rng](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<unsigned long long>(hi - lo + 1));
  };
  ps::Polynomial q(dim);
  int terms = ri(1, 4);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(dim, 0);
    int deg = ri(0, max_degree);
    for (int d = 0; d < deg; ++d) e[ri(0, dim - 1)] += 1;
    q.add_term(e, ps::Rational(ri(-3, 3), ri(1, 2)));
  }
  // keep v positive on the simplex by adding a dominating constant
  ps::Rational shift(1);
  ps::LabeledPolytope simplex = ps::standard_simplex(dim);
  for (const auto& v : simplex.vertices())
    shift = std::max(shift, ps::Rational(1 - q.eval(v)));
  q.add_term(std::vector<int>(dim, 0), shift + 1);
  return q;
}

int cmd_extremal(const std::string& input, const std::string& out_dir) {
  ps::BundleSpec spec = ps::bundle_spec_from_json(load_json(input));
  ps::BundleProblem problem = ps::bundle_problem(spec);
  ps::Json out{
      {"l_ext", ps::to_json(problem.l_ext)},
      {"density", ps::to_json(problem.weights.density)},
      {"pbar", ps::to_json(problem.weights.pbar)},
      {"j_lower_factor", ps::to_json(problem.j_lower_factor)},
      {"fiber_df_multiplier", ps::to_json(problem.fiber_df_multiplier)},
      {"bundle_df_multiplier", ps::to_json(problem.bundle_df_multiplier)},
  };
  emit(out, out_dir, "extremal.json");
  return kExitOk;
}

int cmd_df(const std::string& input, const std::string& pl_path,
           const std::string& out_dir) {
  ps::BundleSpec spec = ps::bundle_spec_from_json(load_json(input));
  ps::BundleProblem problem = ps::bundle_problem(spec);
  ps::PLConvexFunction f =
      make_pl(problem.delta, ps::pl_pieces_from_json(load_json(pl_path)));
  ps::Rational F = problem.futaki_of(f);
  ps::Json out{
      {"F", ps::to_json(F)},
      {"DF", ps::to_json(problem.df_of(f))},
      {"fiber_DF",
       ps::to_json(ps::FunctionalValue{
           problem.fiber_df_multiplier.rational_part * F,
           problem.fiber_df_multiplier.two_pi_power})},
  };
  emit(out, out_dir, "df.json");
  return kExitOk;
}

int cmd_jnorm(const std::string& input, const std::string& pl_path,
              const std::string& density_kind, const std::string& out_dir) {
  ps::BundleSpec spec = ps::bundle_spec_from_json(load_json(input));
  ps::BundleProblem problem = ps::bundle_problem(spec);
  ps::PLConvexFunction f =
      make_pl(problem.delta, ps::pl_pieces_from_json(load_json(pl_path)));
  ps::Polynomial v = density_kind == "one"
                         ? ps::Polynomial::constant(spec.ell(), ps::Rational(1))
                         : density_kind == "p" ? problem.weights.p
                                               : problem.weights.density;
  ps::Rational j = ps::j_norm(problem.delta, v, f);
  ps::Rational vol = ps::integrate_polynomial(problem.delta, v);
  ps::Json out{
      {"density", density_kind},
      {"j_norm", ps::to_json(j)},
      {"volume_used", ps::to_json(vol)},
      {"J_NA", ps::to_json(ps::na_convert(j, ps::NaKind::Compatible,
                                          ps::NaQuantity::JNorm, spec.n(), vol,
                                          ps::FiberModel::build(
                                              ps::make_blocks(spec.blocks))
                                              .vol_delta_b()))},
  };
  emit(out, out_dir, "jnorm.json");
  return kExitOk;
}

int cmd_delzant(const std::string& input, const std::string& out_dir) {
  ps::Json j = load_json(input);
  ps::Json out;
  if (j.contains("pl")) {
    ps::LabeledPolytope base = ps::polytope_from_json(j.at("polytope"));
    ps::PLConvexFunction f = make_pl(base, ps::pl_pieces_from_json(j.at("pl")));
    std::optional<ps::Rational> r;
    if (j.contains("R")) r = ps::rational_from_json(j.at("R"));
    ps::TestConfigPolytope tc = ps::donaldson_polytope(base, f, r);
    out = ps::to_json(tc.delzant);
    out["R"] = ps::to_json(tc.R);
    out["vertices"] = static_cast<int>(tc.polytope.vertices().size());
    out["classification"] = tc.classification == ps::TcClass::DPLDom ? "DPL_dom"
                            : tc.classification == ps::TcClass::DPL  ? "DPL"
                                                                     : "RPL";
  } else {
    const ps::Json& pj = j.contains("polytope") ? j.at("polytope") : j;
    ps::LabeledPolytope p = ps::polytope_from_json(pj);
    out = ps::to_json(ps::is_delzant(p));
    out["vertices"] = static_cast<int>(p.vertices().size());
  }
  emit(out, out_dir, "delzant.json");
  return kExitOk;
}

int cmd_identities(const std::string& input, unsigned long long seed, int count,
                   const std::string& out_dir) {
  ps::BundleSpec spec = ps::bundle_spec_from_json(load_json(input));
  ps::FiberModel model = ps::FiberModel::build(ps::make_blocks(spec.blocks));
  std::mt19937_64 rng(seed);

  ps::Json reports = ps::Json::array();
  bool all_zero = true;
  for (int k = 0; k < count; ++k) {
    ps::PLConvexFunction f = random_pl(model.delta(), rng, 3);
    ps::Polynomial v = random_poly(model.ell(), rng, 2);
    ps::Polynomial w = random_poly(model.ell(), rng, 2);
    ps::IdentityReport rep =
        ps::verify_identities(model, f, v, ps::WeightExpr::from_polynomial(w));
    all_zero = all_zero && rep.all_zero();
    reports.push_back(ps::to_json(rep));
  }
  ps::Json out{{"blocks", ps::to_json(spec)["blocks"]},
               {"instances", count},
               {"all_zero", all_zero},
               {"reports", reports}};
  emit(out, out_dir, "identities.json");
  return all_zero ? kExitOk : kExitIdentity;
}

int cmd_mabuchi(const std::string& input, const std::string& phi_path, double tol,
                unsigned long long seed, const std::string& out_dir) {
  ps::BundleSpec spec = ps::bundle_spec_from_json(load_json(input));
  ps::BundleProblem problem = ps::bundle_problem(spec);
  ps::FiberModel model = ps::FiberModel::build(ps::make_blocks(spec.blocks));
  const int ell = spec.ell();

  ps::Polynomial phi(ell);
  if (!phi_path.empty()) {
    phi = ps::polynomial_from_json(load_json(phi_path));
  } else {
    // (x_1 L_0)^2 / 10: small, convexity-preserving default bump.
    ps::Polynomial x1 = ps::Polynomial::coordinate(ell, 0);
    ps::Polynomial l0 = ps::Polynomial::from_affine(
        ps::AffineFunction(ps::RatVec(ell, ps::Rational(-1)), ps::Rational(1)));
    phi = (x1 * l0 * x1 * l0).scaled(ps::Rational(1, 10));
  }

  ps::SymplecticPotential u0 = ps::SymplecticPotential::guillemin(problem.delta);
  ps::SymplecticPotential u1{problem.delta, phi};
  ps::SymplecticPotential u2{problem.delta, phi.scaled(ps::Rational(1, 2))};

  ps::MabuchiValue energy =
      ps::mabuchi_energy(u1, problem.weights.density, problem.weights.wbar, tol);

  std::vector<ps::SymplecticPotential> fibers;
  for (const auto& b : model.blocks())
    if (b.rank >= 2)
      fibers.push_back(
          ps::SymplecticPotential::guillemin(ps::standard_simplex(b.rank - 1)));

  ps::Json out{{"energy", ps::to_json(energy)}};
  bool tolerance_ok = energy.converged;
  if (!fibers.empty()) {
    int n = spec.n();
    ps::Polynomial w_fiber =
        ps::Polynomial::constant(ell, ps::Rational(2 * (n + 1) * n));
    ps::LiftCheckReport lift = ps::compatible_lift_check(
        model, {u0, u1, u2}, fibers, ps::Polynomial::constant(ell, ps::Rational(1)),
        w_fiber, 20, 1e-3, tol, seed);
    out["lift_check"] = ps::to_json(lift);
    tolerance_ok = tolerance_ok && lift.max_det_rel_err < 1e-4 &&
                   lift.max_constant_rel_dev < 1e-5;
  }
  emit(out, out_dir, "mabuchi.json");
  return tolerance_ok ? kExitOk : kExitTolerance;
}

int cmd_stability(const std::string& input, const std::vector<int>& resolutions,
                  const std::string& norm, const std::string& out_dir) {
  ps::BundleSpec spec = ps::bundle_spec_from_json(load_json(input));
  ps::BundleProblem problem = ps::bundle_problem(spec);
  ps::StabilityNorm sn =
      norm == "j" ? ps::StabilityNorm::J : ps::StabilityNorm::L1Star;
  ps::StabilityReport report = ps::stability_search(
      problem.delta, problem.weights.density, problem.weights.wbar, resolutions, sn);
  ps::Json out = ps::to_json(report);
  emit(out, out_dir, "stability.json");
  if (report.destabilizer && !out_dir.empty())
    emit(ps::to_json(*report.destabilizer), out_dir, "destabilizer.json");
  return kExitOk;
}

int cmd_sweep(const std::string& input, const std::string& c_list, int N,
              const std::string& norm, const std::string& format, bool svg,
              const std::string& out_dir) {
  ps::BundleSpec spec = ps::bundle_spec_from_json(load_json(input));
  std::vector<ps::Rational> cs = parse_rational_list(c_list);
  ps::StabilityNorm sn =
      norm == "j" ? ps::StabilityNorm::J : ps::StabilityNorm::L1Star;
  auto rows = ps::sweep(spec, cs, N, sn);

  // Dump certificates for destabilized points when writing to a directory.
  if (!out_dir.empty()) {
    ps::ConvexGrid grid = ps::make_convex_grid(ps::standard_simplex(spec.ell()), N);
    for (auto& row : rows) {
      if (row.verdict != "destabilized" || row.nodal.empty()) continue;
      ps::PLConvexFunction f = ps::extract_destabilizer(grid, row.nodal);
      std::string name = "destabilizer_c_" + numerator(row.c).str() + "_" +
                         denominator(row.c).str() + ".json";
      emit(ps::to_json(f), out_dir, name);
      row.destabilizer_ref = name;
    }
  }

  if (format == "csv") {
    std::string csv = ps::sweep_csv(rows);
    if (out_dir.empty()) {
      std::cout << csv;
    } else {
      fs::create_directories(out_dir);
      std::ofstream f(fs::path(out_dir) / "sweep.csv");
      f << csv;
    }
  } else {
    ps::Json jrows = ps::Json::array();
    for (const auto& r : rows) {
      ps::Json row{{"c", ps::to_json(r.c)},
                   {"N", r.N},
                   {"lambda", r.lambda ? ps::to_json(*r.lambda) : ps::Json(nullptr)},
                   {"verdict", r.verdict}};
      if (!r.error.empty()) row["error"] = r.error;
      jrows.push_back(row);
    }
    // trend reporting: monotonicity of lambda along c and sign changes
    ps::Json changes = ps::Json::array();
    bool nonincreasing = true, nondecreasing = true;
    for (size_t i = 1; i < rows.size(); ++i) {
      if (!(rows[i - 1].lambda && rows[i].lambda)) continue;
      if (*rows[i].lambda > *rows[i - 1].lambda) nonincreasing = false;
      if (*rows[i].lambda < *rows[i - 1].lambda) nondecreasing = false;
      if ((*rows[i - 1].lambda > 0) != (*rows[i].lambda > 0))
        changes.push_back(ps::Json{{"between", ps::format_rational(rows[i - 1].c)},
                                   {"and", ps::format_rational(rows[i].c)}});
    }
    std::string trend = nonincreasing && nondecreasing ? "constant"
                        : nonincreasing               ? "nonincreasing"
                        : nondecreasing               ? "nondecreasing"
                                                      : "mixed";
    emit(ps::Json{{"rows", jrows}, {"trend", trend}, {"sign_changes", changes}},
         out_dir, "sweep.json");
  }
  if (svg) {
    std::string chart = ps::sweep_svg(rows);
    if (out_dir.empty()) {
      std::cout << chart;
    } else {
      fs::create_directories(out_dir);
      std::ofstream f(fs::path(out_dir) / "sweep.svg");
      f << chart;
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted K-stability toolkit for polytopes of projectivized bundles"};
  app.require_subcommand(1);

  std::string input, out_dir, pl_path, phi_path;
  std::string norm = "l1", format = "json", density_kind = "ppbar", n_list = "8";
  std::string c_list = "2";
  double tol = 1e-6;
  unsigned long long seed = 1;
  int count = 25, sweep_n = 8;
  bool svg = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--input", input, "input JSON path")->required();
    cmd->add_option("--out", out_dir, "output directory (default: stdout)");
  };

  auto* extremal = app.add_subcommand("extremal", "extremal affine function of a bundle spec");
  add_common(extremal);

  auto* df = app.add_subcommand("df", "Donaldson-Futaki invariant of a PL test function");
  add_common(df);
  df->add_option("--pl", pl_path, "PL function JSON")->required();

  auto* jnorm = app.add_subcommand("jnorm", "weighted J-norm of a PL test function");
  add_common(jnorm);
  jnorm->add_option("--pl", pl_path, "PL function JSON")->required();
  jnorm->add_option("--density", density_kind, "one | p | ppbar")
      ->check(CLI::IsMember({"one", "p", "ppbar"}));

  auto* delzant = app.add_subcommand("delzant", "Delzant verdict for a polytope or (polytope, f, R)");
  add_common(delzant);

  auto* identities = app.add_subcommand("identities", "exact fibration identity battery");
  add_common(identities);
  identities->add_option("--seed", seed, "battery RNG seed");
  identities->add_option("--count", count, "number of random instances");

  auto* mabuchi = app.add_subcommand("mabuchi", "Mabuchi energy and transfer residuals");
  add_common(mabuchi);
  mabuchi->add_option("--phi", phi_path, "polynomial perturbation JSON");
  mabuchi->add_option("--tol", tol, "quadrature relative tolerance");
  mabuchi->add_option("--seed", seed, "sample-point RNG seed");

  auto* stability = app.add_subcommand("stability", "lambda estimates over grid PL families");
  add_common(stability);
  stability->add_option("--N", n_list, "comma-separated resolutions");
  stability->add_option("--norm", norm, "l1 | j")->check(CLI::IsMember({"l1", "j"}));

  auto* sweepc = app.add_subcommand("sweep", "lambda estimates over a Kaehler parameter range");
  add_common(sweepc);
  sweepc->add_option("--c", c_list, "comma-separated c values");
  sweepc->add_option("--N", sweep_n, "grid resolution");
  sweepc->add_option("--norm", norm, "l1 | j")->check(CLI::IsMember({"l1", "j"}));
  sweepc->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  sweepc->add_flag("--svg", svg, "also emit a line chart");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (extremal->parsed()) return cmd_extremal(input, out_dir);
    if (df->parsed()) return cmd_df(input, pl_path, out_dir);
    if (jnorm->parsed()) return cmd_jnorm(input, pl_path, density_kind, out_dir);
    if (delzant->parsed()) return cmd_delzant(input, out_dir);
    if (identities->parsed()) return cmd_identities(input, seed, count, out_dir);
    if (mabuchi->parsed()) return cmd_mabuchi(input, phi_path, tol, seed, out_dir);
    if (stability->parsed())
      return cmd_stability(input, parse_int_list(n_list), norm, out_dir);
    if (sweepc->parsed())
      return cmd_sweep(input, c_list, sweep_n, norm, format, svg, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
