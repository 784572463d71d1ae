#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gfk/checks.hpp"
#include "gfk/config.hpp"
#include "gfk/deficit.hpp"
#include "gfk/ehrhard.hpp"
#include "gfk/perimeter.hpp"
#include "gfk/shapes.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  int grid_n = 256;
  double box = 6.0;
  double tol = 1e-8;
  bool audit = false;
  unsigned seed = 0;
  std::string out;
  std::string mask_path;
  std::string shape_spec;

  // CLI flags that the user actually passed win over the config file.
  gfk::Config effective(const CLI::App& app) const {
    gfk::Config cfg;
    if (!config_path.empty()) cfg = gfk::Config::from_file(config_path);
    auto fmt_num = [](double v) {
      std::ostringstream os;
      os.precision(17);
      os << v;
      return os.str();
    };
    auto keep = [&](const std::string& flag, const std::string& key, const std::string& val) {
      if (app.count(flag) > 0 || !cfg.has(key)) cfg.set(key, val);
    };
    keep("--grid-n", "grid_n", std::to_string(grid_n));
    keep("--box", "box", fmt_num(box));
    keep("--tol", "tol", fmt_num(tol));
    keep("--audit", "audit", audit ? "1" : "0");
    keep("--seed", "seed", std::to_string(seed));
    return cfg;
  }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_mask) {
  cmd->add_option("--config", o.config_path, "key=value config file");
  cmd->add_option("--grid-n", o.grid_n, "cells per axis");
  cmd->add_option("--box", o.box, "box halfwidth in standard deviations");
  cmd->add_option("--tol", o.tol, "eigensolver residual tolerance");
  cmd->add_flag("--audit", o.audit, "extra cross-checks (dense scans, coarse reruns)");
  cmd->add_option("--seed", o.seed, "seed recorded in outputs");
  cmd->add_option("--out", o.out, "output file");
  if (with_mask) {
    cmd->add_option("--mask", o.mask_path, "mask file (gfk-mask format)");
    cmd->add_option("--shape", o.shape_spec, "shape spec, e.g. wedge:theta=2.356");
  }
}

gfk::DomainMask load_input_mask(const CommonOpts& o, const gfk::Config& cfg) {
  if (!o.mask_path.empty()) return gfk::load_mask(o.mask_path);
  if (!o.shape_spec.empty()) {
    const auto grid = gfk::make_grid(2, cfg.integer("grid_n", 256), cfg.num("box", 6.0));
    return gfk::make_shape(o.shape_spec, grid);
  }
  throw CLI::ValidationError("--mask or --shape is required");
}

int run_profile(double rmin, double rmax, double step, const CommonOpts& o,
                const gfk::Config& cfg) {
  std::ostringstream os;
  for (const auto& line : cfg.echo()) os << "# " << line << "\n";
  os << "r,lambda1,lambda2,m,g\n";
  os.precision(12);
  for (double r = rmin; r <= rmax + 1e-12; r += step) {
    const double l1 = gfk::lambda_halfline(r);
    const double l2 = gfk::lambda2_halfline(r);
    const double m = gfk::phi(r);
    os << r << ',' << l1 << ',' << l2 << ',' << m << ',' << l1 << "\n";
  }
  if (o.out.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream f(o.out, std::ios::binary);
    f << os.str();
  }
  return 0;
}

int run_eig(const CommonOpts& o, const gfk::Config& cfg) {
  const auto mask = load_input_mask(o, cfg);
  const auto res = gfk::first_eigenpair(mask, cfg.num("tol", 1e-8));
  std::cout << "lambda " << res.lambda << "\nresidual " << res.residual << "\niterations "
            << res.iterations << "\ncomponents " << res.components << "\n";
  if (res.connectivity_warning) std::cout << "warning disconnected\n";
  if (!o.out.empty()) gfk::save_field(mask.grid, res.u, o.out);
  return 0;
}

int run_asym(const CommonOpts& o, const gfk::Config& cfg) {
  const auto mask = load_input_mask(o, cfg);
  gfk::AsymmetryOptions opt;
  opt.audit = cfg.flag("audit", false);
  const auto res = gfk::fraenkel_asymmetry(mask, opt);
  std::ostringstream os;
  for (const auto& line : cfg.echo()) os << "# " << line << "\n";
  os.precision(12);
  os << "A " << res.value << "\nr " << res.r << "\nomega";
  for (Eigen::Index i = 0; i < res.omega.size(); ++i) os << ' ' << res.omega[i];
  os << "\ncoarse " << res.coarse_value << "\n";
  if (res.audited) os << "dense_oracle " << res.audit_value << "\n";
  if (o.out.empty()) std::cout << os.str();
  else { std::ofstream f(o.out, std::ios::binary); f << os.str(); }
  return 0;
}

int run_symmetrize(const std::string& func_path, const std::string& dir, const CommonOpts& o,
                   const gfk::Config& cfg) {
  int axis = -1;
  Eigen::Vector2d hdir(1, 0);
  if (dir == "x" || dir == "0") axis = 0;
  else if (dir == "y" || dir == "1") axis = 1;
  else if (dir == "z" || dir == "2") axis = 2;
  else {
    std::stringstream ss(dir);
    std::string part;
    int i = 0;
    while (std::getline(ss, part, ',') && i < 2) hdir[i++] = std::stod(part);
  }
  if (o.out.empty()) throw CLI::ValidationError("--out is required");

  if (!func_path.empty()) {
    auto [grid, u] = gfk::load_field(func_path);
    const Eigen::ArrayXd sym = axis >= 0 ? gfk::symmetrize_function(grid, u, axis)
                                         : gfk::symmetrize_function_dir(grid, u, hdir);
    gfk::save_field(grid, sym, o.out);
    return 0;
  }
  const auto mask = load_input_mask(o, cfg);
  const gfk::DomainMask sym =
      axis >= 0 ? gfk::symmetrize_set(mask, axis) : gfk::symmetrize_set_dir(mask, hdir);
  gfk::save_mask(sym, o.out);
  return 0;
}

int run_sweep(const std::string& family, const std::string& params_csv, bool plot,
              const CommonOpts& o, const gfk::Config& cfg) {
  std::vector<double> params;
  if (params_csv.empty()) {
    params = gfk::default_family_params(family);
  } else {
    std::stringstream ss(params_csv);
    std::string part;
    while (std::getline(ss, part, ',')) params.push_back(std::stod(part));
  }
  gfk::SweepOptions opt;
  opt.grid_n = cfg.integer("grid_n", 256);
  opt.box = cfg.num("box", 6.0);
  opt.audit = cfg.flag("audit", false);
  opt.seed = static_cast<unsigned>(cfg.integer("seed", 0));
  opt.record.eig_tol = cfg.num("tol", 1e-8);

  const auto records = gfk::sweep(family, params, opt, gfk::default_profile_table());
  const std::string out = o.out.empty() ? family + "_sweep.csv" : o.out;
  auto echo = cfg.echo();
  echo.push_back("family=" + family);
  gfk::write_deficit_csv(records, out, echo);
  std::cout << "wrote " << out << " (" << records.size() << " rows)\n";

  if (plot) {
    try {
      const auto fit = gfk::exponent_fit(records);
      double c_star = 0.0;
      for (const auto& r : records)
        if (std::isfinite(r.implied_c)) c_star = std::max(c_star, r.implied_c);
      double mean_m = 0.0;
      int used = 0;
      for (const auto& r : records)
        if (!r.failed) { mean_m += r.m; ++used; }
      mean_m /= std::max(1, used);
      const double cm =
          gfk::main_constant(mean_m, std::max(c_star, 1e-6), 64, &gfk::default_profile_table()).c_m;
      const std::string svg = out.substr(0, out.find_last_of('.')) + ".svg";
      gfk::write_sweep_svg(records, fit, cm, svg);
      std::cout << "wrote " << svg << " (fit slope " << fit.slope << ")\n";
    } catch (const std::exception& e) {
      std::cout << "plot skipped: " << e.what() << "\n";
    }
  }
  return 0;
}

int run_check(bool quick, const CommonOpts& o, const gfk::Config& cfg) {
  using namespace gfk::checks;
  // The corpus-level gates are calibrated at n=256 with audit-based error
  // bars, so --quick skips them instead of running them out of budget.
  const int corpus_n = cfg.integer("grid_n", 256);
  const int trials = quick ? 20 : 100;

  std::vector<CheckResult> results;
  std::vector<std::string> skipped;
  auto log = [](const std::string& line) { std::cout << "  " << line << "\n"; };

  results.push_back(analytic_anchors());
  results.push_back(profile_regularity(-3.0, 3.0, quick ? 0.25 : 0.05));
  results.push_back(ehrhard_suite(quick ? 64 : 128, trials));
  results.push_back(asymmetry_suite(quick ? 128 : 256, 384));
  results.push_back(transfer_lemma_suite(quick ? 64 : 128, trials));
  results.push_back(determinism_check(64));

  if (quick) {
    skipped = {"nd-consistency", "faber-krahn-corpus", "isoperimetric-corpus",
               "main-theorem-consistency"};
  } else {
    results.push_back(nd_consistency(256));
    std::cout << "measuring corpus at n=" << corpus_n << "...\n";
    const auto corpus =
        measure_corpus(corpus_n, cfg.num("box", 6.0), true, gfk::default_profile_table(), log);
    results.push_back(faber_krahn_corpus(corpus));
    results.push_back(isoperimetric_corpus(corpus));
    auto mt = main_theorem_consistency(corpus, gfk::default_profile_table(), corpus_n, true);
    results.push_back(mt.result);
  }

  bool all = true;
  std::ostringstream os;
  for (const auto& r : results) {
    os << (r.pass ? "PASS" : "FAIL") << "  " << r.name << ": " << r.detail << "\n";
    all = all && r.pass;
  }
  for (const auto& name : skipped) os << "SKIP  " << name << " (run without --quick)\n";
  std::cout << os.str();
  if (!o.out.empty()) { std::ofstream f(o.out, std::ios::binary); f << os.str(); }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian Faber-Krahn toolkit"};
  app.require_subcommand(1);

  CommonOpts o;

  auto* profile = app.add_subcommand("profile", "tabulate the halfspace eigenvalue curve");
  double rmin = -3.0, rmax = 3.0, step = 0.05;
  profile->add_option("--rmin", rmin);
  profile->add_option("--rmax", rmax);
  profile->add_option("--step", step);
  add_common(profile, o, false);

  auto* eig = app.add_subcommand("eig", "first Dirichlet eigenpair on a mask");
  add_common(eig, o, true);

  auto* asym = app.add_subcommand("asym", "Gaussian Fraenkel asymmetry of a mask");
  add_common(asym, o, true);

  auto* symmetrize = app.add_subcommand("symmetrize", "Ehrhard symmetrization");
  std::string func_path, dir = "0";
  symmetrize->add_option("--func", func_path, "field file (gfk-field format)");
  symmetrize->add_option("--dir", dir, "axis (x/y/0/1) or 2-D vector vx,vy");
  add_common(symmetrize, o, true);

  auto* sweep_cmd = app.add_subcommand("deficit-sweep", "deficit records over a domain family");
  std::string family = "wedge", params_csv;
  bool plot = false;
  sweep_cmd->add_option("--family", family, "wedge|tilted-cap|bump|notch|two-slabs|shifted-ball-complement");
  sweep_cmd->add_option("--params", params_csv, "comma-separated parameter path");
  sweep_cmd->add_flag("--plot", plot, "also write a log-log SVG");
  add_common(sweep_cmd, o, false);

  auto* check = app.add_subcommand("check", "run the invariant suites");
  bool quick = false;
  check->add_flag("--quick", quick, "reduced resolutions and trial counts");
  add_common(check, o, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (profile->parsed()) return run_profile(rmin, rmax, step, o, o.effective(*profile));
    if (eig->parsed()) return run_eig(o, o.effective(*eig));
    if (asym->parsed()) return run_asym(o, o.effective(*asym));
    if (symmetrize->parsed()) return run_symmetrize(func_path, dir, o, o.effective(*symmetrize));
    if (sweep_cmd->parsed()) return run_sweep(family, params_csv, plot, o, o.effective(*sweep_cmd));
    if (check->parsed()) return run_check(quick, o, o.effective(*check));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
