#include "gfk/deficit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gfk/shapes.hpp"

namespace gfk {

double f_weight(double m) {
  if (!(m > 0.0 && m < 1.0)) throw std::domain_error("f_weight: m outside (0,1)");
  const double r = phi_inv(m);
  return std::exp(0.5 * r * r) / (1.0 + r * r);
}

Prop31Result prop31_bound(const GridPtr& grid, const EigenResult& res, int n_levels,
                          const AsymmetryOptions& asym_opt) {
  const LevelProfile lp = level_profile(grid, res, n_levels);
  const double dt = n_levels > 1 ? lp.t[1] - lp.t[0] : 0.0;
  // Levels whose measure is below ~32 cells cannot support a meaningful
  // asymmetry or slope estimate (the continuum integrand stays finite there
  // only through cancellations far below grid resolution). Dropping them
  // weakens the lower bound, never falsifies it.
  const double mu_min = 32.0 * grid->cell_weights().maxCoeff();
  Prop31Result out;
  for (int j = 0; j < n_levels; ++j) {
    if (lp.floored[j] || !(lp.mu[j] > mu_min) || !(lp.mu[j] < 1.0 - 1e-12)) {
      ++out.levels_skipped;
      continue;
    }
    const DomainMask level_set = superlevel_mask(grid, res.u, lp.t[j]);
    const double a = fraenkel_asymmetry(level_set, asym_opt).value;
    // f(mu) I(mu) = 1 / (1 + phi_inv(mu)^2), evaluated without the large
    // exponentials cancelling numerically
    const double rt = phi_inv(lp.mu[j]);
    const double fi = 1.0 / (1.0 + rt * rt);
    out.bound += fi * a * a / lp.minus_mu_prime[j] * dt;
    ++out.levels_used;
  }
  return out;
}

double conclusion_constant(double m, double r, double beta, double c) {
  const double c_beta = (beta / (beta + 1.0)) * (beta / (beta + 1.0));
  return m * c_beta / (32.0 * c * (1.0 + r * r));
}

MainConstant main_constant(double m, double c_assumed, int n_samples,
                           const ProfileTable* table) {
  if (!(m > 0.0 && m < 1.0)) throw std::domain_error("main_constant: m outside (0,1)");
  if (!(c_assumed > 0.0)) throw std::invalid_argument("main_constant: c must be positive");

  MainConstant out;
  out.m = m;
  out.r = phi_inv(m);
  out.c_assumed = c_assumed;
  out.lipschitz_L = local_lipschitz_L(0.5 * m, m, n_samples).L;
  const double g_m = table ? table->g(m) : g_profile(m);
  out.beta = out.lipschitz_L * m / (4.0 * g_m);
  out.c_beta = (out.beta / (out.beta + 1.0)) * (out.beta / (out.beta + 1.0));
  out.conclusion_constant = conclusion_constant(m, out.r, out.beta, c_assumed);
  out.small_deficit_branch = out.beta / (8.0 * (1.0 + out.beta)) * g_m;
  out.c_m = std::min(out.conclusion_constant, out.small_deficit_branch);
  return out;
}

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = {
      "wedge", "tilted-cap", "bump", "notch", "two-slabs", "shifted-ball-complement"};
  return names;
}

std::vector<double> default_family_params(const std::string& name) {
  if (name == "wedge")
    return {M_PI, 7 * M_PI / 8, 3 * M_PI / 4, 5 * M_PI / 8, M_PI / 2};
  if (name == "tilted-cap")
    return {0.0, M_PI / 16, M_PI / 8, 3 * M_PI / 16, M_PI / 4};
  if (name == "bump") return {0.0, 0.5, 1.0, 1.5, 2.0};
  if (name == "notch") return {0.0, 0.3, 0.6, 0.9, 1.2};
  if (name == "two-slabs") return {0.0, 0.2, 0.4, 0.6, 0.8};
  if (name == "shifted-ball-complement") return {0.0, 0.4, 0.7, 1.0, 1.3};
  throw std::invalid_argument("unknown family '" + name + "'");
}

std::vector<FamilyMember> domain_family(const std::string& name,
                                        const std::vector<double>& params, const GridPtr& grid) {
  std::vector<FamilyMember> members;
  members.reserve(params.size());
  for (const double p : params) {
    FamilyMember fm;
    fm.param = p;
    if (name == "wedge") {
      fm.mask = make_wedge_mask(grid, p);
      fm.is_halfspace = std::abs(p - M_PI) < 1e-12;
    } else if (name == "tilted-cap") {
      fm.mask = make_halfspace_mask(grid, direction2d(p, grid->dim()), 0.3);
      fm.is_halfspace = true;
    } else if (name == "bump") {
      fm.mask = make_bump_mask(grid, 0.0, p, 0.75);
      fm.is_halfspace = p == 0.0;
    } else if (name == "notch") {
      fm.mask = make_notch_mask(grid, 0.0, 1.5, p);
      fm.is_halfspace = p == 0.0;
    } else if (name == "two-slabs") {
      fm.mask = make_two_slabs_mask(grid, -0.3, 0.7, p);
      fm.is_halfspace = p == 0.0;
    } else if (name == "shifted-ball-complement") {
      fm.mask = make_ball_complement_mask(
          grid, 0.0, p, (Eigen::VectorXd(grid->dim()) << -1.2, 0.8).finished());
      fm.is_halfspace = p == 0.0;
    } else {
      throw std::invalid_argument("unknown family '" + name + "'");
    }
    const double mass = gauss_measure(fm.mask);
    if (!(mass > 0.05 && mass < 0.95))
      throw std::invalid_argument("family member measure outside [0.05, 0.95]");
    members.push_back(std::move(fm));
  }
  return members;
}

DeficitRecord deficit(const DomainMask& mask, const ProfileTable& table,
                      const DeficitOptions& opt) {
  DeficitRecord rec;
  rec.m = gauss_measure(mask);

  const EigenResult eig = first_eigenpair(mask, opt.eig_tol);
  rec.lambda = eig.lambda;
  rec.g = table.g(rec.m);
  rec.deficit = rec.lambda - rec.g;
  rec.eps_disc = 1e-3 * rec.lambda;
  if (eig.connectivity_warning) rec.warnings = "disconnected";

  const AsymmetryResult asym = fraenkel_asymmetry(mask, opt.asym);
  rec.asym = asym.value;

  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (rec.asym > opt.ratio_threshold) {
    rec.d_a3 = rec.deficit / (rec.asym * rec.asym * rec.asym);
    rec.d_a2 = rec.deficit / (rec.asym * rec.asym);
  } else {
    rec.d_a3 = nan;
    rec.d_a2 = nan;
  }

  rec.prop31 = prop31_bound(mask.grid, eig, opt.n_levels, opt.asym).bound;
  if (rec.deficit > rec.eps_disc && rec.prop31 > 0.0) {
    rec.implied_c = rec.prop31 / (2.0 * rec.deficit);
  } else {
    rec.implied_c = nan;
    if (!(rec.deficit > rec.eps_disc)) {
      if (!rec.warnings.empty()) rec.warnings += ";";
      rec.warnings += "deficit-at-noise";
    }
  }
  return rec;
}

std::vector<DeficitRecord> sweep(const std::string& family, const std::vector<double>& params,
                                 const SweepOptions& opt, const ProfileTable& table) {
  const auto grid = make_grid(2, opt.grid_n, opt.box);
  const auto members = domain_family(family, params, grid);

  GridPtr coarse_grid;
  std::vector<FamilyMember> coarse_members;
  if (opt.audit) {
    coarse_grid = make_grid(2, opt.grid_n / 2, opt.box);
    coarse_members = domain_family(family, params, coarse_grid);
  }

  std::vector<DeficitRecord> records;
  records.reserve(members.size());
  for (size_t i = 0; i < members.size(); ++i) {
    DeficitRecord rec;
    try {
      rec = deficit(members[i].mask, table, opt.record);
      if (opt.audit) {
        const EigenResult coarse = first_eigenpair(coarse_members[i].mask, opt.record.eig_tol);
        rec.eps_disc = std::max(opt.record.eig_tol, std::abs(rec.lambda - coarse.lambda));
      }
    } catch (const std::exception& e) {
      rec.failed = true;
      std::string msg = e.what();
      for (char& ch : msg)
        if (ch == ',' || ch == '\n') ch = ' ';
      rec.warnings = "failed:" + msg;
    }
    rec.family = family;
    rec.param = members[i].param;
    rec.is_halfspace = members[i].is_halfspace;
    records.push_back(std::move(rec));
  }

  // rows follow the parameter path direction
  const bool ascending = params.empty() || params.front() <= params.back();
  std::stable_sort(records.begin(), records.end(),
                   [&](const DeficitRecord& a, const DeficitRecord& b) {
                     return ascending ? a.param < b.param : a.param > b.param;
                   });
  return records;
}

namespace {

std::string shortest(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string deficit_csv(const std::vector<DeficitRecord>& records,
                        const std::vector<std::string>& config_echo) {
  std::ostringstream os;
  for (const auto& line : config_echo) os << "# " << line << "\n";
  os << "family,param,m,lambda,g,D,A,D_A3,D_A2,prop31,implied_c,warnings\n";
  for (const auto& r : records) {
    if (r.failed) {
      os << r.family << ',' << shortest(r.param) << ",,,,,,,,,," << r.warnings << "\n";
      continue;
    }
    os << r.family << ',' << shortest(r.param) << ',' << shortest(r.m) << ','
       << shortest(r.lambda) << ',' << shortest(r.g) << ',' << shortest(r.deficit) << ','
       << shortest(r.asym) << ',' << shortest(r.d_a3) << ',' << shortest(r.d_a2) << ','
       << shortest(r.prop31) << ',' << shortest(r.implied_c) << ',' << r.warnings << "\n";
  }
  return os.str();
}

void write_deficit_csv(const std::vector<DeficitRecord>& records, const std::string& path,
                       const std::vector<std::string>& config_echo) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_deficit_csv: cannot open " + path);
  os << deficit_csv(records, config_echo);
}

ExponentFit exponent_fit(const std::vector<DeficitRecord>& records) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : records) {
    if (r.failed || !(r.asym > 1e-3) || !(r.deficit > r.eps_disc)) continue;
    pts.emplace_back(std::log(r.asym), std::log(r.deficit));
  }
  if (pts.size() < 4)
    throw std::invalid_argument("exponent_fit: need at least 4 usable records");

  ExponentFit fit;
  fit.n_used = static_cast<int>(pts.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = double(pts.size());
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double ybar = sy / n;
  for (const auto& [x, y] : pts) {
    const double pred = fit.slope * x + fit.intercept;
    ss_res += (y - pred) * (y - pred);
    ss_tot += (y - ybar) * (y - ybar);
  }
  fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

void write_sweep_svg(const std::vector<DeficitRecord>& records, const ExponentFit& fit,
                     double guarantee_constant, const std::string& path) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : records)
    if (!r.failed && r.asym > 1e-3 && r.deficit > 0.0)
      pts.emplace_back(std::log10(r.asym), std::log10(r.deficit));
  if (pts.empty()) throw std::invalid_argument("write_sweep_svg: no plottable records");

  double xmin = pts[0].first, xmax = xmin, ymin = pts[0].second, ymax = ymin;
  for (const auto& [x, y] : pts) {
    xmin = std::min(xmin, x); xmax = std::max(xmax, x);
    ymin = std::min(ymin, y); ymax = std::max(ymax, y);
  }
  // include the guarantee curve's range at the data's asymmetries
  for (const auto& [x, y] : pts) {
    const double gy = std::log10(guarantee_constant) + 3.0 * x;
    ymin = std::min(ymin, gy); ymax = std::max(ymax, gy);
  }
  xmin -= 0.2; xmax += 0.2; ymin -= 0.3; ymax += 0.3;

  const double W = 640, H = 480, L = 70, B = 50;
  auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - 20); };
  auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - B - 20); };

  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_sweep_svg: cannot open " + path);
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
  os << "<rect width='100%' height='100%' fill='white'/>\n";
  os << "<line x1='" << L << "' y1='" << H - B << "' x2='" << W - 20 << "' y2='" << H - B
     << "' stroke='black'/>\n";
  os << "<line x1='" << L << "' y1='" << H - B << "' x2='" << L << "' y2='20' stroke='black'/>\n";
  os << "<text x='" << W / 2 << "' y='" << H - 12 << "' font-size='13'>log10 A</text>\n";
  os << "<text x='14' y='" << H / 2 << "' font-size='13' transform='rotate(-90 14 " << H / 2
     << ")'>log10 D</text>\n";
  for (int d = int(std::ceil(xmin)); d <= int(std::floor(xmax)); ++d)
    os << "<text x='" << px(d) - 8 << "' y='" << H - B + 16 << "' font-size='11'>" << d
       << "</text>\n";
  for (int d = int(std::ceil(ymin)); d <= int(std::floor(ymax)); ++d)
    os << "<text x='" << L - 26 << "' y='" << py(d) + 4 << "' font-size='11'>" << d
       << "</text>\n";

  auto line_at = [&](double slope, double icept_log10, const char* color) {
    const double y1 = icept_log10 + slope * xmin, y2 = icept_log10 + slope * xmax;
    os << "<line x1='" << px(xmin) << "' y1='" << py(y1) << "' x2='" << px(xmax) << "' y2='"
       << py(y2) << "' stroke='" << color << "' stroke-dasharray='5,3'/>\n";
  };
  line_at(fit.slope, fit.intercept / std::log(10.0), "steelblue");
  line_at(3.0, std::log10(guarantee_constant), "firebrick");

  for (const auto& [x, y] : pts)
    os << "<circle cx='" << px(x) << "' cy='" << py(y) << "' r='4' fill='black'/>\n";
  os << "<text x='" << L + 10 << "' y='30' font-size='12' fill='steelblue'>fit slope "
     << fit.slope << "</text>\n";
  os << "<text x='" << L + 10 << "' y='46' font-size='12' fill='firebrick'>guarantee C A^3</text>\n";
  os << "</svg>\n";
}

}  // namespace gfk
