#include "gfk/shapes.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace gfk {

DomainMask make_halfspace_mask(const GridPtr& grid, const Eigen::VectorXd& omega, double r) {
  return rasterize(grid, Halfspace(omega, r));
}

DomainMask make_wedge_mask(const GridPtr& grid, double theta) {
  if (grid->dim() != 2) throw std::invalid_argument("wedge: 2-D only");
  if (!(theta > 0.0 && theta < 2.0 * M_PI)) throw std::invalid_argument("wedge: theta outside (0,2pi)");
  const double half = 0.5 * theta;
  return rasterize_if(grid, [&](const Eigen::VectorXd& x) {
    // angle between x and -e1; the apex cell center is never exactly 0
    const double ang = std::atan2(x[1], -x[0]);
    return std::abs(ang) < half;
  });
}

DomainMask make_bump_mask(const GridPtr& grid, double r0, double a, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("bump: s must be positive");
  return rasterize_if(grid, [&](const Eigen::VectorXd& x) {
    double perp2 = 0.0;
    for (int i = 1; i < x.size(); ++i) perp2 += x[i] * x[i];
    return x[0] < r0 + a * std::exp(-perp2 / (2.0 * s * s));
  });
}

DomainMask make_notch_mask(const GridPtr& grid, double r0, double d, double w) {
  return rasterize_if(grid, [&](const Eigen::VectorXd& x) {
    if (!(x[0] < r0)) return false;
    if (w <= 0.0) return true;
    double perp = 0.0;
    for (int i = 1; i < x.size(); ++i) perp = std::max(perp, std::abs(x[i]));
    return !(x[0] > r0 - d && perp < w);
  });
}

DomainMask make_two_slabs_mask(const GridPtr& grid, double r0, double s0, double w) {
  return rasterize_if(grid, [&](const Eigen::VectorXd& x) {
    return x[0] < r0 || (w > 0.0 && x[0] > s0 && x[0] < s0 + w);
  });
}

DomainMask make_ball_mask(const GridPtr& grid, double rho, const Eigen::VectorXd& c) {
  if (c.size() != grid->dim()) throw std::invalid_argument("ball: center dimension mismatch");
  return rasterize_if(grid, [&](const Eigen::VectorXd& x) { return (x - c).norm() < rho; });
}

DomainMask make_ball_complement_mask(const GridPtr& grid, double r0, double rho,
                                     const Eigen::VectorXd& c) {
  if (c.size() != grid->dim()) throw std::invalid_argument("ball-complement: center dimension mismatch");
  return rasterize_if(grid, [&](const Eigen::VectorXd& x) {
    return x[0] < r0 && !((x - c).norm() < rho);
  });
}

namespace {

struct ShapeSpec {
  std::string name;
  std::map<std::string, std::string> kv;

  double num(const std::string& key, double fallback) const {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : std::stod(it->second);
  }
  double num(const std::string& key) const {
    auto it = kv.find(key);
    if (it == kv.end()) throw std::invalid_argument("shape '" + name + "': missing key " + key);
    return std::stod(it->second);
  }
  Eigen::VectorXd vec(const std::string& key, int dim, const Eigen::VectorXd& fallback) const {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    std::stringstream ss(it->second);
    std::string part;
    int i = 0;
    while (std::getline(ss, part, '/') && i < dim) v[i++] = std::stod(part);
    return v;
  }
};

ShapeSpec parse_spec(const std::string& spec) {
  ShapeSpec s;
  const auto colon = spec.find(':');
  s.name = spec.substr(0, colon);
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("shape: bad key=val '" + item + "'");
      s.kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }
  return s;
}

}  // namespace

DomainMask make_shape(const std::string& spec, const GridPtr& grid) {
  const ShapeSpec s = parse_spec(spec);
  const int dim = grid->dim();
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(dim);

  if (s.name == "halfspace") {
    Eigen::VectorXd omega;
    if (s.kv.count("omega")) {
      omega = s.vec("omega", dim, zero);
    } else {
      omega = direction2d(s.num("angle", 0.0), dim);
    }
    return make_halfspace_mask(grid, omega, s.num("r"));
  }
  if (s.name == "wedge") return make_wedge_mask(grid, s.num("theta"));
  if (s.name == "bump")
    return make_bump_mask(grid, s.num("r0", 0.0), s.num("a"), s.num("s", 0.75));
  if (s.name == "notch")
    return make_notch_mask(grid, s.num("r0", 0.0), s.num("d", 1.5), s.num("w"));
  if (s.name == "two-slabs")
    return make_two_slabs_mask(grid, s.num("r0", -0.3), s.num("s0", 0.7), s.num("w"));
  if (s.name == "ball") return make_ball_mask(grid, s.num("rho"), s.vec("c", dim, zero));
  if (s.name == "ball-complement")
    return make_ball_complement_mask(grid, s.num("r0", 0.0), s.num("rho"), s.vec("c", dim, zero));
  if (s.name == "full") return full_mask(grid);
  throw std::invalid_argument("make_shape: unknown shape '" + s.name + "'");
}

}  // namespace gfk
