#include "gfk/ehrhard.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gfk/eigensolver.hpp"

namespace gfk {

namespace {

void check_axis(const GaussianGrid& g, int axis) {
  if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("symmetrize: bad axis");
}

// Visit every grid line along `axis`: base index of the first cell plus the
// stride to walk it.
template <typename Fn>
void for_each_line(const GaussianGrid& g, int axis, Fn&& fn) {
  const Eigen::Index stride = g.stride(axis);
  const Eigen::Index cells = g.cell_count();
  const int n = g.n();
  for (Eigen::Index c = 0; c < cells; ++c) {
    if (g.multi_index(c)[axis] != 0) continue;
    fn(c, stride, n);
  }
}

}  // namespace

DomainMask symmetrize_set(const DomainMask& mask, int axis) {
  const auto& g = *mask.grid;
  check_axis(g, axis);
  DomainMask out = empty_mask(mask.grid);

  for_each_line(g, axis, [&](Eigen::Index base, Eigen::Index stride, int n) {
    double target = 0.0;
    for (int i = 0; i < n; ++i)
      if (mask.inside[base + i * stride]) target += g.axis_weight(i);
    if (target <= 0.0) return;
    // left-packed fill, rounded to the nearest cumulative mass
    double cum = 0.0;
    int k = 0;
    while (k < n && cum < target) cum += g.axis_weight(k++);
    // cum = mass of first k cells >= target; dropping the last cell may be closer
    if (k > 0 && (cum - target) > (target - (cum - g.axis_weight(k - 1)))) --k;
    for (int i = 0; i < k; ++i) out.inside[base + i * stride] = 1;
  });
  return out;
}

Eigen::ArrayXd symmetrize_function(const GridPtr& grid, const Eigen::ArrayXd& u, int axis) {
  const auto& g = *grid;
  check_axis(g, axis);
  if (u.size() != g.cell_count()) throw std::invalid_argument("symmetrize_function: size mismatch");

  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(u.size());
  std::vector<int> order(g.n());
  std::vector<double> sorted_cum(g.n());

  for_each_line(g, axis, [&](Eigen::Index base, Eigen::Index stride, int n) {
    // stable descending sort of the trace: plateaus keep coordinate order
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return u[base + a * stride] > u[base + b * stride];
    });
    double cum = 0.0;
    for (int j = 0; j < n; ++j) {
      cum += g.axis_weight(order[j]);
      sorted_cum[j] = cum;
    }
    // emit against the line's own cumulative masses, sampled at midpoints
    double left = 0.0;
    for (int i = 0; i < n; ++i) {
      const double s_mid = left + 0.5 * g.axis_weight(i);
      left += g.axis_weight(i);
      const auto it = std::upper_bound(sorted_cum.begin(), sorted_cum.end(), s_mid);
      const int j = std::min<int>(int(it - sorted_cum.begin()), n - 1);
      out[base + i * stride] = u[base + order[j] * stride];
    }
  });
  return out;
}

namespace {

// Bilinear sample of a grid array at physical coordinates; outside the box
// the array is read as zero.
double bilinear(const GaussianGrid& g, const Eigen::ArrayXd& u, double x, double y) {
  const double h = g.h();
  const double fx = (x - g.axis_center(0)) / h;
  const double fy = (y - g.axis_center(0)) / h;
  const int i0 = static_cast<int>(std::floor(fx));
  const int j0 = static_cast<int>(std::floor(fy));
  const double tx = fx - i0, ty = fy - j0;
  auto at = [&](int i, int j) -> double {
    if (i < 0 || j < 0 || i >= g.n() || j >= g.n()) return 0.0;
    return u[i * g.stride(0) + j * g.stride(1)];
  };
  return (1 - tx) * (1 - ty) * at(i0, j0) + tx * (1 - ty) * at(i0 + 1, j0) +
         (1 - tx) * ty * at(i0, j0 + 1) + tx * ty * at(i0 + 1, j0 + 1);
}

Eigen::ArrayXd rotate_field(const GaussianGrid& g, const Eigen::ArrayXd& u, double angle) {
  Eigen::ArrayXd out(u.size());
  const double c = std::cos(angle), s = std::sin(angle);
  for (int i = 0; i < g.n(); ++i) {
    for (int j = 0; j < g.n(); ++j) {
      const double x = g.axis_center(i), y = g.axis_center(j);
      // sample the source at the pre-image of this center
      out[i * g.stride(0) + j * g.stride(1)] =
          bilinear(g, u, c * x + s * y, -s * x + c * y);
    }
  }
  return out;
}

}  // namespace

Eigen::ArrayXd symmetrize_function_dir(const GridPtr& grid, const Eigen::ArrayXd& u,
                                       const Eigen::Vector2d& h_dir) {
  if (grid->dim() != 2) throw std::invalid_argument("symmetrize_function_dir: 2-D only");
  const double angle = std::atan2(h_dir.y(), h_dir.x());
  if (std::abs(angle) < 1e-14) return symmetrize_function(grid, u, 0);
  const Eigen::ArrayXd aligned = rotate_field(*grid, u, angle);
  const Eigen::ArrayXd sym = symmetrize_function(grid, aligned, 0);
  return rotate_field(*grid, sym, -angle);
}

DomainMask symmetrize_set_dir(const DomainMask& mask, const Eigen::Vector2d& h_dir) {
  const double angle = std::atan2(h_dir.y(), h_dir.x());
  if (std::abs(angle) < 1e-14) return symmetrize_set(mask, 0);
  const Eigen::ArrayXd ind = mask.inside.cast<double>();
  const Eigen::ArrayXd sym = symmetrize_function_dir(mask.grid, ind, h_dir);
  DomainMask out = empty_mask(mask.grid);
  for (Eigen::Index i = 0; i < sym.size(); ++i) out.inside[i] = sym[i] > 0.5 ? 1 : 0;
  return out;
}

PolyaSzegoCheck polya_szego_check(const GridPtr& grid, const Eigen::ArrayXd& u, int axis) {
  PolyaSzegoCheck res;
  res.energy_before = dirichlet_energy(grid, u);
  res.energy_after = dirichlet_energy(grid, symmetrize_function(grid, u, axis));
  res.tol = grid->h() * res.energy_before;
  res.ok = res.energy_after <= res.energy_before + res.tol;
  return res;
}

}  // namespace gfk
