#pragma once

#include <Eigen/Dense>
#include <array>
#include <memory>
#include <string>

#include "gfk/gauss.hpp"

// Truncated tensor grids with exact per-cell Gaussian weights, indicator
// masks of open sets on them, and the measure arithmetic the rest of the
// toolkit runs on. Cells are the n^dim boxes of side h = 2R/n; a mask is a
// flag per cell (an open set rasterized by cell-center membership, boundary
// ties going outside).

namespace gfk {

class GaussianGrid {
 public:
  GaussianGrid(int dim, int n, double box_halfwidth);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double box() const { return box_; }
  double h() const { return h_; }
  Eigen::Index cell_count() const { return cells_; }

  /// Measure of the full box, (Phi(R) - Phi(-R))^dim.
  double box_mass() const { return box_mass_; }

  /// 1-D Phi-increment of axis cell i (same for every axis).
  double axis_weight(int i) const { return axis_w_[i]; }
  /// Center coordinate of axis cell i.
  double axis_center(int i) const { return axis_c_[i]; }
  /// Left node of axis cell i; node(n) is the right box edge.
  double axis_node(int i) const { return -box_ + h_ * i; }

  /// Exact Gaussian measure of cell `idx` (product of axis increments).
  double cell_weight(Eigen::Index idx) const;
  /// All cell weights as a dense array (built once, cached).
  const Eigen::ArrayXd& cell_weights() const { return weights_; }

  Eigen::Index index(const std::array<int, 3>& mi) const {
    Eigen::Index idx = mi[0];
    for (int a = 1; a < dim_; ++a) idx = idx * n_ + mi[a];
    return idx;
  }
  std::array<int, 3> multi_index(Eigen::Index idx) const {
    std::array<int, 3> mi{0, 0, 0};
    for (int a = dim_ - 1; a >= 0; --a) {
      mi[a] = static_cast<int>(idx % n_);
      idx /= n_;
    }
    return mi;
  }
  /// Stride of axis a in the linear cell index.
  Eigen::Index stride(int a) const { return strides_[a]; }

  Eigen::VectorXd center(Eigen::Index idx) const {
    const auto mi = multi_index(idx);
    Eigen::VectorXd x(dim_);
    for (int a = 0; a < dim_; ++a) x[a] = axis_c_[mi[a]];
    return x;
  }

 private:
  int dim_, n_;
  double box_, h_, box_mass_;
  Eigen::Index cells_;
  std::array<Eigen::Index, 3> strides_;
  Eigen::ArrayXd axis_w_, axis_c_;
  Eigen::ArrayXd weights_;
};

using GridPtr = std::shared_ptr<const GaussianGrid>;

inline GridPtr make_grid(int dim, int n, double box_halfwidth) {
  return std::make_shared<GaussianGrid>(dim, n, box_halfwidth);
}

/// Default truncation box for sets whose defining threshold is r:
/// max(6, |r| + 6) standard deviations.
inline double default_box(double r = 0.0) { return std::max(6.0, std::abs(r) + 6.0); }

struct DomainMask {
  GridPtr grid;
  Eigen::Array<std::uint8_t, Eigen::Dynamic, 1> inside;

  bool cell(Eigen::Index i) const { return inside[i] != 0; }
};

DomainMask empty_mask(const GridPtr& grid);
DomainMask full_mask(const GridPtr& grid);

struct Halfspace {
  Eigen::VectorXd omega;  // unit direction
  double r = 0.0;

  Halfspace(Eigen::VectorXd w, double threshold);
};

/// Unit vector in the plane of axes 0 and 1 at angle theta from axis 0.
Eigen::VectorXd direction2d(double theta, int dim = 2);

/// Rasterize {x . omega < r} by cell-center membership.
DomainMask rasterize(const GridPtr& grid, const Halfspace& hs);

/// Rasterize a set given by a predicate on cell centers.
template <typename Pred>
DomainMask rasterize_if(const GridPtr& grid, Pred&& pred) {
  DomainMask m{grid, Eigen::Array<std::uint8_t, Eigen::Dynamic, 1>::Zero(grid->cell_count())};
  for (Eigen::Index i = 0; i < grid->cell_count(); ++i)
    m.inside[i] = pred(grid->center(i)) ? 1 : 0;
  return m;
}

/// Sum of cell weights over the inside cells.
double gauss_measure(const DomainMask& mask);

/// Measure of the symmetric difference; throws on grid mismatch.
double symdiff_measure(const DomainMask& a, const DomainMask& b);

bool same_grid(const DomainMask& a, const DomainMask& b);

/// True if any inside cell lies in the outermost cell layer of the box.
bool touches_box_boundary(const DomainMask& mask);

/// Number of face-connected components of the inside region.
int component_count(const DomainMask& mask);

/// Indicator averaged over the 3^dim cell neighborhood (edge cells use the
/// available part of the stencil). The 0.5 level of this field is the
/// sub-cell interface estimate shared by the perimeter and eigensolver
/// modules.
Eigen::ArrayXd smoothed_indicator(const DomainMask& mask);

/// Superlevel mask {u > t} of a grid function.
DomainMask superlevel_mask(const GridPtr& grid, const Eigen::ArrayXd& u, double t);

// Text import/export. First line: "gfk-mask dim n box" or
// "gfk-field dim n box"; then n^dim values in row-major order (axis 0
// slowest), n per line.
void save_mask(const DomainMask& mask, const std::string& path);
DomainMask load_mask(const std::string& path);
void save_field(const GridPtr& grid, const Eigen::ArrayXd& u, const std::string& path);
std::pair<GridPtr, Eigen::ArrayXd> load_field(const std::string& path);

}  // namespace gfk
