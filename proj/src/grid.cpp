#include "gfk/grid.hpp"

#include <cmath>
#include <deque>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gfk {

GaussianGrid::GaussianGrid(int dim, int n, double box_halfwidth)
    : dim_(dim), n_(n), box_(box_halfwidth), h_(2.0 * box_halfwidth / n) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("GaussianGrid: dim must be 1, 2 or 3");
  if (n < 16) throw std::invalid_argument("GaussianGrid: need at least 16 cells per axis");
  if (!(box_ > 0.0)) throw std::invalid_argument("GaussianGrid: box halfwidth must be positive");

  axis_w_.resize(n_);
  axis_c_.resize(n_);
  for (int i = 0; i < n_; ++i) {
    axis_w_[i] = phi(axis_node(i + 1)) - phi(axis_node(i));
    axis_c_[i] = -box_ + h_ * (i + 0.5);
  }

  cells_ = 1;
  for (int a = 0; a < dim_; ++a) cells_ *= n_;
  for (int a = 0; a < 3; ++a) strides_[a] = 0;
  Eigen::Index s = 1;
  for (int a = dim_ - 1; a >= 0; --a) {
    strides_[a] = s;
    s *= n_;
  }

  const double axis_mass = phi(box_) - phi(-box_);
  box_mass_ = std::pow(axis_mass, dim_);

  weights_.resize(cells_);
  for (Eigen::Index i = 0; i < cells_; ++i) weights_[i] = cell_weight(i);
}

double GaussianGrid::cell_weight(Eigen::Index idx) const {
  const auto mi = multi_index(idx);
  double w = 1.0;
  for (int a = 0; a < dim_; ++a) w *= axis_w_[mi[a]];
  return w;
}

DomainMask empty_mask(const GridPtr& grid) {
  return {grid, Eigen::Array<std::uint8_t, Eigen::Dynamic, 1>::Zero(grid->cell_count())};
}

DomainMask full_mask(const GridPtr& grid) {
  return {grid, Eigen::Array<std::uint8_t, Eigen::Dynamic, 1>::Ones(grid->cell_count())};
}

Halfspace::Halfspace(Eigen::VectorXd w, double threshold) : omega(std::move(w)), r(threshold) {
  const double norm = omega.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("Halfspace: zero direction");
  omega /= norm;
}

Eigen::VectorXd direction2d(double theta, int dim) {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(dim);
  w[0] = std::cos(theta);
  if (dim >= 2) w[1] = std::sin(theta);
  return w;
}

DomainMask rasterize(const GridPtr& grid, const Halfspace& hs) {
  if (hs.omega.size() != grid->dim())
    throw std::invalid_argument("rasterize: direction dimension mismatch");
  return rasterize_if(grid, [&](const Eigen::VectorXd& x) { return x.dot(hs.omega) < hs.r; });
}

double gauss_measure(const DomainMask& mask) {
  const Eigen::ArrayXd& w = mask.grid->cell_weights();
  double m = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (mask.inside[i]) m += w[i];
  return m;
}

bool same_grid(const DomainMask& a, const DomainMask& b) {
  if (a.grid == b.grid) return true;
  return a.grid->dim() == b.grid->dim() && a.grid->n() == b.grid->n() &&
         a.grid->box() == b.grid->box();
}

double symdiff_measure(const DomainMask& a, const DomainMask& b) {
  if (!same_grid(a, b)) throw std::invalid_argument("symdiff_measure: grid mismatch");
  const Eigen::ArrayXd& w = a.grid->cell_weights();
  double m = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if ((a.inside[i] != 0) != (b.inside[i] != 0)) m += w[i];
  return m;
}

bool touches_box_boundary(const DomainMask& mask) {
  const auto& g = *mask.grid;
  const int n = g.n();
  for (Eigen::Index i = 0; i < g.cell_count(); ++i) {
    if (!mask.inside[i]) continue;
    const auto mi = g.multi_index(i);
    for (int a = 0; a < g.dim(); ++a)
      if (mi[a] == 0 || mi[a] == n - 1) return true;
  }
  return false;
}

int component_count(const DomainMask& mask) {
  const auto& g = *mask.grid;
  std::vector<std::int8_t> seen(g.cell_count(), 0);
  int comps = 0;
  std::deque<Eigen::Index> queue;
  for (Eigen::Index start = 0; start < g.cell_count(); ++start) {
    if (!mask.inside[start] || seen[start]) continue;
    ++comps;
    seen[start] = 1;
    queue.push_back(start);
    while (!queue.empty()) {
      const Eigen::Index c = queue.front();
      queue.pop_front();
      const auto mi = g.multi_index(c);
      for (int a = 0; a < g.dim(); ++a) {
        if (mi[a] > 0) {
          const Eigen::Index nb = c - g.stride(a);
          if (mask.inside[nb] && !seen[nb]) { seen[nb] = 1; queue.push_back(nb); }
        }
        if (mi[a] < g.n() - 1) {
          const Eigen::Index nb = c + g.stride(a);
          if (mask.inside[nb] && !seen[nb]) { seen[nb] = 1; queue.push_back(nb); }
        }
      }
    }
  }
  return comps;
}

Eigen::ArrayXd smoothed_indicator(const DomainMask& mask) {
  const auto& g = *mask.grid;
  Eigen::ArrayXd cur = mask.inside.cast<double>();
  Eigen::ArrayXd next(cur.size());
  // Separable 3-cell box average, one pass per axis.
  for (int a = 0; a < g.dim(); ++a) {
    const Eigen::Index s = g.stride(a);
    for (Eigen::Index i = 0; i < cur.size(); ++i) {
      const int ia = g.multi_index(i)[a];
      double acc = cur[i];
      int cnt = 1;
      if (ia > 0) { acc += cur[i - s]; ++cnt; }
      if (ia < g.n() - 1) { acc += cur[i + s]; ++cnt; }
      next[i] = acc / cnt;
    }
    cur.swap(next);
  }
  return cur;
}

DomainMask superlevel_mask(const GridPtr& grid, const Eigen::ArrayXd& u, double t) {
  if (u.size() != grid->cell_count())
    throw std::invalid_argument("superlevel_mask: size mismatch");
  DomainMask m = empty_mask(grid);
  for (Eigen::Index i = 0; i < u.size(); ++i) m.inside[i] = u[i] > t ? 1 : 0;
  return m;
}

namespace {

void write_header(std::ostream& os, const char* tag, const GaussianGrid& g) {
  os << tag << ' ' << g.dim() << ' ' << g.n() << ' ' << g.box() << '\n';
}

GridPtr read_header(std::istream& is, const std::string& want_tag) {
  std::string tag;
  int dim = 0, n = 0;
  double box = 0.0;
  if (!(is >> tag >> dim >> n >> box)) throw std::runtime_error("grid io: bad header");
  if (tag != want_tag) throw std::runtime_error("grid io: expected " + want_tag + ", got " + tag);
  return make_grid(dim, n, box);
}

}  // namespace

void save_mask(const DomainMask& mask, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("save_mask: cannot open " + path);
  const auto& g = *mask.grid;
  write_header(os, "gfk-mask", g);
  for (Eigen::Index i = 0; i < g.cell_count(); ++i) {
    os << int(mask.inside[i] ? 1 : 0);
    os << (((i + 1) % g.n() == 0) ? '\n' : ' ');
  }
}

DomainMask load_mask(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("load_mask: cannot open " + path);
  GridPtr grid = read_header(is, "gfk-mask");
  DomainMask m = empty_mask(grid);
  for (Eigen::Index i = 0; i < grid->cell_count(); ++i) {
    int v = 0;
    if (!(is >> v)) throw std::runtime_error("load_mask: truncated data");
    m.inside[i] = v ? 1 : 0;
  }
  return m;
}

void save_field(const GridPtr& grid, const Eigen::ArrayXd& u, const std::string& path) {
  if (u.size() != grid->cell_count()) throw std::invalid_argument("save_field: size mismatch");
  std::ofstream os(path);
  if (!os) throw std::runtime_error("save_field: cannot open " + path);
  os.precision(17);
  write_header(os, "gfk-field", *grid);
  for (Eigen::Index i = 0; i < u.size(); ++i)
    os << u[i] << (((i + 1) % grid->n() == 0) ? '\n' : ' ');
}

std::pair<GridPtr, Eigen::ArrayXd> load_field(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("load_field: cannot open " + path);
  GridPtr grid = read_header(is, "gfk-field");
  Eigen::ArrayXd u(grid->cell_count());
  for (Eigen::Index i = 0; i < u.size(); ++i)
    if (!(is >> u[i])) throw std::runtime_error("load_field: truncated data");
  return {grid, std::move(u)};
}

}  // namespace gfk
