#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace gfk::oracle {

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
const double kGlNode[16] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
    -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
    0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
const double kGlWeight[16] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
    0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

double density(double x) { return std::exp(-0.5 * x * x) / 2.5066282746310002; }

double schrodinger_potential(double x) { return 0.25 * x * x - 0.5; }

// Interior sign changes of the Numerov solution shot from r leftward.
int numerov_node_count(double r, double lambda, double step, double tail) {
  const long long m = std::llround(tail / step);
  const double d2 = step * step;
  auto f = [&](long long j) { return lambda - schrodinger_potential(r - step * double(j)); };
  double y_prev = 0.0;       // y(r)
  double y_cur = step;       // y(r - step), arbitrary scale
  double f_prev = f(0), f_cur = f(1);
  int nodes = 0;
  double last_sign = y_cur > 0 ? 1.0 : -1.0;
  for (long long j = 1; j < m; ++j) {
    const double f_next = f(j + 1);
    double y_next = (2.0 * y_cur * (1.0 - 5.0 * d2 * f_cur / 12.0) -
                     y_prev * (1.0 + d2 * f_prev / 12.0)) /
                    (1.0 + d2 * f_next / 12.0);
    if (std::abs(y_next) > 1e250) {
      y_next *= 1e-250;
      y_cur *= 1e-250;
    }
    if (y_next != 0.0) {
      const double s = y_next > 0 ? 1.0 : -1.0;
      if (s != last_sign) {
        ++nodes;
        last_sign = s;
      }
    }
    y_prev = y_cur;
    y_cur = y_next;
    f_prev = f_cur;
    f_cur = f_next;
  }
  return nodes;
}

}  // namespace

double phi_quadrature(double r) {
  const double lo = -13.0;
  if (r <= lo) throw std::invalid_argument("phi_quadrature: r too small");
  const int panels = static_cast<int>(std::ceil((r - lo) / 0.5));
  const double w = (r - lo) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + w * p;
    const double mid = a + 0.5 * w;
    double acc = 0.0;
    for (int q = 0; q < 16; ++q) acc += kGlWeight[q] * density(mid + 0.5 * w * kGlNode[q]);
    total += acc * 0.5 * w;
  }
  return total;
}

double shooting_lambda(double r, int k, double step, double tail) {
  double lo = -0.6;
  double hi = 2.0;
  while (numerov_node_count(r, hi, step, tail) < k) hi = hi * 2.0 + 1.0;
  while (hi - lo > 1e-12 * std::max(1.0, std::abs(hi))) {
    const double mid = 0.5 * (lo + hi);
    if (numerov_node_count(r, mid, step, tail) >= k) hi = mid; else lo = mid;
  }
  return 0.5 * (lo + hi);
}

double interval_lambda(double a, double b, double step) {
  if (!(a < b)) throw std::invalid_argument("interval_lambda: need a < b");
  const long long m = std::llround((b - a) / step);
  const double h = (b - a) / double(m);
  Eigen::ArrayXd diag(m - 1);
  const double inv2 = 2.0 / (h * h);
  for (long long i = 0; i < m - 1; ++i) {
    const double x = a + h * double(i + 1);
    diag[i] = inv2 + schrodinger_potential(x);
  }
  // Sturm bisection, kept local so the oracle path stays self-contained.
  const double off2 = 1.0 / (h * h * h * h);
  auto count_below = [&](double sigma) {
    int count = 0;
    double q = 1.0;
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
      q = (diag[i] - sigma) - (i > 0 ? off2 / q : 0.0);
      if (q < 0.0) ++count;
      if (q == 0.0) q = 1e-300;
    }
    return count;
  };
  double lo = -0.6, hi = 4.0;
  while (count_below(hi) < 1) hi = hi * 2.0 + 1.0;
  while (hi - lo > 1e-12 * std::max(1.0, std::abs(hi))) {
    const double mid = 0.5 * (lo + hi);
    if (count_below(mid) >= 1) hi = mid; else lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace gfk::oracle
