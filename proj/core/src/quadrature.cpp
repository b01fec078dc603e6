#include "weyl/quadrature.hpp"

#include "weyl/errors.hpp"

#include <cmath>

namespace weyl {

QuadRule gauss_legendre(int m, double a, double b) {
  if (m < 1) throw DimensionError("quadrature: need at least one node");
  QuadRule r;
  r.nodes.resize(m);
  r.weights.resize(m);
  // Roots of P_m by Newton iteration from the Chebyshev-like initial guess.
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[m - 1 - i] = x;
    r.weights[i] = w;
    r.weights[m - 1 - i] = w;
  }
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < m; ++i) {
    r.nodes[i] = mid + half * r.nodes[i];
    r.weights[i] *= half;
  }
  return r;
}

QuadRule periodic_uniform(int m, double a, double b) {
  if (m < 1) throw DimensionError("quadrature: need at least one node");
  QuadRule r;
  const double w = (b - a) / m;
  for (int i = 0; i < m; ++i) {
    r.nodes.push_back(a + i * w);
    r.weights.push_back(w);
  }
  return r;
}

}  // namespace weyl
