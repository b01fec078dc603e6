#ifndef WEYL_QUADRATURE_HPP
#define WEYL_QUADRATURE_HPP

#include <vector>

namespace weyl {

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with m nodes on [a, b].
QuadRule gauss_legendre(int m, double a, double b);

/// Uniform rule with m nodes on [a, b) for periodic integrands
/// (the trapezoid rule with the duplicate endpoint dropped).
QuadRule periodic_uniform(int m, double a, double b);

}  // namespace weyl

#endif
