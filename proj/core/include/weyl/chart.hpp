#ifndef WEYL_CHART_HPP
#define WEYL_CHART_HPP

#include "weyl/expr.hpp"
#include "weyl/tensor.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace weyl {

struct Axis {
  double min = 0;
  double max = 1;
  bool periodic = false;
};

/// A coordinate-chart Weyl structure: metric components, 1-form components,
/// domain box, finite-difference step. The connection is always built from
/// (g, phi); it is never entered independently.
struct Chart {
  int n = 0;
  std::vector<Expr> g;      // n*n, row-major, symmetric
  std::vector<Expr> dg;     // n*n*n: dg[(k*n+i)*n+j] = d_k g_ij, symbolic
  std::vector<Expr> phi;    // n
  std::vector<Expr> dphi;   // n*n: dphi[i*n+j] = d_i phi_j, symbolic
  std::vector<Axis> domain;
  double fd_step = 1e-4;
  bool riemannian = true;  // g positive definite; required by the scalar
                           // relations and the integral checks
  std::optional<Expr> weight;  // extra quadrature weight, if any
};

Chart make_chart(int n, std::vector<Expr> g, std::vector<Expr> phi,
                 std::vector<Axis> domain, double fd_step = 1e-4,
                 bool riemannian = true,
                 std::optional<Expr> weight = std::nullopt);

Chart chart_from_json(const nlohmann::json& j);
nlohmann::json chart_to_json(const Chart& c);
Chart read_chart_file(const std::string& path);

/// Gauge transformation: g -> e^{2f} g, phi -> phi - df, df symbolic.
Chart gauge(const Chart& c, const Expr& f);

/// The same chart with phi = 0 (the Levi-Civita structure of g).
Chart riemannian_part(const Chart& c);

/// Metric value g(x) as a dense matrix.
Eigen::MatrixXd metric_at(const Chart& c, const std::vector<double>& x);

/// Connection coefficients of the Weyl connection, flat layout
/// gamma[(k*n+i)*n+j] = Gamma^k_ij, from exact symbolic metric derivatives.
std::vector<double> christoffel(const Chart& c, const std::vector<double>& x);

/// Curvature operator components r[((i*n+j)*n+k)*n+l] = (R(d_i,d_j)d_k)^l,
/// by central differences of christoffel.
std::vector<double> curvature_operator(const Chart& c, const std::vector<double>& x);

/// Ric_jk = (R(d_i, d_j)d_k)^i, gauge invariant.
Eigen::MatrixXd ricci_at(const Chart& c, const std::vector<double>& x);

/// tau_g = g^{jk} Ric_jk of the Weyl connection.
double tau_at(const Chart& c, const std::vector<double>& x);

/// Curvature at a point expressed in an orthonormal frame of g(x); the frame
/// columns are coordinate components of the frame vectors, negative-square
/// directions first.
struct PointFrame {
  std::vector<double> point;
  Model model;
  Curv4<double> a;
  Eigen::MatrixXd frame;
};

PointFrame curvature_at(const Chart& c, const std::vector<double>& x);

struct CanonicalData {
  Eigen::MatrixXd g_tilde;
  std::vector<double> phi_tilde;
  double tau = 0;
  double tau_tilde = 0;  // recomputed trace against g_tilde, should be 1
};

/// Canonical Weyl metric data at a point: g~ = tau_g g, phi~ = phi - d(ln tau)/2.
CanonicalData canonical(const Chart& c, const std::vector<double>& x);

/// Residuals of the two conformal scalar-curvature relations.
struct ScalarRelations {
  double residual1 = 0;  // n k_gt - [n t^-1 k_g - t^-2 Lap t - (n-6)/4 t^-3 |grad t|^2]
  double residual2 = 0;  // 1 - [n(n-1) k_gt - 2(n-1) div_gt phi~ - (n-1)(n-2)|phi~|^2]
  double kappa_g = 0;
  double kappa_tilde = 0;
};

ScalarRelations scalar_relations(const Chart& c, const std::vector<double>& x);

/// Max-norm residuals of the differential curvature identities.
struct BianchiResiduals {
  double operator_identity = 0;   // cyclic covariant derivative, (1,3) form
  double lowered_identity = 0;    // lowered form with the -2 phi correction
  double lowered_uncorrected = 0; // same without the correction term
  double contracted_first = 0;    // divergence-type contraction
  double contracted_second = 0;   // cyclic derivative of the Ricci 2-form part
};

BianchiResiduals bianchi_residuals(const Chart& c, const std::vector<double>& x);

struct IntegralReport {
  double total_tilde_curvature = 0;  // integral of k_gt against w_gt
  double conformal_bound = 0;        // integral of k_g tau^{(n-2)/2} against w_g
  double tilde_volume = 0;           // integral of w_gt
  double curvature_times_nn1 = 0;    // n(n-1) * total_tilde_curvature
  double gap_curvature = 0;          // total_tilde_curvature - conformal_bound
  double gap_volume = 0;             // curvature_times_nn1 - tilde_volume
};

/// Tensor-product quadrature over the domain box: uniform nodes on periodic
/// axes, Gauss-Legendre on the others.
IntegralReport integrate(const Chart& c, int resolution);

}  // namespace weyl

#endif
