#include "weyl/chart.hpp"

#include "weyl/errors.hpp"
#include "weyl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <thread>

namespace weyl {

namespace {

// Step sizes for the nested finite-difference levels, relative to the chart
// step. The outer levels differentiate quantities that are themselves
// FD-computed, so they use larger steps plus Richardson extrapolation.
double step_tau(const Chart& c) { return 10 * c.fd_step; }
double step_outer(const Chart& c) { return 100 * c.fd_step; }
double step_div(const Chart& c) { return 50 * c.fd_step; }
double step_bianchi(const Chart& c) { return 10 * c.fd_step; }

// Near the endpoints of non-periodic axes the metric may be coordinate
// singular (sphere-type charts), so derivatives of the connection grow like
// inverse powers of the distance d. Shrinking the steps with d keeps the
// truncation error bounded; the floor keeps roundoff in check.
double boundary_scale(const Chart& c, const std::vector<double>& x, double expo,
                      double floor_value) {
  double r = 1;
  for (int i = 0; i < c.n; ++i) {
    const Axis& ax = c.domain[i];
    if (ax.periodic) continue;
    const double d = std::min(x[i] - ax.min, ax.max - x[i]);
    const double half = 0.5 * (ax.max - ax.min);
    if (half > 0) r = std::min(r, std::max(d, 0.0) / half);
  }
  if (r >= 1) return 1;
  return std::clamp(std::pow(r, expo), floor_value, 1.0);
}

double inner_scale(const Chart& c, const std::vector<double>& x) {
  return boundary_scale(c, x, 2.0, 1e-3);
}

double outer_scale(const Chart& c, const std::vector<double>& x) {
  return boundary_scale(c, x, 1.0, 0.05);
}

void check_point(const Chart& c, const std::vector<double>& x, double margin) {
  if (static_cast<int>(x.size()) != c.n)
    throw DimensionError("chart: point has wrong number of coordinates");
  for (int i = 0; i < c.n; ++i) {
    const Axis& ax = c.domain[i];
    if (ax.periodic) continue;
    if (x[i] < ax.min + margin || x[i] > ax.max - margin)
      throw BoundaryError("chart: point too close to a non-periodic boundary (axis " +
                          std::to_string(i + 1) + ")");
  }
}

Eigen::MatrixXd eval_matrix(const std::vector<Expr>& e, int n,
                            const std::vector<double>& x, int offset = 0) {
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = e[offset + i * n + j].eval(x);
  return m;
}

Eigen::MatrixXd safe_inverse(const Eigen::MatrixXd& g, double* det_out = nullptr) {
  const double det = g.determinant();
  if (std::abs(det) < 1e-12)
    throw SingularMetric("chart: metric is singular at the requested point");
  if (det_out) *det_out = det;
  return g.inverse();
}

// Derivative at 0 of a scalar function of one offset, Richardson-extrapolated
// central differences.
template <class F>
double rich_scalar(F&& f, double h) {
  const auto d = [&](double hh) { return (f(hh) - f(-hh)) / (2 * hh); };
  return (4 * d(h / 2) - d(h)) / 3;
}

// Same for a flat vector of values.
template <class F>
std::vector<double> rich_vector(F&& f, double h) {
  const auto d = [&](double hh) {
    std::vector<double> plus = f(hh), minus = f(-hh);
    for (std::size_t i = 0; i < plus.size(); ++i)
      plus[i] = (plus[i] - minus[i]) / (2 * hh);
    return plus;
  };
  std::vector<double> fine = d(h / 2), coarse = d(h);
  for (std::size_t i = 0; i < fine.size(); ++i)
    fine[i] = (4 * fine[i] - coarse[i]) / 3;
  return fine;
}

std::vector<double> shifted(const std::vector<double>& x, int k, double t) {
  std::vector<double> y = x;
  y[k] += t;
  return y;
}

// A numeric metric field with (possibly semi-exact) first derivatives; used
// for curvature of metrics that are not symbolic, like tau_g * g.
struct MetricField {
  int n;
  std::function<Eigen::MatrixXd(const std::vector<double>&)> value;
  std::function<Eigen::MatrixXd(const std::vector<double>&, int)> deriv;
};

// Levi-Civita coefficients of a metric field, flat layout [(k*n+i)*n+j].
std::vector<double> christoffel_lc(const MetricField& f, const std::vector<double>& x) {
  const int n = f.n;
  const Eigen::MatrixXd g = f.value(x);
  const Eigen::MatrixXd ginv = safe_inverse(g);
  std::vector<Eigen::MatrixXd> dg;
  dg.reserve(n);
  for (int k = 0; k < n; ++k) dg.push_back(f.deriv(x, k));
  std::vector<double> gamma(static_cast<std::size_t>(n) * n * n, 0.0);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0;
        for (int l = 0; l < n; ++l)
          s += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        gamma[(static_cast<std::size_t>(k) * n + i) * n + j] = 0.5 * s;
      }
  return gamma;
}

// Curvature operator of a metric field's Levi-Civita connection; the
// coefficient derivatives use Richardson-extrapolated differences at `step`.
std::vector<double> curvature_of_field(const MetricField& f, const std::vector<double>& x,
                                       double step) {
  const int n = f.n;
  const std::size_t n3 = static_cast<std::size_t>(n) * n * n;
  const std::vector<double> gamma = christoffel_lc(f, x);
  std::vector<std::vector<double>> dgamma(n);
  for (int m = 0; m < n; ++m)
    dgamma[m] = rich_vector(
        [&](double t) { return christoffel_lc(f, shifted(x, m, t)); }, step);
  const auto G = [&](int k, int i, int j) {
    return gamma[(static_cast<std::size_t>(k) * n + i) * n + j];
  };
  const auto dG = [&](int m, int k, int i, int j) {
    return dgamma[m][(static_cast<std::size_t>(k) * n + i) * n + j];
  };
  std::vector<double> r(n3 * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = dG(i, l, j, k) - dG(j, l, i, k);
          for (int m = 0; m < n; ++m)
            v += G(l, i, m) * G(m, j, k) - G(l, j, m) * G(m, i, k);
          r[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l] = v;
        }
  return r;
}

// Normalized scalar curvature kappa = tau / (n(n-1)) of a metric field.
double kappa_of_field(const MetricField& f, const std::vector<double>& x, double step) {
  const int n = f.n;
  const std::vector<double> r = curvature_of_field(f, x, step);
  const Eigen::MatrixXd ginv = safe_inverse(f.value(x));
  double tau = 0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double ric = 0;
      for (int i = 0; i < n; ++i)
        ric += r[((static_cast<std::size_t>(i) * n + j) * n + k) * n + i];
      tau += ginv(j, k) * ric;
    }
  return tau / (n * (n - 1));
}

// The symbolic chart metric as a field with exact derivatives.
MetricField base_field(const Chart& c) {
  MetricField f;
  f.n = c.n;
  f.value = [&c](const std::vector<double>& x) { return eval_matrix(c.g, c.n, x); };
  f.deriv = [&c](const std::vector<double>& x, int k) {
    return eval_matrix(c.dg, c.n, x, k * c.n * c.n);
  };
  return f;
}

// tau_g * g as a field; the scalar factor is differentiated numerically, the
// metric part exactly.
MetricField tilde_field(const Chart& c) {
  MetricField f;
  f.n = c.n;
  f.value = [&c](const std::vector<double>& x) {
    return (tau_at(c, x) * eval_matrix(c.g, c.n, x)).eval();
  };
  f.deriv = [&c](const std::vector<double>& x, int k) {
    const double tau = tau_at(c, x);
    const double st = step_tau(c);
    const double dtau = rich_scalar(
        [&](double t) { return tau_at(c, shifted(x, k, t)); }, st);
    return (dtau * eval_matrix(c.g, c.n, x) +
            tau * eval_matrix(c.dg, c.n, x, k * c.n * c.n))
        .eval();
  };
  return f;
}

double volume_factor(const Eigen::MatrixXd& g) {
  const double det = g.determinant();
  if (std::abs(det) < 1e-12)
    throw SingularMetric("chart: metric is singular at the requested point");
  return std::sqrt(std::abs(det));
}

// Fixed steps on purpose: after the inner-step scaling the tau field carries
// only bounded jitter near coordinate-singular loci, and wide Richardson
// stencils average it out, while narrow ones would amplify it.
std::vector<double> tau_gradient(const Chart& c, const std::vector<double>& x) {
  const double st = step_tau(c);
  std::vector<double> d(c.n);
  for (int k = 0; k < c.n; ++k)
    d[k] = rich_scalar([&](double t) { return tau_at(c, shifted(x, k, t)); }, st);
  return d;
}

// Laplace-Beltrami of tau: the divergence form with the volume density.
double tau_laplacian(const Chart& c, const std::vector<double>& x) {
  const int n = c.n;
  const auto flux = [&](const std::vector<double>& y) {
    const Eigen::MatrixXd gy = eval_matrix(c.g, n, y);
    const Eigen::MatrixXd gyi = safe_inverse(gy);
    const double xi = volume_factor(gy);
    const std::vector<double> dty = tau_gradient(c, y);
    std::vector<double> v(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v[i] += xi * gyi(i, j) * dty[j];
    return v;
  };
  double div_flux = 0;
  for (int i = 0; i < n; ++i)
    div_flux += rich_scalar(
        [&](double t) { return flux(shifted(x, i, t))[i]; }, step_div(c));
  return div_flux / volume_factor(eval_matrix(c.g, n, x));
}

// kappa of tau*g through the conformal rescaling relation; only the scalar
// tau field is differenced, which stays stable near coordinate-singular loci.
double kappa_tilde_via_relation(const Chart& lc, const Chart& c,
                                const std::vector<double>& x, double tau) {
  const int n = c.n;
  const double kappa_g = tau_at(lc, x) / (n * (n - 1));
  const Eigen::MatrixXd ginv = safe_inverse(eval_matrix(c.g, n, x));
  const std::vector<double> dtau = tau_gradient(c, x);
  double grad2 = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) grad2 += ginv(i, j) * dtau[i] * dtau[j];
  const double lap = tau_laplacian(c, x);
  return kappa_g / tau - lap / (n * tau * tau) -
         0.25 * (n - 6) * grad2 / (n * tau * tau * tau);
}

}  // namespace

Chart make_chart(int n, std::vector<Expr> g, std::vector<Expr> phi,
                 std::vector<Axis> domain, double fd_step, bool riemannian,
                 std::optional<Expr> weight) {
  if (n < 3) throw DimensionError("chart: dimension must be at least 3");
  if (static_cast<int>(g.size()) != n * n)
    throw DimensionError("chart: metric needs n*n components");
  if (static_cast<int>(phi.size()) != n)
    throw DimensionError("chart: the 1-form needs n components");
  if (static_cast<int>(domain.size()) != n)
    throw DimensionError("chart: the domain needs n axes");
  if (!(fd_step > 0)) throw DimensionError("chart: fd_step must be positive");
  for (const Axis& a : domain)
    if (!(a.max > a.min)) throw DimensionError("chart: each axis needs max > min");
  Chart c;
  c.n = n;
  c.g = std::move(g);
  c.phi = std::move(phi);
  c.domain = std::move(domain);
  c.fd_step = fd_step;
  c.riemannian = riemannian;
  c.weight = std::move(weight);
  c.dg.reserve(static_cast<std::size_t>(n) * n * n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n * n; ++i) c.dg.push_back(c.g[i].diff(k));
  c.dphi.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c.dphi.push_back(c.phi[j].diff(i));
  return c;
}

Chart chart_from_json(const nlohmann::json& j) {
  for (const char* key : {"n", "g", "phi", "domain"})
    if (!j.contains(key))
      throw ParseError(std::string("chart json: missing field \"") + key + "\"");
  const int n = j["n"].get<int>();
  if (n < 2) throw ParseError("chart json: n must be at least 2");

  const auto parse_entry = [n](const nlohmann::json& e) {
    if (e.is_string()) return Expr::parse(e.get<std::string>(), n);
    if (e.is_number()) return Expr::constant(e.get<double>());
    throw ParseError("chart json: components must be strings or numbers");
  };

  std::vector<Expr> g;
  const auto& gj = j["g"];
  if (gj.is_array() && gj.size() == static_cast<std::size_t>(n) && gj[0].is_array()) {
    for (const auto& row : gj) {
      if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
        throw ParseError("chart json: g must be an n x n array");
      for (const auto& e : row) g.push_back(parse_entry(e));
    }
  } else if (gj.is_array() && gj.size() == static_cast<std::size_t>(n) * n) {
    for (const auto& e : gj) g.push_back(parse_entry(e));
  } else {
    throw ParseError("chart json: g must be an n x n array or a flat n*n array");
  }

  std::vector<Expr> phi(n);
  const auto& pj = j["phi"];
  if (!pj.is_array() || pj.size() != static_cast<std::size_t>(n))
    throw ParseError("chart json: phi must be an array of n components");
  for (int i = 0; i < n; ++i) phi[i] = parse_entry(pj[i]);

  std::vector<Axis> domain;
  const auto& dj = j["domain"];
  if (!dj.is_array() || dj.size() != static_cast<std::size_t>(n))
    throw ParseError("chart json: domain must be an array of n axes");
  for (const auto& a : dj) {
    if (!a.contains("min") || !a.contains("max"))
      throw ParseError("chart json: each axis needs min and max");
    Axis ax;
    ax.min = a["min"].get<double>();
    ax.max = a["max"].get<double>();
    ax.periodic = a.value("periodic", false);
    domain.push_back(ax);
  }

  const double fd_step = j.value("fd_step", 1e-4);
  const bool riemannian = j.value("riemannian", true);
  std::optional<Expr> weight;
  if (j.contains("weight")) weight = parse_entry(j["weight"]);
  return make_chart(n, std::move(g), std::move(phi), std::move(domain), fd_step,
                    riemannian, std::move(weight));
}

nlohmann::json chart_to_json(const Chart& c) {
  nlohmann::json j;
  j["n"] = c.n;
  nlohmann::json g = nlohmann::json::array();
  for (int i = 0; i < c.n; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < c.n; ++k) row.push_back(c.g[i * c.n + k].str());
    g.push_back(row);
  }
  j["g"] = g;
  nlohmann::json phi = nlohmann::json::array();
  for (const Expr& e : c.phi) phi.push_back(e.str());
  j["phi"] = phi;
  nlohmann::json domain = nlohmann::json::array();
  for (const Axis& a : c.domain)
    domain.push_back({{"min", a.min}, {"max", a.max}, {"periodic", a.periodic}});
  j["domain"] = domain;
  j["fd_step"] = c.fd_step;
  j["riemannian"] = c.riemannian;
  if (c.weight) j["weight"] = c.weight->str();
  return j;
}

Chart read_chart_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open chart file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid json in " + path + ": " + e.what());
  }
  return chart_from_json(j);
}

Chart gauge(const Chart& c, const Expr& f) {
  const Expr scale = exp(Expr::constant(2) * f);
  std::vector<Expr> g1;
  g1.reserve(c.g.size());
  for (const Expr& e : c.g) g1.push_back(scale * e);
  std::vector<Expr> phi1;
  phi1.reserve(c.phi.size());
  for (int i = 0; i < c.n; ++i) phi1.push_back(c.phi[i] - f.diff(i));
  return make_chart(c.n, std::move(g1), std::move(phi1), c.domain, c.fd_step,
                    c.riemannian, c.weight);
}

Chart riemannian_part(const Chart& c) {
  return make_chart(c.n, c.g, std::vector<Expr>(c.n), c.domain, c.fd_step,
                    c.riemannian, c.weight);
}

Eigen::MatrixXd metric_at(const Chart& c, const std::vector<double>& x) {
  check_point(c, x, 0.0);
  return eval_matrix(c.g, c.n, x);
}

std::vector<double> christoffel(const Chart& c, const std::vector<double>& x) {
  check_point(c, x, 0.0);
  const int n = c.n;
  const Eigen::MatrixXd g = eval_matrix(c.g, n, x);
  const Eigen::MatrixXd ginv = safe_inverse(g);
  std::vector<double> gamma = christoffel_lc(base_field(c), x);
  std::vector<double> phi(n), phi_up(n, 0.0);
  for (int i = 0; i < n; ++i) phi[i] = c.phi[i].eval(x);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) phi_up[k] += ginv(k, l) * phi[l];
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double add = -g(i, j) * phi_up[k];
        if (k == j) add += phi[i];
        if (k == i) add += phi[j];
        gamma[(static_cast<std::size_t>(k) * n + i) * n + j] += add;
      }
  return gamma;
}

std::vector<double> curvature_operator(const Chart& c, const std::vector<double>& x) {
  check_point(c, x, 2 * c.fd_step);
  const int n = c.n;
  const std::size_t n3 = static_cast<std::size_t>(n) * n * n;
  const std::vector<double> gamma = christoffel(c, x);
  // Plain second-order central differences at the chart step; the chart-level
  // convergence contract is O(fd_step^2).
  const double h = c.fd_step * inner_scale(c, x);
  std::vector<std::vector<double>> dgamma(n);
  for (int m = 0; m < n; ++m) {
    std::vector<double> plus = christoffel(c, shifted(x, m, h));
    std::vector<double> minus = christoffel(c, shifted(x, m, -h));
    dgamma[m].resize(n3);
    for (std::size_t t = 0; t < n3; ++t)
      dgamma[m][t] = (plus[t] - minus[t]) / (2 * h);
  }
  const auto G = [&](int k, int i, int j) {
    return gamma[(static_cast<std::size_t>(k) * n + i) * n + j];
  };
  const auto dG = [&](int m, int k, int i, int j) {
    return dgamma[m][(static_cast<std::size_t>(k) * n + i) * n + j];
  };
  std::vector<double> r(n3 * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = dG(i, l, j, k) - dG(j, l, i, k);
          for (int m = 0; m < n; ++m)
            v += G(l, i, m) * G(m, j, k) - G(l, j, m) * G(m, i, k);
          r[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l] = v;
        }
  return r;
}

Eigen::MatrixXd ricci_at(const Chart& c, const std::vector<double>& x) {
  const int n = c.n;
  const std::vector<double> r = curvature_operator(c, x);
  Eigen::MatrixXd ric(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double s = 0;
      for (int i = 0; i < n; ++i)
        s += r[((static_cast<std::size_t>(i) * n + j) * n + k) * n + i];
      ric(j, k) = s;
    }
  return ric;
}

double tau_at(const Chart& c, const std::vector<double>& x) {
  const Eigen::MatrixXd ric = ricci_at(c, x);
  const Eigen::MatrixXd ginv = safe_inverse(eval_matrix(c.g, c.n, x));
  return (ginv * ric).trace();
}

PointFrame curvature_at(const Chart& c, const std::vector<double>& x) {
  const int n = c.n;
  const std::vector<double> r = curvature_operator(c, x);
  const Eigen::MatrixXd g = eval_matrix(c.g, n, x);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  const Eigen::VectorXd ev = es.eigenvalues();  // ascending: negatives first
  int p = 0;
  for (int i = 0; i < n; ++i) {
    if (std::abs(ev(i)) < 1e-10)
      throw SingularMetric("chart: metric is singular at the requested point");
    if (ev(i) < 0) ++p;
  }
  Eigen::MatrixXd frame = es.eigenvectors();
  for (int a = 0; a < n; ++a) {
    frame.col(a) /= std::sqrt(std::abs(ev(a)));
    // Deterministic sign: largest-magnitude entry positive.
    int imax = 0;
    for (int i = 1; i < n; ++i)
      if (std::abs(frame(i, a)) > std::abs(frame(imax, a))) imax = i;
    if (frame(imax, a) < 0) frame.col(a) = -frame.col(a);
  }

  // Lowered components R_ijkl = g(R(d_i, d_j) d_k, d_l).
  std::vector<double> low(r.size(), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0;
          for (int m = 0; m < n; ++m)
            s += g(l, m) * r[((static_cast<std::size_t>(i) * n + j) * n + k) * n + m];
          low[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l] = s;
        }

  PointFrame out{x, Model(n, p, n - p, ScalarMode::Float64), Curv4<double>(Model(n, p, n - p, ScalarMode::Float64)), frame};
  // Contract one slot at a time to keep this O(n^5).
  std::vector<double> t1(r.size()), t2(r.size()), t3(r.size());
  const auto idx = [n](int a, int b, int cc, int d) {
    return ((static_cast<std::size_t>(a) * n + b) * n + cc) * n + d;
  };
  for (int a = 0; a < n; ++a)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0;
          for (int i = 0; i < n; ++i) s += frame(i, a) * low[idx(i, j, k, l)];
          t1[idx(a, j, k, l)] = s;
        }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0;
          for (int j = 0; j < n; ++j) s += frame(j, b) * t1[idx(a, j, k, l)];
          t2[idx(a, b, k, l)] = s;
        }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int cc = 0; cc < n; ++cc)
        for (int l = 0; l < n; ++l) {
          double s = 0;
          for (int k = 0; k < n; ++k) s += frame(k, cc) * t2[idx(a, b, k, l)];
          t3[idx(a, b, cc, l)] = s;
        }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int cc = 0; cc < n; ++cc)
        for (int d = 0; d < n; ++d) {
          double s = 0;
          for (int l = 0; l < n; ++l) s += frame(l, d) * t3[idx(a, b, cc, l)];
          out.a(a, b, cc, d) = s;
        }
  return out;
}

CanonicalData canonical(const Chart& c, const std::vector<double>& x) {
  check_point(c, x, 2 * (step_tau(c) + c.fd_step));
  const double tau = tau_at(c, x);
  if (tau < 1e-10) {
    const auto stratum = std::abs(tau) < 1e-10
                             ? NonpositiveScalarCurvature::Stratum::Zero
                             : NonpositiveScalarCurvature::Stratum::Negative;
    throw NonpositiveScalarCurvature(
        "chart: the trace of the curvature is not positive at this point", stratum);
  }
  CanonicalData out;
  out.tau = tau;
  out.g_tilde = tau * eval_matrix(c.g, c.n, x);
  const std::vector<double> dtau = tau_gradient(c, x);
  out.phi_tilde.resize(c.n);
  for (int k = 0; k < c.n; ++k)
    out.phi_tilde[k] = c.phi[k].eval(x) - 0.5 * dtau[k] / tau;
  const Eigen::MatrixXd ric = ricci_at(c, x);
  out.tau_tilde = (safe_inverse(out.g_tilde) * ric).trace();
  return out;
}

ScalarRelations scalar_relations(const Chart& c, const std::vector<double>& x) {
  const int n = c.n;
  if (!c.riemannian)
    throw SignatureError("chart: the scalar relations need a riemannian chart");
  check_point(c, x, 2 * (step_outer(c) + step_tau(c) + c.fd_step));
  const double tau = tau_at(c, x);
  if (tau < 1e-10) {
    const auto stratum = std::abs(tau) < 1e-10
                             ? NonpositiveScalarCurvature::Stratum::Zero
                             : NonpositiveScalarCurvature::Stratum::Negative;
    throw NonpositiveScalarCurvature(
        "chart: the trace of the curvature is not positive at this point", stratum);
  }

  ScalarRelations out;
  const Chart lc = riemannian_part(c);
  out.kappa_g = tau_at(lc, x) / (n * (n - 1));
  out.kappa_tilde =
      kappa_of_field(tilde_field(c), x, step_outer(c) * outer_scale(c, x));

  const Eigen::MatrixXd g = eval_matrix(c.g, n, x);
  const Eigen::MatrixXd ginv = safe_inverse(g);
  const std::vector<double> dtau = tau_gradient(c, x);

  double grad2 = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) grad2 += ginv(i, j) * dtau[i] * dtau[j];
  const double lap_tau = tau_laplacian(c, x);

  out.residual1 = n * out.kappa_tilde -
                  (n * out.kappa_g / tau - lap_tau / (tau * tau) -
                   0.25 * (n - 6) * grad2 / (tau * tau * tau));

  // Canonical 1-form and its divergence with respect to the rescaled metric.
  const auto tilde_flux = [&](const std::vector<double>& y) {
    const double ty = tau_at(c, y);
    const Eigen::MatrixXd gy = eval_matrix(c.g, n, y);
    const Eigen::MatrixXd gyi = safe_inverse(gy);
    const std::vector<double> dty = tau_gradient(c, y);
    std::vector<double> pt(n);
    for (int k = 0; k < n; ++k) pt[k] = c.phi[k].eval(y) - 0.5 * dty[k] / ty;
    // Xi_gt phi~^k = tau^{n/2 - 1} Xi_g g^{kj} phi~_j.
    const double fac = std::pow(ty, 0.5 * n - 1.0) * volume_factor(gy);
    std::vector<double> w(n, 0.0);
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) w[k] += fac * gyi(k, j) * pt[j];
    return w;
  };
  double div_tilde = 0;
  for (int k = 0; k < n; ++k)
    div_tilde += rich_scalar(
        [&](double t) { return tilde_flux(shifted(x, k, t))[k]; }, step_div(c));
  div_tilde /= std::pow(tau, 0.5 * n) * volume_factor(g);

  std::vector<double> pt(n);
  for (int k = 0; k < n; ++k) pt[k] = c.phi[k].eval(x) - 0.5 * dtau[k] / tau;
  double pt2 = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) pt2 += ginv(i, j) * pt[i] * pt[j] / tau;

  out.residual2 = 1.0 - (n * (n - 1) * out.kappa_tilde - 2 * (n - 1) * div_tilde -
                         (n - 1) * (n - 2) * pt2);
  return out;
}

BianchiResiduals bianchi_residuals(const Chart& c, const std::vector<double>& x) {
  const int n = c.n;
  check_point(c, x, 2 * (step_bianchi(c) + c.fd_step));
  const std::size_t n4 = static_cast<std::size_t>(n) * n * n * n;
  const std::vector<double> gamma = christoffel(c, x);
  const std::vector<double> r = curvature_operator(c, x);
  const Eigen::MatrixXd g = eval_matrix(c.g, n, x);

  const auto G = [&](int k, int i, int j) {
    return gamma[(static_cast<std::size_t>(k) * n + i) * n + j];
  };
  const auto R = [&](int i, int j, int k, int l) {
    return r[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l];
  };

  // Coordinate derivatives of the curvature operator.
  const double sb = step_bianchi(c) * outer_scale(c, x);
  std::vector<std::vector<double>> dr(n);
  for (int m = 0; m < n; ++m)
    dr[m] = rich_vector(
        [&](double t) { return curvature_operator(c, shifted(x, m, t)); }, sb);
  const auto dR = [&](int m, int i, int j, int k, int l) {
    return dr[m][((static_cast<std::size_t>(i) * n + j) * n + k) * n + l];
  };

  // covd[m][ijkl] = covariant derivative of the (1,3) curvature, upper slot l.
  std::vector<std::vector<double>> covd(n, std::vector<double>(n4));
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            double v = dR(m, i, j, k, l);
            for (int s = 0; s < n; ++s)
              v += G(l, m, s) * R(i, j, k, s) - G(s, m, i) * R(s, j, k, l) -
                   G(s, m, j) * R(i, s, k, l) - G(s, m, k) * R(i, j, s, l);
            covd[m][((static_cast<std::size_t>(i) * n + j) * n + k) * n + l] = v;
          }
  const auto CD = [&](int m, int i, int j, int k, int l) {
    return covd[m][((static_cast<std::size_t>(i) * n + j) * n + k) * n + l];
  };

  BianchiResiduals out;
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            out.operator_identity =
                std::max(out.operator_identity,
                         std::abs(CD(m, i, j, k, l) + CD(i, j, m, k, l) +
                                  CD(j, m, i, k, l)));

  // Lowered covariant derivative: nabla_m R_ijkl = g_ls nabla_m R_ijk^s
  //                                               + (nabla_m g)_ls R_ijk^s,
  // with nabla g = -2 phi (x) g for the Weyl connection.
  std::vector<double> phi(n);
  for (int i = 0; i < n; ++i) phi[i] = c.phi[i].eval(x);
  const auto low = [&](int i, int j, int k, int l) {
    double s = 0;
    for (int m = 0; m < n; ++m) s += g(l, m) * R(i, j, k, m);
    return s;
  };
  const auto CDlow = [&](int m, int i, int j, int k, int l) {
    double v = -2 * phi[m] * low(i, j, k, l);
    for (int s = 0; s < n; ++s) v += g(l, s) * CD(m, i, j, k, s);
    return v;
  };
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            const double cyc = CDlow(m, i, j, k, l) + CDlow(i, j, m, k, l) +
                               CDlow(j, m, i, k, l);
            const double corr = -2 * (phi[m] * low(i, j, k, l) +
                                      phi[i] * low(j, m, k, l) +
                                      phi[j] * low(m, i, k, l));
            out.lowered_identity = std::max(out.lowered_identity, std::abs(cyc - corr));
            out.lowered_uncorrected = std::max(out.lowered_uncorrected, std::abs(cyc));
          }

  // Contracted identity: nabla_m Ric_jk - nabla_j Ric_mk + nabla_i R_jmk^i = 0.
  Eigen::MatrixXd ric(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += R(i, j, k, i);
      ric(j, k) = s;
    }
  std::vector<Eigen::MatrixXd> dric(n, Eigen::MatrixXd(n, n));
  for (int m = 0; m < n; ++m)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = 0;
        for (int i = 0; i < n; ++i) s += dR(m, i, j, k, i);
        dric[m](j, k) = s;
      }
  const auto CDric = [&](int m, int j, int k) {
    double v = dric[m](j, k);
    for (int s = 0; s < n; ++s)
      v -= G(s, m, j) * ric(s, k) + G(s, m, k) * ric(j, s);
    return v;
  };
  for (int m = 0; m < n; ++m)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double div = 0;
        for (int i = 0; i < n; ++i) div += CD(i, j, m, k, i);
        out.contracted_first = std::max(
            out.contracted_first, std::abs(CDric(m, j, k) - CDric(j, m, k) + div));
      }

  // Cyclic covariant derivative of the skew Ricci part vanishes.
  for (int m = 0; m < n; ++m)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const auto skew = [&](int a, int b, int cc) {
          return 0.5 * (CDric(a, b, cc) - CDric(a, cc, b));
        };
        out.contracted_second =
            std::max(out.contracted_second,
                     std::abs(skew(m, j, k) + skew(j, k, m) + skew(k, m, j)));
      }
  return out;
}

IntegralReport integrate(const Chart& c, int resolution) {
  const int n = c.n;
  if (!c.riemannian)
    throw SignatureError("chart: the integral checks need a riemannian chart");
  if (resolution < 2) throw DimensionError("integrate: resolution must be at least 2");
  std::vector<QuadRule> rules;
  for (const Axis& a : c.domain)
    rules.push_back(a.periodic ? periodic_uniform(resolution, a.min, a.max)
                               : gauss_legendre(resolution, a.min, a.max));

  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(resolution);

  struct Partial {
    double curv = 0, bound = 0, vol = 0;
  };
  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<Partial> partials(threads);
  std::vector<std::exception_ptr> errors(threads);

  const Chart lc = riemannian_part(c);
  const auto worker = [&](unsigned tid) {
    try {
      Partial& p = partials[tid];
      std::vector<double> x(n);
      for (std::size_t flat = tid; flat < total; flat += threads) {
        std::size_t rest = flat;
        double w = 1;
        for (int i = n - 1; i >= 0; --i) {
          const std::size_t idx = rest % resolution;
          rest /= resolution;
          x[i] = rules[i].nodes[idx];
          w *= rules[i].weights[idx];
        }
        if (c.weight) w *= c.weight->eval(x);
        const double tau = tau_at(c, x);
        if (tau < 1e-10)
          throw NonpositiveScalarCurvature(
              "integrate: the trace of the curvature is not positive on the grid",
              std::abs(tau) < 1e-10 ? NonpositiveScalarCurvature::Stratum::Zero
                                    : NonpositiveScalarCurvature::Stratum::Negative);
        const double kappa = tau_at(lc, x) / (n * (n - 1));
        const double kappa_t = kappa_tilde_via_relation(lc, c, x, tau);
        const double xi = volume_factor(eval_matrix(c.g, n, x));
        p.curv += w * kappa_t * std::pow(tau, 0.5 * n) * xi;
        p.bound += w * kappa * std::pow(tau, 0.5 * n - 1.0) * xi;
        p.vol += w * std::pow(tau, 0.5 * n) * xi;
      }
    } catch (...) {
      errors[tid] = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker, t);
  worker(0);
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  IntegralReport out;
  for (const Partial& p : partials) {
    out.total_tilde_curvature += p.curv;
    out.conformal_bound += p.bound;
    out.tilde_volume += p.vol;
  }
  out.curvature_times_nn1 = n * (n - 1) * out.total_tilde_curvature;
  out.gap_curvature = out.total_tilde_curvature - out.conformal_bound;
  out.gap_volume = out.curvature_times_nn1 - out.tilde_volume;
  return out;
}

}  // namespace weyl
