// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.

#include "weyl/builders.hpp"
#include "weyl/chart.hpp"
#include "weyl/decomp.hpp"
#include "weyl/dims.hpp"
#include "weyl/spaces.hpp"
#include "weyl/traces.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

using namespace weyl;
using R = Rational;

namespace {

std::vector<Model> battery_models(ScalarMode mode = ScalarMode::Exact) {
  std::vector<Model> out;
  for (int n = 3; n <= 6; ++n) {
    out.emplace_back(n, 0, n, mode);
    out.emplace_back(n, 1, n - 1, mode);
  }
  return out;
}

bool zero(const Bilinear<R>& t) { return t.max_abs() == R(0); }
bool zero(const Curv4<R>& t) { return t.max_abs() == R(0); }

Bilinear<R> scaled(Bilinear<R> b, const R& c) {
  b *= c;
  return b;
}
Curv4<R> scaled4(Curv4<R> a, const R& c) {
  a *= c;
  return a;
}

Curv4<R> hwh(const Model& m) {
  const auto h = metric_bilinear<R>(m);
  return wedge(h, h);
}

// ------------------------------------------------------------- criterion 1

bool criterion1() {
  bool ok = true;
  const SpaceTag spaces[] = {SpaceTag::GenCurv, SpaceTag::Algebraic,
                             SpaceTag::Weyl,    SpaceTag::W6,
                             SpaceTag::W7,      SpaceTag::W8,
                             SpaceTag::Sym,     SpaceTag::Sym0,
                             SpaceTag::Alt};
  for (const Model& m : battery_models()) {
    for (SpaceTag s : spaces)
      ok = ok && module_dimension(s, m) == dimension_formula(s, m.n());
    ok = ok && module_dimension(SpaceTag::Weyl, m) ==
                   module_dimension(SpaceTag::Algebraic, m) +
                       m.n() * (m.n() - 1) / 2;
  }
  const Model m4(4, 0, 4, ScalarMode::Exact);
  ok = ok && module_dimension(SpaceTag::GenCurv, m4) == 80;
  ok = ok && module_dimension(SpaceTag::Algebraic, m4) == 20;
  ok = ok && module_dimension(SpaceTag::W6, m4) == 10;
  ok = ok && module_dimension(SpaceTag::W7, m4) == 30;
  ok = ok && module_dimension(SpaceTag::W8, m4) == 9;
  ok = ok && module_dimension(SpaceTag::Sym0, m4) == 9;
  ok = ok && module_dimension(SpaceTag::Alt, m4) == 6;
  const Model m3(3, 0, 3, ScalarMode::Exact);
  ok = ok && module_dimension(SpaceTag::W6, m3) == 0;
  ok = ok && module_dimension(SpaceTag::W8, m3) == 0;
  return ok;
}

// -------------------------------------------------- criteria 2 and 3 (joint)

struct Crit23 {
  bool c2 = true;
  bool c3 = true;
};

Crit23 criteria2and3() {
  Crit23 out;
  for (const Model& m : battery_models()) {
    const int n = m.n();
    const auto h = metric_bilinear<R>(m);
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
      const auto a = random_curv<R>(SpaceTag::Weyl, m, seed);
      const auto al = alpha_all(a);
      const auto pw = pi_all(a);
      Curv4<R> sa(m), sp(m);
      for (int i = 0; i < 8; ++i) {
        sa += al[i];
        sp += pw[i];
      }
      out.c2 = out.c2 && zero(sa - a) && zero(sp - a) && zero(al[2]) &&
               zero(al[6]) && zero(al[7]) && zero(pw[6]) && zero(pw[7]) &&
               zero(al[5] - pw[5]);

      const auto r = ricci(a);
      const auto sric = sym_part(r);
      const auto lam = alt_part(r);
      const auto tauh = scaled(h, scalar_tau(a) * scalar_frac<R>(1, n));

      // Ricci and Ricci* of the A-decomposition components.
      out.c3 = out.c3 && zero(ricci(al[0]) - tauh) &&
               zero(ricci_star(al[0]) - tauh) &&
               zero(ricci(al[1]) - (sric - tauh)) &&
               zero(ricci_star(al[1]) - (sric - tauh));
      const auto want4 =
          scaled(lam, scalar_frac<R>(n + 2, 2 * static_cast<long long>(n)));
      out.c3 = out.c3 && zero(ricci(al[3]) - want4) &&
               zero(ricci_star(al[3]) + want4);
      const auto want5 =
          scaled(lam, scalar_frac<R>(n - 2, 2 * static_cast<long long>(n)));
      out.c3 = out.c3 && zero(ricci(al[4]) - want5) &&
               zero(ricci_star(al[4]) - scaled(want5, R(3)));
      out.c3 = out.c3 && zero(ricci(al[5])) && zero(ricci_star(al[5]));

      // Ricci and Ricci* of the W-decomposition components.
      out.c3 = out.c3 && zero(ricci(pw[0]) - tauh) &&
               zero(ricci_star(pw[0]) - tauh);
      const auto rp2 = ricci(pw[1]);
      out.c3 = out.c3 && zero(rp2 - (sric - tauh)) &&
               zero(scaled(ricci_star(pw[1]), R(-(n - 1))) - rp2);
      const auto rp3 = ricci(pw[2]);
      out.c3 = out.c3 && zero(rp3 - lam) &&
               zero(scaled(ricci_star(pw[2]), scalar_frac<R>(-(n + 1), 3)) - rp3);
      out.c3 = out.c3 && zero(ricci(pw[3])) &&
               zero(ricci_star(pw[3]) -
                    scaled(lam, scalar_frac<R>(
                                    static_cast<long long>(n - 2) * (n + 2),
                                    static_cast<long long>(n) * (n + 1))));
      out.c3 = out.c3 && zero(ricci(pw[4])) &&
               zero(scaled(ricci_star(pw[4]), R(n - 1)) -
                    (scaled(sric, R(n)) - scaled(h, scalar_tau(a))));
      out.c3 = out.c3 && zero(ricci(pw[5])) && zero(ricci_star(pw[5]));
    }
  }

  // Float mode: reconstruction to 1e-9 relative.
  for (const Model& me : battery_models(ScalarMode::Float64)) {
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
      const auto a = random_curv<double>(SpaceTag::Weyl, me, seed);
      const auto al = alpha_all(a);
      const auto pw = pi_all(a);
      Curv4<double> sa(me), sp(me);
      for (int i = 0; i < 8; ++i) {
        sa += al[i];
        sp += pw[i];
      }
      const double scale = a.max_abs() > 0 ? a.max_abs() : 1.0;
      out.c2 = out.c2 && (sa - a).max_abs() <= 1e-9 * scale &&
               (sp - a).max_abs() <= 1e-9 * scale;
    }
  }
  return out;
}

// ------------------------------------------------------------- criterion 4

std::vector<Curv4<R>> mixed_samples(const Model& m, int per_kind) {
  std::vector<Curv4<R>> out;
  for (int k = 0; k < per_kind; ++k) {
    out.push_back(random_curv<R>(SpaceTag::Weyl, m, 100 + k));
    out.push_back(random_curv<R>(SpaceTag::Algebraic, m, 200 + k));
    const auto phi = random_bilinear<R>(SpaceTag::Alt, m, 300 + k);
    out.push_back(higa_generator(phi));
    Curv4<R> mix = random_curv<R>(SpaceTag::Algebraic, m, 400 + k);
    mix += higa_generator(random_bilinear<R>(SpaceTag::Alt, m, 500 + k));
    out.push_back(mix);
  }
  return out;
}

bool criterion4() {
  bool ok = true;
  for (const Model& m : battery_models()) {
    const int n = m.n();
    const auto h = metric_bilinear<R>(m);
    for (const auto& a : mixed_samples(m, 10)) {
      const auto al = alpha_all(a);
      const auto pw = pi_all(a);
      const auto ha = higa(a);
      const auto lam = lambda_ricci(a);

      ok = ok && zero(ha - (al[3] + al[4])) && zero(ha - (pw[2] + pw[3]));
      Curv4<R> closed = tensor_dot(lam, h);
      closed *= R(2);
      closed += wedge_r(lam, h, R(1));
      closed *= scalar_frac<R>(-1, n);
      ok = ok && zero(ha - closed);
      ok = ok && membership(a - ha, SpaceTag::Algebraic).holds;

      // Defect-tensor identities, and the conjugate through the split.
      const auto d = d_tensor(a);
      Curv4<R> lhs = scaled4(ha, R(-4));
      Curv4<R> rhs(m);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
              rhs(i, j, k, l) = R(2) * d(i, j, k, l) + d(i, k, j, l) -
                                d(j, k, i, l) - d(i, l, j, k) + d(j, l, i, k);
      ok = ok && zero(lhs - rhs);
      Curv4<R> dsum(m);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
              dsum(i, j, k, l) = -(ha(i, j, k, l) + ha(i, j, l, k));
      ok = ok && zero(d - dsum);
      const auto algpart = al[0] + al[1] + al[5];
      Curv4<R> conj_want(m);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
              conj_want(i, j, k, l) = algpart(i, j, k, l) - ha(i, j, l, k);
      ok = ok && zero(conjugate(a) - conj_want);

      // Seven equivalent vanishing conditions, evaluated as a truth table.
      const bool flags[] = {zero(lam),
                            zero(al[3]),
                            zero(al[4]),
                            zero(ha),
                            zero(pw[2]),
                            zero(pw[3]),
                            membership(a, SpaceTag::Algebraic).holds};
      for (bool f : flags) ok = ok && f == flags[0];
    }
  }
  return ok;
}

// ------------------------------------------------------------- criterion 5

bool criterion5() {
  bool ok = true;
  for (const Model& m : battery_models()) {
    const int n = m.n();
    const auto h = metric_bilinear<R>(m);
    for (const auto& a : mixed_samples(m, 8)) {
      const auto astar = conjugate(a);
      const auto r = ricci(a);
      const auto rs = ricci_star(a);

      // Symmetric parts agree, the skew part picks up (n-4)/n, and the
      // metric trace of Ric* recovers tau.
      ok = ok && zero(sym_part(rs) - sym_part(r));
      ok = ok && zero(alt_part(rs) - scaled(alt_part(r), scalar_frac<R>(n - 4, n)));
      R tau_star(0);
      for (int i = 0; i < n; ++i) tau_star += R(m.h(i)) * rs(i, i);
      ok = ok && tau_star == scalar_tau(a);

      if (n == 4) {
        ok = ok && zero(alt_part(rs)) && zero(rs - sym_part(rs));
      } else {
        Curv4<R> defect(m);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
              for (int l = 0; l < n; ++l)
                defect(i, j, k, l) = astar(i, j, k, l) + astar(i, j, l, k);
        Curv4<R> want = tensor_dot(lambda_ricci(astar), h);
        want *= scalar_frac<R>(4, n - 4);
        ok = ok && zero(defect - want);
      }

      // The conjugate satisfies the cyclic identity exactly when the
      // original tensor is algebraic.
      ok = ok && (membership(a, SpaceTag::Algebraic).holds ==
                  membership(astar, SpaceTag::GenCurv).holds);

      // Contractions of the directional and length parts.
      Curv4<R> kpart = a + astar;
      kpart *= scalar_frac<R>(1, 2);
      Curv4<R> fpart = a - astar;
      fpart *= scalar_frac<R>(1, 2);
      Bilinear<R> half_sum = r + rs;
      half_sum *= scalar_frac<R>(1, 2);
      ok = ok && zero(ricci(kpart) - half_sum);
      ok = ok && zero(sym_part(ricci(kpart)) - sym_part(r));
      ok = ok && zero(alt_part(ricci(kpart)) -
                      scaled(alt_part(r), scalar_frac<R>(n - 2, n)));
      ok = ok &&
           zero(ricci(fpart) - scaled(alt_part(r), scalar_frac<R>(2, n)));
      ok = ok && zero(sym_part(ricci(fpart)));

      // The directional part is antisymmetric in the last slots.
      bool anti = true;
      for (int i = 0; i < n && anti; ++i)
        for (int j = 0; j < n && anti; ++j)
          for (int k = 0; k < n && anti; ++k)
            for (int l = 0; l < n && anti; ++l)
              anti = kpart(i, j, k, l) == -kpart(i, j, l, k);
      ok = ok && anti;
    }
  }
  return ok;
}

// ------------------------------------------------------------- criterion 6

bool criterion6() {
  bool ok = true;
  for (const Model& m : battery_models()) {
    const int n = m.n();
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto a = random_curv<R>(SpaceTag::Weyl, m, seed);
      const auto p = projective(a);
      ok = ok && zero(ricci(p));
      ok = ok && zero(p - (pi_w(a, 4) + pi_w(a, 5) + pi_w(a, 6)));
    }
    // Vanishing projective part forces constant curvature type.
    Curv4<R> cc = hwh(m);
    cc *= R(5);
    ok = ok && zero(projective(cc));
    Curv4<R> want = hwh(m);
    want *= scalar_tau(cc) *
            scalar_frac<R>(-1, static_cast<long long>(n) * (n - 1));
    ok = ok && zero(cc - want);
    const auto w = random_curv<R>(SpaceTag::Weyl, m, 50);
    if (!zero(pi_w(w, 5))) {
      const Curv4<R> perturbed = cc + w;
      ok = ok && !zero(pi_w(perturbed, 5)) && !zero(projective(perturbed));
    }
  }
  return ok;
}

// ------------------------------------------------------------- criterion 7

bool einstein_flags_consistent(const Curv4<R>& a) {
  const auto al = alpha_all(a);
  const auto pw = pi_all(a);
  const auto sric = sym_part(ricci(a));
  const bool flags[] = {
      classify(a).is_einstein_weyl,
      zero(a - (al[0] + al[5] + al[3] + al[4])),
      zero(a - (pw[0] + pw[2] + pw[3] + pw[5])),
      zero(al[1]),
      zero(pw[1]),
      zero(pw[4]),
      zero(ricci(al[1])),
      zero(ricci_star(al[1])),
      zero(ricci(pw[1])),
      zero(ricci_star(pw[1])),
      zero(ricci_star(pw[4])),
      zero(ricci_star(al[0]) - sric),
      zero(ricci(pw[0]) - sric),
      zero(ricci_star(pw[0]) - sric),
      zero(ricci(al[0]) - sric),
  };
  for (bool f : flags)
    if (f != flags[0]) return false;
  return true;
}

bool criterion7() {
  bool ok = true;
  const auto models = battery_models();
  int einstein_count = 0, generic_count = 0;
  for (std::uint64_t seed = 0; einstein_count < 200 || generic_count < 200;
       ++seed) {
    const Model& m = models[seed % models.size()];
    if (einstein_count < 200) {
      // Einstein-Weyl sample: Ricci-flat part + pure 2-form block + constant
      // curvature part.
      Curv4<R> a = alpha(random_curv<R>(SpaceTag::Weyl, m, seed), 6);
      a += higa_generator(random_bilinear<R>(SpaceTag::Alt, m, seed + 900));
      Curv4<R> cc = hwh(m);
      cc *= R(static_cast<long long>(seed % 7) - 3);
      a += cc;
      ok = ok && classify(a).is_einstein_weyl && einstein_flags_consistent(a);
      ++einstein_count;
    }
    if (generic_count < 200) {
      const auto b = random_curv<R>(SpaceTag::Weyl, m, seed + 5000);
      const auto sric = sym_part(ricci(b));
      Bilinear<R> hpart = metric_bilinear<R>(m);
      hpart *= scalar_tau(b) * scalar_frac<R>(1, m.n());
      if (!zero(sric - hpart)) {
        ok = ok && !classify(b).is_einstein_weyl &&
             einstein_flags_consistent(b);
        ++generic_count;
      }
    }
  }
  return ok;
}

// -------------------------------------------------------- chart fixtures

std::vector<Expr> flat_metric(int n) {
  std::vector<Expr> g(n * n);
  for (int i = 0; i < n; ++i) g[i * n + i] = Expr::constant(1);
  return g;
}

std::vector<Axis> periodic_box(int n) {
  return std::vector<Axis>(n, Axis{0, 2 * M_PI, true});
}

Chart theta_chart(int n, double fd_step = 1e-4) {
  std::vector<Expr> phi(n);
  phi[0] = Expr::parse("0.3 + 0.1*sin(x1)", n);
  return make_chart(n, flat_metric(n), phi, periodic_box(n), fd_step);
}

Chart conformal_chart(int n, double fd_step = 1e-4) {
  std::vector<Expr> g(n * n);
  for (int i = 0; i < n; ++i) g[i * n + i] = Expr::parse("0.3 + 0.1*sin(x1)", n);
  return make_chart(n, g, std::vector<Expr>(n), periodic_box(n), fd_step);
}

Chart hopf_chart(std::vector<Expr> phi = std::vector<Expr>(3)) {
  const int n = 3;
  std::vector<Expr> g(n * n);
  g[0] = Expr::constant(1);
  g[n + 1] = Expr::parse("cos(x1)^2", n);
  g[2 * n + 2] = Expr::parse("sin(x1)^2", n);
  std::vector<Axis> dom{{0, M_PI / 2, false}, {0, 2 * M_PI, true},
                        {0, 2 * M_PI, true}};
  return make_chart(n, std::move(g), std::move(phi), std::move(dom));
}

double theta_of(const std::vector<double>& x) { return 0.3 + 0.1 * std::sin(x[0]); }
double theta_p(const std::vector<double>& x) { return 0.1 * std::cos(x[0]); }
double theta_pp(const std::vector<double>& x) { return -0.1 * std::sin(x[0]); }

std::vector<double> random_point(const Chart& c, std::mt19937& rng,
                                 double margin) {
  std::vector<double> x(c.n);
  for (int i = 0; i < c.n; ++i) {
    const Axis& a = c.domain[i];
    const double lo = a.periodic ? a.min : a.min + margin;
    const double hi = a.periodic ? a.max : a.max - margin;
    x[i] = std::uniform_real_distribution<double>(lo, hi)(rng);
  }
  return x;
}

// ------------------------------------------------------------- criterion 8

bool criterion8() {
  bool ok = true;
  const int n = 4;
  std::mt19937 rng(8);

  // Flat fixture: closed forms at the default step.
  {
    const Chart c = theta_chart(n);
    for (int trial = 0; trial < 5; ++trial) {
      const auto x = random_point(c, rng, 0);
      const double th = theta_of(x), thp = theta_p(x);
      const auto gamma = christoffel(c, x);
      auto G = [&](int k, int i, int j) { return gamma[(k * n + i) * n + j]; };
      for (int i = 1; i < n; ++i)
        ok = ok && std::abs(G(0, 0, 0) - th) <= 1e-9 &&
             std::abs(G(i, 0, i) - th) <= 1e-9 &&
             std::abs(G(0, i, i) + th) <= 1e-9;
      const auto r = curvature_operator(c, x);
      auto Rv = [&](int i, int j, int k, int l) {
        return r[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l];
      };
      for (int i = 1; i < n; ++i) ok = ok && std::abs(Rv(0, i, i, 0) + thp) <= 1e-6;
      for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j)
          if (i != j) ok = ok && std::abs(Rv(i, j, j, i) + th * th) <= 1e-6;
      const double tau_expected = -2 * (n - 1) * thp - (n - 1) * (n - 2) * th * th;
      ok = ok && std::abs(tau_at(c, x) - tau_expected) <= 1e-6;
    }
  }

  // FD error drops about 4x when the step halves.
  {
    const std::vector<double> x{1.0, 0.2, 0.3, 0.4};
    const double thp = theta_p(x);
    double prev = 0;
    int level = 0;
    for (double hstep : {2e-2, 1e-2}) {
      const Chart c = theta_chart(n, hstep);
      const auto r = curvature_operator(c, x);
      const double err = std::abs(r[((0 * n + 1) * n + 1) * n + 0] + thp);
      if (level > 0) {
        const double ratio = prev / err;
        ok = ok && ratio > 3.2 && ratio < 4.8;
      }
      prev = err;
      ++level;
    }
  }

  // Conformal fixture: closed forms.
  {
    const Chart c = conformal_chart(n);
    for (int trial = 0; trial < 5; ++trial) {
      const auto x = random_point(c, rng, 0);
      const double th = theta_of(x), thp = theta_p(x), thpp = theta_pp(x);
      const auto r = curvature_operator(c, x);
      auto Rv = [&](int i, int j, int k, int l) {
        return r[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l];
      };
      const double exp1 = -0.5 * thpp / th + 0.5 * thp * thp / (th * th);
      const double expij = -0.25 * thp * thp / (th * th);
      for (int i = 1; i < n; ++i) ok = ok && std::abs(Rv(0, i, i, 0) - exp1) <= 1e-6;
      for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j)
          if (i != j) ok = ok && std::abs(Rv(i, j, j, i) - expij) <= 1e-6;
    }
  }

  // Least-squares recovery of the six rescaling constants.
  {
    const Chart c = conformal_chart(n);
    Eigen::VectorXd y(10), th(10), lap(10), grad2(10);
    for (int k = 0; k < 10; ++k) {
      std::vector<double> x(n, 0.7);
      x[0] = 0.35 + 0.55 * k;
      y(k) = n * tau_at(c, x) / (n * (n - 1));
      th(k) = theta_of(x);
      lap(k) = theta_pp(x);
      grad2(k) = theta_p(x) * theta_p(x);
    }
    double best_res = 1e300, a1 = 0, a3 = 0;
    int a2 = 0, a4 = 0;
    for (int e2 = -5; e2 <= 0; ++e2)
      for (int e4 = -5; e4 <= 0; ++e4) {
        Eigen::MatrixXd basis(10, 2);
        for (int k = 0; k < 10; ++k) {
          basis(k, 0) = std::pow(th(k), e2) * lap(k);
          basis(k, 1) = std::pow(th(k), e4) * grad2(k);
        }
        const Eigen::VectorXd coef = basis.colPivHouseholderQr().solve(y);
        const double res = (basis * coef - y).norm();
        if (res < best_res) {
          best_res = res;
          a1 = coef(0);
          a3 = coef(1);
          a2 = e2;
          a4 = e4;
        }
      }
    ok = ok && a2 == -2 && a4 == -3 && std::abs(a1 + 1.0) <= 1e-4 &&
         std::abs(a3 + (n - 6) / 4.0) <= 1e-4 && best_res <= 1e-4;

    const Chart tc = theta_chart(n);
    Eigen::MatrixXd basis(10, 2);
    Eigen::VectorXd y2(10);
    for (int k = 0; k < 10; ++k) {
      std::vector<double> x(n, 1.1);
      x[0] = 0.25 + 0.6 * k;
      y2(k) = tau_at(tc, x);
      basis(k, 0) = theta_p(x);
      basis(k, 1) = theta_of(x) * theta_of(x);
    }
    const Eigen::VectorXd coef = basis.colPivHouseholderQr().solve(y2);
    ok = ok && std::abs(coef(0) + 2.0 * (n - 1)) <= 1e-4 &&
         std::abs(coef(1) + 1.0 * (n - 1) * (n - 2)) <= 1e-4;
  }
  return ok;
}

// ------------------------------------------------------------- criterion 9

double scaled_gap(const Curv4<double>& a, const Curv4<double>& b, double s) {
  double mg = 0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    mg = std::max(mg, std::abs(s * a.data()[i] - b.data()[i]));
  return mg;
}

bool criterion9() {
  bool ok = true;
  std::mt19937 rng(9);
  const std::vector<Chart> charts{theta_chart(4), conformal_chart(4),
                                  hopf_chart()};
  for (const Chart& base : charts) {
    // Membership residual bounded by C * fd_step^2 (C = 10; the sphere
    // chart saturates about 2.5 fd_step^2, the flat ones are exact).
    for (int k = 0; k < 20; ++k) {
      const auto x = random_point(base, rng, 0.15);
      const auto rep = membership(curvature_at(base, x).a, SpaceTag::Weyl, 1.0);
      ok = ok && rep.worst_residual <= 10 * base.fd_step * base.fd_step;
    }

    // Gauge invariance across f = 0.2 sin x1.
    const Chart other = gauge(base, Expr::parse("0.2*sin(x1)", base.n));
    for (int k = 0; k < 5; ++k) {
      const auto x = random_point(base, rng, 0.15);
      const double e2f = std::exp(0.4 * std::sin(x[0]));
      ok = ok && (ricci_at(base, x) - ricci_at(other, x)).cwiseAbs().maxCoeff()
                     <= 1e-7;
      const PointFrame p0 = curvature_at(base, x);
      const PointFrame p1 = curvature_at(other, x);
      const double scale = std::max(1.0, p0.a.max_abs());
      // Frame quantities carry conformal weight; remove it and compare.
      ok = ok && scaled_gap(p1.a, p0.a, e2f) <= 1e-7 * scale;
      Bilinear<double> f0 = length_form(p0.a);
      Bilinear<double> f1 = length_form(p1.a);
      f1 *= e2f;
      ok = ok && (f1 - f0).max_abs() <= 1e-6 * scale;
      const auto a0 = alpha_all(p0.a, 1e-6);
      const auto a1c = alpha_all(p1.a, 1e-6);
      const auto q0 = pi_all(p0.a, 1e-6);
      const auto q1 = pi_all(p1.a, 1e-6);
      for (int i = 0; i < 8; ++i)
        ok = ok && scaled_gap(a1c[i], a0[i], e2f) <= 1e-6 * scale &&
             scaled_gap(q1[i], q0[i], e2f) <= 1e-6 * scale;
      const auto c0 = classify(p0.a, 1e-6);
      const auto c1 = classify(p1.a, 1e-6);
      ok = ok && c0.is_algebraic == c1.is_algebraic &&
           c0.is_trivial_pointwise == c1.is_trivial_pointwise &&
           c0.is_einstein_weyl == c1.is_einstein_weyl &&
           c0.is_constant_curvature_type == c1.is_constant_curvature_type &&
           c0.is_ricci_flat == c1.is_ricci_flat;
    }
  }
  return ok;
}

// ------------------------------------------------------------ criterion 10

bool criterion10() {
  bool ok = true;
  const int n = 4;
  std::vector<Expr> phi(n);
  phi[0] = Expr::parse("0.3 + 0.1*sin(x2)", n);
  const std::vector<double> x{1.0, 0.7, 2.2, 0.4};
  double prev_op = -1, prev_low = -1, prev_c1 = -1;
  for (double h : {2e-2, 1e-2}) {
    const Chart c = make_chart(n, flat_metric(n), phi, periodic_box(n), h);
    const auto br = bianchi_residuals(c, x);
    if (prev_op >= 0) {
      ok = ok && prev_op / br.operator_identity > 3.0 &&
           prev_op / br.operator_identity < 5.2 &&
           prev_low / br.lowered_identity > 3.0 &&
           prev_c1 / br.contracted_first > 3.0;
    }
    prev_op = br.operator_identity;
    prev_low = br.lowered_identity;
    prev_c1 = br.contracted_first;
    ok = ok && br.lowered_uncorrected >= 1e-2;
  }
  const Chart c = make_chart(n, flat_metric(n), phi, periodic_box(n));
  const auto br = bianchi_residuals(c, x);
  ok = ok && br.operator_identity <= 1e-6 && br.lowered_identity <= 1e-6 &&
       br.contracted_first <= 1e-6 && br.lowered_uncorrected >= 1e-2;
  return ok;
}

// ------------------------------------------------------------ criterion 11

bool criterion11() {
  bool ok = true;
  const double ref = std::sqrt(6.0) * 2 * M_PI * M_PI;
  const double vol_ref = 6.0 * ref;
  const double tol = 1e-4;

  const auto round_rep = integrate(hopf_chart(), 10);
  ok = ok && std::abs(round_rep.total_tilde_curvature / ref - 1) <= tol &&
       std::abs(round_rep.conformal_bound / ref - 1) <= tol &&
       std::abs(round_rep.tilde_volume / vol_ref - 1) <= tol &&
       std::abs(round_rep.gap_curvature) <= tol * ref &&
       std::abs(round_rep.gap_volume) <= tol * vol_ref;

  const Chart pert = gauge(hopf_chart(), Expr::parse("0.1*cos(2*x1)", 3));
  const auto pert_rep = integrate(pert, 10);
  ok = ok && pert_rep.gap_curvature >= 10 * tol * ref &&
       std::abs(pert_rep.gap_volume) <= tol * vol_ref;

  std::vector<Expr> phi(3);
  phi[1] = Expr::parse("0.1*cos(x1)^2", 3);
  phi[2] = Expr::parse("0.1*sin(x1)^2", 3);
  const auto nc_rep = integrate(hopf_chart(phi), 10);
  ok = ok && std::abs(nc_rep.gap_curvature) <= tol * ref &&
       nc_rep.gap_volume >= 10 * tol * vol_ref;
  return ok;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, bool pass, const char* label) {
    std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", label);
    if (!pass) ++failures;
  };

  report(1, criterion1(), "dimension table, exact, both signatures, n 3..6");
  const Crit23 c23 = criteria2and3();
  report(2, c23.c2, "decomposition reconstruction, 500 seeds per model");
  report(3, c23.c3, "Ricci tables of all components, entry by entry");
  report(4, criterion4(), "Higa term battery with truth-table equivalences");
  report(5, criterion5(), "conjugate and trace battery");
  report(6, criterion6(), "projective curvature battery");
  report(7, criterion7(), "Einstein condition: fifteen equivalents, 200+200");
  report(8, criterion8(), "chart fixtures and rescaling constants");
  report(9, criterion9(), "pointwise realization and gauge invariance");
  report(10, criterion10(), "differential identity convergence");
  report(11, criterion11(), "integral bounds on the 3-sphere variants");

  if (failures == 0) std::printf("all criteria passed\n");
  return failures == 0 ? 0 : 1;
}
