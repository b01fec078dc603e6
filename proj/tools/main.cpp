// weylcurv: command-line front end for the curvature decomposition library.
//
// Subcommands:
//   decompose <tensor.json>   component report for a rank-4 tensor
//   verify --suite <name>     seeded identity batteries
//   dims [--n N]              module dimension table vs the closed formulas
//   chart verify|integrate|gauge <chart.json>
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse error.

#include "weyl/builders.hpp"
#include "weyl/chart.hpp"
#include "weyl/decomp.hpp"
#include "weyl/dims.hpp"
#include "weyl/errors.hpp"
#include "weyl/json_io.hpp"
#include "weyl/spaces.hpp"
#include "weyl/traces.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

using njson = nlohmann::ordered_json;
using namespace weyl;

namespace {

struct Options {
  int n = 4;
  std::string signature;  // "p,q", default "0,n"
  std::string mode = "exact";
  std::uint64_t seed = 1;
  int count = 100;
  double tol = 0;  // 0 = per-command default
  std::string out = "table";
};

Model model_from(const Options& o) {
  int p = 0, q = o.n;
  if (!o.signature.empty()) {
    const auto comma = o.signature.find(',');
    if (comma == std::string::npos)
      throw ParseError("signature must be given as p,q");
    try {
      p = std::stoi(o.signature.substr(0, comma));
      q = std::stoi(o.signature.substr(comma + 1));
    } catch (const std::exception&) {
      throw ParseError("signature must be given as p,q");
    }
  }
  const ScalarMode mode =
      o.mode == "exact" ? ScalarMode::Exact : ScalarMode::Float64;
  return Model(o.n, p, q, mode);
}

template <class S>
double resid(const S& v) {
  return ScalarTraits<S>::to_double(v);
}
template <class S>
double resid(const Curv4<S>& a) {
  return ScalarTraits<S>::to_double(a.max_abs());
}
template <class S>
double resid(const Bilinear<S>& a) {
  return ScalarTraits<S>::to_double(a.max_abs());
}

template <class S>
njson scalar_json(const S& v) {
  if constexpr (ScalarTraits<S>::mode == ScalarMode::Exact)
    return rational_to_string(v);
  else
    return v;
}

// ---------------------------------------------------------------- decompose

template <class S>
njson component_entry(const Curv4<S>& t) {
  njson e;
  e["norm"] = resid(t);
  e["ricci_norm"] = resid(ricci(t));
  e["ricci_star_norm"] = resid(ricci_star(t));
  e["tensor"] = tensor_to_json(t);
  return e;
}

template <class S>
int decompose_impl(const Curv4<S>& a, const Options& o) {
  const double tol = o.tol > 0 ? o.tol : 1e-9;
  const auto rep = membership(a, SpaceTag::Weyl, tol);
  if (!rep.holds) {
    std::cerr << "decompose: the input tensor is not in the Weyl class"
              << (rep.violated_constraint ? " (" + *rep.violated_constraint + ")"
                                          : std::string())
              << "\n";
    return 1;
  }
  const auto alphas = alpha_all(a, tol);
  const auto pis = pi_all(a, tol);
  const auto h = higa(a, tol);
  const auto p = projective(a, tol);
  const auto cls = classify(a, tol);

  if (o.out == "json") {
    njson j;
    j["n"] = a.model().n();
    j["signature"] = njson::array({a.model().p(), a.model().q()});
    j["mode"] = a.model().mode() == ScalarMode::Exact ? "exact" : "float";
    j["tau"] = scalar_json(scalar_tau(a));
    for (int i = 0; i < 8; ++i)
      j["alpha"].push_back(component_entry(alphas[i]));
    for (int i = 0; i < 8; ++i) j["pi"].push_back(component_entry(pis[i]));
    j["higa"] = component_entry(h);
    j["projective"] = component_entry(p);
    njson c;
    c["algebraic"] = cls.is_algebraic;
    c["trivial_pointwise"] = cls.is_trivial_pointwise;
    c["einstein_weyl"] = cls.is_einstein_weyl;
    c["constant_curvature_type"] = cls.is_constant_curvature_type;
    c["ricci_flat"] = cls.is_ricci_flat;
    if (cls.lambda) c["lambda"] = scalar_json(*cls.lambda);
    j["classification"] = c;
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("%-12s %14s %14s %14s\n", "component", "norm", "|Ric|",
                "|Ric*|");
    for (int i = 0; i < 8; ++i)
      std::printf("alpha%-7d %14.6e %14.6e %14.6e\n", i + 1, resid(alphas[i]),
                  resid(ricci(alphas[i])), resid(ricci_star(alphas[i])));
    for (int i = 0; i < 8; ++i)
      std::printf("pi%-10d %14.6e %14.6e %14.6e\n", i + 1, resid(pis[i]),
                  resid(ricci(pis[i])), resid(ricci_star(pis[i])));
    std::printf("%-12s %14.6e %14.6e %14.6e\n", "higa", resid(h),
                resid(ricci(h)), resid(ricci_star(h)));
    std::printf("%-12s %14.6e %14.6e %14.6e\n", "projective", resid(p),
                resid(ricci(p)), resid(ricci_star(p)));
    std::printf("algebraic=%d trivial=%d einstein_weyl=%d "
                "constant_curvature_type=%d ricci_flat=%d\n",
                cls.is_algebraic, cls.is_trivial_pointwise, cls.is_einstein_weyl,
                cls.is_constant_curvature_type, cls.is_ricci_flat);
  }
  return 0;
}

int cmd_decompose(const std::string& path, const Options& o) {
  const TensorValue v = read_tensor_file(path);
  if (std::holds_alternative<Curv4<Rational>>(v))
    return decompose_impl(std::get<Curv4<Rational>>(v), o);
  if (std::holds_alternative<Curv4<double>>(v))
    return decompose_impl(std::get<Curv4<double>>(v), o);
  std::cerr << "decompose: expected a rank-4 tensor\n";
  return 2;
}

// ------------------------------------------------------------------- verify

struct CheckResult {
  std::string name;
  double worst = 0;
  bool boolean = false;  // consistency checks count mismatches instead
  void update(double r) { worst = std::max(worst, r); }
  void update_flag(bool consistent) {
    boolean = true;
    if (!consistent) worst = std::max(worst, 1.0);
  }
};

template <class S>
std::vector<CheckResult> run_suite(const std::string& suite, const Model& m,
                                   std::uint64_t seed, int count, double tol) {
  const int n = m.n();
  std::vector<CheckResult> checks;
  checks.reserve(8);  // add() hands out references into the vector
  auto add = [&](const char* name) -> CheckResult& {
    checks.push_back(CheckResult{name});
    return checks.back();
  };

  if (suite == "weyl") {
    auto& c_mem = add("weyl-membership");
    auto& c_ra = add("alpha-reconstruction");
    auto& c_rp = add("pi-reconstruction");
    auto& c_va = add("vanishing-alpha-3-7-8");
    auto& c_vp = add("vanishing-pi-7-8");
    auto& c_66 = add("alpha6-equals-pi6");
    for (int k = 0; k < count; ++k) {
      const Curv4<S> a = random_curv<S>(SpaceTag::Weyl, m, seed + k);
      c_mem.update(resid(membership(a, SpaceTag::Weyl, tol).worst_residual));
      const auto al = alpha_all(a, tol);
      const auto pw = pi_all(a, tol);
      Curv4<S> sa(m), sp(m);
      for (int i = 0; i < 8; ++i) {
        sa += al[i];
        sp += pw[i];
      }
      c_ra.update(resid(sa - a));
      c_rp.update(resid(sp - a));
      c_va.update(std::max({resid(al[2]), resid(al[6]), resid(al[7])}));
      c_vp.update(std::max(resid(pw[6]), resid(pw[7])));
      c_66.update(resid(al[5] - pw[5]));
    }
  } else if (suite == "algebra") {
    auto& c_inv = add("conjugate-involution");
    auto& c_rs = add("ricci-star-is-ricci-of-conjugate");
    auto& c_lf = add("length-form-factor");
    auto& c_bi = add("conjugate-bianchi-iff-algebraic");
    for (int k = 0; k < count; ++k) {
      const SpaceTag tag = k % 2 ? SpaceTag::Algebraic : SpaceTag::Weyl;
      const Curv4<S> a = random_curv<S>(tag, m, seed + k);
      c_inv.update(resid(conjugate(conjugate(a)) - a));
      c_rs.update(resid(ricci_star(a) - ricci(conjugate(a))));
      Bilinear<S> f = length_form(a);
      Bilinear<S> lam = lambda_ricci(a);
      lam *= scalar_frac<S>(2, n);
      c_lf.update(resid(f + lam));
      const bool alg = membership(a, SpaceTag::Algebraic, tol).holds;
      const bool conj_b = membership(conjugate(a), SpaceTag::GenCurv, tol).holds;
      c_bi.update_flag(alg == conj_b);
    }
  } else if (suite == "higa") {
    auto& c_a45 = add("higa-equals-alpha4-plus-alpha5");
    auto& c_p34 = add("higa-equals-pi3-plus-pi4");
    auto& c_rem = add("remainder-is-algebraic");
    auto& c_triv = add("higa-vanishes-iff-trivial");
    for (int k = 0; k < count; ++k) {
      const Curv4<S> a = random_curv<S>(SpaceTag::Weyl, m, seed + k);
      const Curv4<S> h = higa(a, tol);
      c_a45.update(resid(h - alpha(a, 4, tol) - alpha(a, 5, tol)));
      c_p34.update(resid(h - pi_w(a, 3, tol) - pi_w(a, 4, tol)));
      c_rem.update(
          resid(membership(a - h, SpaceTag::Algebraic, tol).worst_residual));
      const auto cls = classify(a, std::max(tol, 1e-9));
      const double scale = std::max(1.0, resid(a.max_abs()));
      c_triv.update_flag(cls.is_trivial_pointwise ==
                         (resid(h) <= std::max(tol, 1e-9) * scale));
    }
  } else if (suite == "ricci") {
    auto& c_pr = add("projective-is-ricci-flat");
    auto& c_pc = add("projective-equals-pi4-pi5-pi6");
    auto& c_p4 = add("pi4-ricci-vanishes");
    auto& c_ps = add("pi4-ricci-star-factor");
    for (int k = 0; k < count; ++k) {
      const Curv4<S> a = random_curv<S>(SpaceTag::Weyl, m, seed + k);
      const Curv4<S> p = projective(a, tol);
      c_pr.update(resid(ricci(p)));
      c_pc.update(
          resid(p - pi_w(a, 4, tol) - pi_w(a, 5, tol) - pi_w(a, 6, tol)));
      const Curv4<S> p4 = pi_w(a, 4, tol);
      c_p4.update(resid(ricci(p4)));
      Bilinear<S> lam = lambda_ricci(a);
      lam *= scalar_frac<S>(static_cast<long long>(n - 2) * (n + 2),
                            static_cast<long long>(n) * (n + 1));
      c_ps.update(resid(ricci_star(p4) - lam));
    }
  } else {
    throw ParseError("unknown suite: " + suite);
  }
  return checks;
}

int report_checks(const std::vector<CheckResult>& checks, const Options& o,
                  double pass_tol) {
  bool all = true;
  njson rows = njson::array();
  for (const auto& c : checks) {
    const bool ok = c.boolean ? c.worst == 0 : c.worst <= pass_tol;
    all = all && ok;
    if (o.out == "json") {
      njson r;
      r["check"] = c.name;
      r["worst_residual"] = c.worst;
      r["pass"] = ok;
      rows.push_back(r);
    } else {
      std::printf("%-40s %14.6e %s\n", c.name.c_str(), c.worst,
                  ok ? "PASS" : "FAIL");
    }
  }
  if (o.out == "json") {
    njson j;
    j["seed"] = o.seed;
    j["count"] = o.count;
    j["tolerance"] = pass_tol;
    j["checks"] = rows;
    j["pass"] = all;
    std::cout << j.dump(2) << "\n";
  }
  return all ? 0 : 1;
}

int cmd_verify(const std::string& suite, const Options& o) {
  const Model m = model_from(o);
  const double tol = o.tol > 0 ? o.tol : 1e-9;
  std::vector<CheckResult> checks;
  if (m.mode() == ScalarMode::Exact)
    checks = run_suite<Rational>(suite, m, o.seed, o.count, tol);
  else
    checks = run_suite<double>(suite, m, o.seed, o.count, tol);
  const double pass_tol = m.mode() == ScalarMode::Exact ? 0.0 : tol;
  return report_checks(checks, o, pass_tol);
}

// --------------------------------------------------------------------- dims

int cmd_dims(const Options& o) {
  const std::vector<int> ns = o.n > 0 ? std::vector<int>{o.n}
                                      : std::vector<int>{3, 4, 5, 6};
  const SpaceTag spaces[] = {SpaceTag::GenCurv, SpaceTag::Algebraic,
                             SpaceTag::Weyl,    SpaceTag::W6,
                             SpaceTag::W7,      SpaceTag::W8,
                             SpaceTag::Sym,     SpaceTag::Sym0,
                             SpaceTag::Alt};
  bool all = true;
  njson rows = njson::array();
  for (int n : ns) {
    Options on = o;
    on.n = n;
    on.mode = "exact";
    const Model m = model_from(on);
    for (SpaceTag s : spaces) {
      const int computed = module_dimension(s, m);
      const long long formula = dimension_formula(s, n);
      const bool ok = computed == formula;
      all = all && ok;
      if (o.out == "json") {
        njson r;
        r["space"] = space_name(s);
        r["n"] = n;
        r["computed"] = computed;
        r["formula"] = formula;
        r["pass"] = ok;
        rows.push_back(r);
      } else {
        std::printf("%s %d %d %lld %s\n", space_name(s).c_str(), n, computed,
                    formula, ok ? "OK" : "MISMATCH");
      }
    }
  }
  if (o.out == "json") {
    njson j;
    j["rows"] = rows;
    j["pass"] = all;
    std::cout << j.dump(2) << "\n";
  }
  return all ? 0 : 1;
}

// -------------------------------------------------------------------- chart

std::vector<double> sample_point(const Chart& c, std::mt19937_64& rng) {
  std::vector<double> x(c.n);
  for (int i = 0; i < c.n; ++i) {
    const Axis& a = c.domain[i];
    double lo = a.min, hi = a.max;
    if (!a.periodic) {
      const double margin = 0.05 * (a.max - a.min) + 25 * c.fd_step;
      lo += margin;
      hi -= margin;
    }
    x[i] = std::uniform_real_distribution<double>(lo, hi)(rng);
  }
  return x;
}

int cmd_chart_verify(const std::string& path, int points, const Options& o) {
  const Chart c = read_chart_file(path);
  const double tol = o.tol > 0 ? o.tol : 1e-4;
  std::mt19937_64 rng(o.seed);
  CheckResult mem{"weyl-membership"};
  CheckResult op{"bianchi-operator"};
  CheckResult low{"bianchi-lowered"};
  CheckResult c1{"bianchi-contracted-first"};
  CheckResult c2{"bianchi-contracted-second"};
  for (int k = 0; k < points; ++k) {
    const auto x = sample_point(c, rng);
    mem.update(membership(curvature_at(c, x).a, SpaceTag::Weyl, tol)
                   .worst_residual);
    const auto br = bianchi_residuals(c, x);
    op.update(br.operator_identity);
    low.update(br.lowered_identity);
    c1.update(br.contracted_first);
    c2.update(br.contracted_second);
  }
  Options ro = o;
  ro.count = points;
  return report_checks({mem, op, low, c1, c2}, ro, tol);
}

int cmd_chart_integrate(const std::string& path, int res, const Options& o) {
  const Chart c = read_chart_file(path);
  const double tol = o.tol > 0 ? o.tol : 1e-4;
  const IntegralReport rep = integrate(c, res);
  // The two integral inequalities, allowing quadrature-sized slack.
  const bool curv_ok =
      rep.gap_curvature >= -tol * std::abs(rep.total_tilde_curvature);
  const bool vol_ok = rep.gap_volume >= -tol * std::abs(rep.curvature_times_nn1);
  if (o.out == "json") {
    njson j;
    j["resolution"] = res;
    j["total_tilde_curvature"] = rep.total_tilde_curvature;
    j["conformal_bound"] = rep.conformal_bound;
    j["tilde_volume"] = rep.tilde_volume;
    j["curvature_times_nn1"] = rep.curvature_times_nn1;
    j["gap_curvature"] = rep.gap_curvature;
    j["gap_volume"] = rep.gap_volume;
    j["curvature_bound_holds"] = curv_ok;
    j["volume_bound_holds"] = vol_ok;
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("total_tilde_curvature  %18.10e\n", rep.total_tilde_curvature);
    std::printf("conformal_bound        %18.10e\n", rep.conformal_bound);
    std::printf("tilde_volume           %18.10e\n", rep.tilde_volume);
    std::printf("curvature_times_nn1    %18.10e\n", rep.curvature_times_nn1);
    std::printf("gap_curvature          %18.10e  %s\n", rep.gap_curvature,
                curv_ok ? "PASS" : "FAIL");
    std::printf("gap_volume             %18.10e  %s\n", rep.gap_volume,
                vol_ok ? "PASS" : "FAIL");
  }
  return (curv_ok && vol_ok) ? 0 : 1;
}

int cmd_chart_gauge(const std::string& path, const std::string& fexpr) {
  const Chart c = read_chart_file(path);
  const Expr f = Expr::parse(fexpr, c.n);
  std::cout << chart_to_json(gauge(c, f)).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature decomposition workbench for Weyl structures"};
  app.require_subcommand(1);

  Options o;
  std::string tensor_path, chart_path, suite, fexpr;
  int points = 20, res = 8;

  auto add_common = [&](CLI::App* cmd, bool with_model) {
    cmd->add_option("--tol", o.tol, "numerical tolerance");
    cmd->add_option("--out", o.out, "output format")
        ->check(CLI::IsMember({"json", "table"}));
    if (with_model) {
      cmd->add_option("--n", o.n, "dimension");
      cmd->add_option("--signature", o.signature, "signature p,q");
      cmd->add_option("--mode", o.mode, "scalar mode")
          ->check(CLI::IsMember({"exact", "float"}));
      cmd->add_option("--seed", o.seed, "RNG seed");
      cmd->add_option("--count", o.count, "number of samples");
    }
  };

  auto* dec = app.add_subcommand("decompose", "decompose a rank-4 tensor");
  dec->add_option("file", tensor_path, "tensor JSON file")->required();
  add_common(dec, false);

  auto* ver = app.add_subcommand("verify", "run a seeded identity battery");
  ver->add_option("--suite", suite, "battery name")
      ->required()
      ->check(CLI::IsMember({"weyl", "algebra", "higa", "ricci"}));
  add_common(ver, true);

  auto* dim = app.add_subcommand("dims", "module dimension table");
  dim->add_option("--n", o.n, "dimension (0 = run 3..6)");
  dim->add_option("--signature", o.signature, "signature p,q");
  dim->add_option("--out", o.out, "output format")
      ->check(CLI::IsMember({"json", "table"}));

  auto* cha = app.add_subcommand("chart", "chart workflows");
  cha->require_subcommand(1);
  auto* chv = cha->add_subcommand("verify", "pointwise identity checks");
  chv->add_option("file", chart_path, "chart JSON file")->required();
  chv->add_option("--points", points, "sample points");
  chv->add_option("--seed", o.seed, "RNG seed");
  add_common(chv, false);
  auto* chi = cha->add_subcommand("integrate", "integral bounds report");
  chi->add_option("file", chart_path, "chart JSON file")->required();
  chi->add_option("--res", res, "quadrature resolution per axis");
  add_common(chi, false);
  auto* chg = cha->add_subcommand("gauge", "apply a gauge transformation");
  chg->add_option("file", chart_path, "chart JSON file")->required();
  chg->add_option("--f", fexpr, "gauge function expression")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*dec) return cmd_decompose(tensor_path, o);
    if (*ver) return cmd_verify(suite, o);
    if (*dim) {
      if (!dim->count("--n")) o.n = 0;
      return cmd_dims(o);
    }
    if (*chv) return cmd_chart_verify(chart_path, points, o);
    if (*chi) return cmd_chart_integrate(chart_path, res, o);
    if (*chg) return cmd_chart_gauge(chart_path, fexpr);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SignatureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
