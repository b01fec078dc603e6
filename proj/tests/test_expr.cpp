#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "helpers.hpp"

#include "weyl/expr.hpp"
#include "weyl/json_io.hpp"

#include <cmath>
#include <random>

using namespace weyl;
using namespace weyltest;

namespace {

double ev(const Expr& e, std::vector<double> x) { return e.eval(x); }

// Central-difference check of a symbolic derivative.
void check_diff(const std::string& src, int var, const std::vector<double>& x) {
  const Expr e = Expr::parse(src, static_cast<int>(x.size()));
  const Expr d = e.diff(var);
  const double h = 1e-5;
  std::vector<double> xp = x, xm = x;
  xp[var] += h;
  xm[var] -= h;
  const double fd = (e.eval(xp) - e.eval(xm)) / (2 * h);
  CHECK(d.eval(x) == doctest::Approx(fd).epsilon(1e-7));
}

}  // namespace

TEST_CASE("parse and evaluate") {
  CHECK(ev(Expr::parse("2 + 3*4", 1), {0}) == 14.0);
  CHECK(ev(Expr::parse("2 + 3*x1", 2), {5, 0}) == 17.0);
  CHECK(ev(Expr::parse("(2 + 3)*x2", 2), {0, 4}) == 20.0);
  CHECK(ev(Expr::parse("x1^2 + x2^2", 2), {3, 4}) == 25.0);
  CHECK(ev(Expr::parse("2^3^2", 1), {0}) == 512.0);  // right associative
  CHECK(ev(Expr::parse("-x1^2", 1), {3}) == -9.0);   // minus binds after power
  CHECK(ev(Expr::parse("10 - 4 - 3", 1), {0}) == 3.0);
  CHECK(ev(Expr::parse("12 / 4 / 3", 1), {0}) == 1.0);
  CHECK(ev(Expr::parse("sin(pi/2)", 1), {0}) == doctest::Approx(1.0));
  CHECK(ev(Expr::parse("cos(0)", 1), {0}) == 1.0);
  CHECK(ev(Expr::parse("exp(ln(7))", 1), {0}) == doctest::Approx(7.0));
  CHECK(ev(Expr::parse("1.5e2 + 2.5e-1", 1), {0}) == doctest::Approx(150.25));
  CHECK(ev(Expr::parse("sin(x1)^2 + cos(x1)^2", 1), {0.83}) == doctest::Approx(1.0));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(Expr::parse("x5", 3), ParseError);       // unknown coordinate
  CHECK_THROWS_AS(Expr::parse("x0", 3), ParseError);       // coordinates are 1-based
  CHECK_THROWS_AS(Expr::parse("foo(x1)", 3), ParseError);  // unknown function
  CHECK_THROWS_AS(Expr::parse("1 +", 1), ParseError);
  CHECK_THROWS_AS(Expr::parse("(1", 1), ParseError);
  CHECK_THROWS_AS(Expr::parse("", 1), ParseError);
  CHECK_THROWS_AS(Expr::parse("1 2", 1), ParseError);  // trailing input
  CHECK_THROWS_AS(Expr::parse("sin x1", 2), ParseError);
}

TEST_CASE("evaluation needs enough coordinates") {
  const Expr e = Expr::variable(4);
  CHECK_THROWS_AS(e.eval({1.0, 2.0, 3.0}), ParseError);
}

TEST_CASE("differentiation") {
  const std::vector<double> x{0.7, -0.4, 1.3};
  check_diff("x1^2 * sin(x2)", 0, x);
  check_diff("x1^2 * sin(x2)", 1, x);
  check_diff("exp(sin(x1))", 0, x);
  check_diff("x3 / (1 + x1^2)", 0, x);
  check_diff("x3 / (1 + x1^2)", 2, x);
  check_diff("ln(2 + cos(x2))", 1, x);
  check_diff("x1^3", 0, x);
  check_diff("(1 + x1^2)^x2", 0, x);
  check_diff("(1 + x1^2)^x2", 1, x);
  check_diff("2^x2", 1, x);

  CHECK(Expr::parse("x1 + x2", 2).diff(2 /* x3 of a wider space */).is_zero());
  CHECK(Expr::parse("sin(x2)", 2).diff(0).is_zero());
  CHECK(Expr::constant(3.5).diff(0).is_zero());
}

TEST_CASE("printing round-trips through the parser") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (const char* src :
       {"x1^2*sin(x2) - 3/(1 + x3^2)", "exp(0.2*cos(2*x1))",
        "-(x1 - x2)*(x1 + x2)", "ln(2 + sin(x1)) + pi*x3", "2^x1 / (x2^2 + 1)"}) {
    const Expr e = Expr::parse(src, 3);
    const Expr back = Expr::parse(e.str(), 3);
    const Expr de = e.diff(0);
    const Expr dback = Expr::parse(de.str(), 3);
    for (int k = 0; k < 10; ++k) {
      const std::vector<double> x{u(rng), u(rng), u(rng)};
      CHECK(back.eval(x) == doctest::Approx(e.eval(x)).epsilon(1e-12));
      CHECK(dback.eval(x) == doctest::Approx(de.eval(x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("constant folding keeps trees small") {
  CHECK(Expr::parse("0*x1 + x2", 2).str() == Expr::parse("x2", 2).str());
  CHECK(Expr::parse("1*x1", 1).str() == Expr::parse("x1", 1).str());
  CHECK(Expr::parse("x1^1", 1).str() == Expr::parse("x1", 1).str());
  CHECK(Expr::parse("2*3 + 4", 1).is_zero() == false);
  CHECK(Expr::parse("0 + 0", 1).is_zero());
  CHECK(Expr::constant(0).is_zero());
}

TEST_CASE("tensor json round trip, exact mode") {
  const Model m = euclid(4);
  std::mt19937 rng(5);
  Curv4<Rational> a = random_curv<Rational>(SpaceTag::Weyl, m, rng());
  const auto j = tensor_to_json(a);
  const TensorValue back = tensor_from_json(j);
  REQUIRE(std::holds_alternative<Curv4<Rational>>(back));
  CHECK(std::get<Curv4<Rational>>(back) == a);

  Bilinear<Rational> b = random_bilinear<Rational>(SpaceTag::Sym, lorentz(3), rng());
  const TensorValue back2 = tensor_from_json(tensor_to_json(b));
  REQUIRE(std::holds_alternative<Bilinear<Rational>>(back2));
  CHECK(std::get<Bilinear<Rational>>(back2) == b);
}

TEST_CASE("tensor json round trip, float mode") {
  const Model m = euclid(3, ScalarMode::Float64);
  Curv4<double> a(m);
  a(0, 1, 0, 1) = 0.125;
  a(1, 0, 0, 1) = -0.125;
  const TensorValue back = tensor_from_json(tensor_to_json(a));
  REQUIRE(std::holds_alternative<Curv4<double>>(back));
  CHECK(std::get<Curv4<double>>(back) == a);
}

TEST_CASE("tensor json rejects malformed input") {
  const Model m = euclid(3);
  auto j = tensor_to_json(hwh<Rational>(m));

  auto missing = j;
  missing.erase("rank");
  CHECK_THROWS_AS(tensor_from_json(missing), ParseError);

  auto bad_mode = j;
  bad_mode["mode"] = "decimal";
  CHECK_THROWS_AS(tensor_from_json(bad_mode), ParseError);

  auto bad_rank = j;
  bad_rank["rank"] = 3;
  CHECK_THROWS_AS(tensor_from_json(bad_rank), ParseError);

  auto short_components = j;
  short_components["components"].erase(0);
  CHECK_THROWS_AS(tensor_from_json(short_components), ParseError);

  auto float_in_exact = j;
  float_in_exact["components"][0] = 0.5;
  CHECK_THROWS_AS(tensor_from_json(float_in_exact), ParseError);

  CHECK_THROWS_AS(read_tensor_file("/nonexistent/tensor.json"), ParseError);
}

TEST_CASE("tensor json exact strings are num/den") {
  const Model m = euclid(3);
  Bilinear<Rational> b(m);
  b(0, 1) = scalar_frac<Rational>(-3, 7);
  const auto j = tensor_to_json(b);
  CHECK(j["components"][1].get<std::string>() == "-3/7");
  const TensorValue back = tensor_from_json(j);
  CHECK(std::get<Bilinear<Rational>>(back)(0, 1) == scalar_frac<Rational>(-3, 7));
}
