#include "symcheck/calculus.hpp"

#include <gtest/gtest.h>

using namespace symcheck;

namespace {

SmoothMap identity_map(int n) {
  return SmoothMap{"identity", chart_rn(n), chart_rn(n), [](const RVec& x) { return x; },
                   nullptr, nullptr};
}

// f(x, y) = (x^2 y, sin x + y^3, x y) with hand-written Jacobian
SmoothMap poly_map() {
  SmoothMap m;
  m.id = "poly";
  m.domain = chart_rn(2);
  m.codomain = chart_rn(3);
  m.eval = [](const RVec& x) {
    RVec r(3);
    r << x[0] * x[0] * x[1], std::sin(x[0]) + x[1] * x[1] * x[1], x[0] * x[1];
    return r;
  };
  return m;
}

Mat poly_jac(const RVec& x) {
  Mat J(3, 2);
  J << 2 * x[0] * x[1], x[0] * x[0], std::cos(x[0]), 3 * x[1] * x[1], x[1], x[0];
  return J;
}

}  // namespace

TEST(Jacobian, IdentityAndLinear) {
  Rng rng(21);
  RVec x = rng.gaussian_vec(4);
  Mat J = jacobian(identity_map(4), x);
  EXPECT_NEAR((J - Mat::Identity(4, 4)).norm(), 0.0, 1e-9);

  Mat M(3, 4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) M(i, j) = rng.gaussian();
  SmoothMap lin{"linear", chart_rn(4), chart_rn(3), [M](const RVec& v) { return RVec(M * v); },
                nullptr, nullptr};
  EXPECT_NEAR((jacobian(lin, x) - M).norm(), 0.0, 1e-8);
}

TEST(Jacobian, MatchesSymbolicOracle) {
  Rng rng(22);
  for (int t = 0; t < 20; ++t) {
    RVec x = rng.gaussian_vec(2);
    Mat J = jacobian(poly_map(), x);
    EXPECT_NEAR((J - poly_jac(x)).norm(), 0.0, 1e-7 * std::max(1.0, poly_jac(x).norm()));
  }
}

TEST(Jacobian, RejectsOffManifoldBase) {
  SmoothMap m{"sphere-id", chart_sphere(2), chart_sphere(2), [](const RVec& x) { return x; },
              nullptr, nullptr};
  RVec bad(3);
  bad << 2.0, 0.0, 0.0;
  EXPECT_THROW(jacobian(m, bad), std::invalid_argument);
}

TEST(Tangent, ProjectionSatisfiesLinearizedConstraints) {
  Rng rng(23);
  Chart ct = chart_cotangent(2);
  for (int t = 0; t < 50; ++t) {
    CotangentPoint c = sample_cotangent(2, 0.2, 0.8, rng);
    RVec x = c.flat();
    RVec v = sample_tangent(ct, x, rng);
    // linearized constraints: dq.q = 0, dp.q + p.dq = 0
    RVec dp = v.head(3), dq = v.tail(3);
    EXPECT_NEAR(dq.dot(c.q), 0.0, 1e-9);
    EXPECT_NEAR(dp.dot(c.q) + c.p.dot(dq), 0.0, 1e-9);
  }
}

TEST(Pullback, AntisymmetryAndZeroVector) {
  Rng rng(24);
  SmoothMap m = poly_map();
  m.codomain = chart_rn(3);
  TwoForm w{[](const RVec&, const RVec& a, const RVec& b) {
    return a[0] * b[1] - b[0] * a[1] + 2.0 * (a[1] * b[2] - b[1] * a[2]);
  }};
  RVec x = rng.gaussian_vec(2), v1 = rng.gaussian_vec(2), v2 = rng.gaussian_vec(2);
  EXPECT_NEAR(pullback_two_form(m, w, x, v1, v1), 0.0, 1e-12);
  EXPECT_NEAR(pullback_two_form(m, w, x, v1, v2) + pullback_two_form(m, w, x, v2, v1), 0.0,
              1e-12);
  OneForm o{[](const RVec& b, const RVec& a) { return b[0] * a[2]; }};
  EXPECT_EQ(pullback_one_form(m, o, x, RVec(RVec::Zero(2))), 0.0);
}

TEST(Pullback, ChainRule) {
  Rng rng(25);
  SmoothMap f{"f", chart_rn(2), chart_rn(2),
              [](const RVec& x) {
                RVec r(2);
                r << x[0] + 0.3 * std::sin(x[1]), x[1] + 0.2 * x[0] * x[0];
                return r;
              },
              nullptr, nullptr};
  SmoothMap g{"g", chart_rn(2), chart_rn(2),
              [](const RVec& x) {
                RVec r(2);
                r << std::exp(0.1 * x[0]) * x[1], x[0] - x[1] * x[1];
                return r;
              },
              nullptr, nullptr};
  SmoothMap gf{"g.f", chart_rn(2), chart_rn(2),
               [&](const RVec& x) { return g.eval(f.eval(x)); }, nullptr, nullptr};
  TwoForm w{[](const RVec& b, const RVec& a1, const RVec& a2) {
    return (1.0 + b[0] * b[0]) * (a1[0] * a2[1] - a2[0] * a1[1]);
  }};
  for (int t = 0; t < 20; ++t) {
    RVec x = rng.gaussian_vec(2) * 0.5, v = rng.gaussian_vec(2), u = rng.gaussian_vec(2);
    double direct = pullback_two_form(gf, w, x, v, u);
    RVec fx = f.eval(x), fv = pushforward(f, x, v), fu = pushforward(f, x, u);
    double iterated = pullback_two_form(g, w, fx, fv, fu);
    EXPECT_NEAR(direct, iterated, 1e-6 * std::max(1.0, std::abs(direct)));
  }
}

TEST(LieBracket, KnownPlanarFields) {
  // X = (0, x), Y = (1, 0): [X, Y] = -(0, 1)
  VectorField X{[](const RVec& x) {
    RVec r(2);
    r << 0.0, x[0];
    return r;
  }};
  VectorField Y{[](const RVec&) {
    RVec r(2);
    r << 1.0, 0.0;
    return r;
  }};
  RVec base(2);
  base << 0.4, -0.7;
  RVec br = lie_bracket(X, Y, base);
  EXPECT_NEAR(br[0], 0.0, 1e-8);
  EXPECT_NEAR(br[1], -1.0, 1e-8);
  RVec self = lie_bracket(X, X, base);
  EXPECT_NEAR(self.norm(), 0.0, 1e-8);
}

TEST(Forms, ExteriorDerivativeOfCanonicalOneForm) {
  Rng rng(26);
  OneForm lam = lambda_canonical();
  TwoForm dl = dlambda();
  for (int t = 0; t < 20; ++t) {
    RVec x = rng.gaussian_vec(6), v = rng.gaussian_vec(6), w = rng.gaussian_vec(6);
    EXPECT_NEAR(d_one_form(lam, x, v, w), dl(x, v, w), 1e-7);
  }
}

TEST(Quadrature, StandardDiskArea) {
  TwoForm std2 = omega_standard_cn();
  for (double R : {0.5, 1.0, 1.7}) {
    auto disk = [R](complexd z) {
      RVec r(2);
      r << R * z.real(), R * z.imag();
      return r;
    };
    IntegralResult res = disk_integral(disk, std2);
    EXPECT_NEAR(res.value, M_PI * R * R, 1e-10);
    EXPECT_LT(res.error_estimate, 1e-9);
  }
}

TEST(Quadrature, ConvergenceUnderRefinement) {
  TwoForm w{[](const RVec& x, const RVec& a, const RVec& b) {
    return std::exp(x[0]) * (a[0] * b[1] - b[0] * a[1]);
  }};
  auto disk = [](complexd z) {
    RVec r(2);
    r << z.real(), z.imag();
    return r;
  };
  double i8 = integrate_surface_once([&disk](double r, double t) { return disk(std::polar(r, t)); },
                                     w, 0, 1, 0, 2 * M_PI, 8);
  double i16 = integrate_surface_once(
      [&disk](double r, double t) { return disk(std::polar(r, t)); }, w, 0, 1, 0, 2 * M_PI, 16);
  double ref = disk_integral(disk, w, 64).value;
  EXPECT_GT(std::abs(i8 - ref), 3.0 * std::abs(i16 - ref));
}

TEST(PlanarArea, StandardAndWeighted) {
  OneForm std_prim = standard_area_primitive();
  OneForm wd_prim = omega_prime_primitive();
  PlaneCurve unit = [](double t) { return std::polar(1.0, t); };
  EXPECT_NEAR(planar_area(unit, std_prim), M_PI, 1e-12);

  PlaneCurve half = [](double t) { return std::polar(0.5, t); };
  EXPECT_NEAR(planar_area(half, wd_prim), 2 * M_PI * (1.0 - std::sqrt(3.0) / 2.0), 1e-10);

  double a = std::sqrt(5.0) / 3.0;
  PlaneCurve r53 = [a](double t) { return std::polar(a, t); };
  EXPECT_NEAR(planar_area(r53, wd_prim), 2 * M_PI / 3.0, 1e-8);
}

TEST(PlanarArea, PrimitiveMatchesSurfaceIntegral) {
  // Green's theorem vs direct quadrature for omega'_D on random star-shaped
  // trig-polynomial curves inside the strip |v| < 1.
  Rng rng(27);
  TwoForm wd = omega_prime_disk();
  OneForm wd_prim = omega_prime_primitive();
  for (int t = 0; t < 10; ++t) {
    double c0 = rng.uniform(0.3, 0.5);
    double a2 = rng.uniform(-0.08, 0.08), b3 = rng.uniform(-0.06, 0.06);
    auto radius = [=](double th) { return c0 + a2 * std::cos(2 * th) + b3 * std::sin(3 * th); };
    PlaneCurve curve = [=](double th) { return std::polar(radius(th), th); };
    double green = planar_area(curve, wd_prim);
    ParamSurface fill = [=](double r, double th) {
      RVec p(2);
      complexd z = std::polar(r * radius(th), th);
      p << z.real(), z.imag();
      return p;
    };
    double direct = integrate_surface(fill, wd, 0, 1, 0, 2 * M_PI, 96).value;
    EXPECT_NEAR(green, direct, 1e-8);
  }
}
