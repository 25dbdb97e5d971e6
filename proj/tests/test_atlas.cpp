#include "symcheck/atlas.hpp"

#include <gtest/gtest.h>

using namespace symcheck;

namespace {

// (v, w) on S^2 x S^2 away from the diagonal and anti-diagonal
RVec sample_pair(Rng& rng) {
  for (;;) {
    RVec v = sample_sphere(2, rng).q, w = sample_sphere(2, rng).q;
    if ((v - w).norm() > 0.3 && (v + w).norm() > 0.3) {
      RVec x(6);
      x << v, w;
      return x;
    }
  }
}

// point on the circle-bundle-times-disk chart with |zeta| < zeta_max
RVec sample_pq_disk(int n, double zeta_max, Rng& rng) {
  int h = n + 1;
  RVec u = rng.gaussian_vec(h);
  u /= u.norm();
  RVec v = rng.gaussian_vec(h);
  v -= v.dot(u) * u;
  v /= v.norm();
  double r = zeta_max * std::sqrt(rng.uniform(0.01, 1.0));
  double th = rng.uniform(0, 2 * M_PI);
  RVec x(2 * h + 2);
  for (int i = 0; i < h; ++i) {
    x[2 * i] = u[i];
    x[2 * i + 1] = v[i];
  }
  x[2 * h] = r * std::cos(th);
  x[2 * h + 1] = r * std::sin(th);
  return x;
}

// point (x, y) of the punctured tangent disk bundle with |y| in [lo, hi]
RVec sample_tangent_disk(double lo, double hi, Rng& rng) {
  RVec x = sample_sphere(2, rng).q;
  RVec y = rng.gaussian_vec(3);
  y -= y.dot(x) * x;
  y *= rng.uniform(lo, hi) / y.norm();
  RVec t(6);
  t << x, y;
  return t;
}

// checks map^*(dst) == src on `count` random (base, v, w) triples
void expect_form_pullback(const SmoothMap& m, const TwoForm& src, const TwoForm& dst,
                          const std::function<RVec(Rng&)>& sample, int count, double tol,
                          uint64_t seed) {
  Rng rng(seed);
  for (int t = 0; t < count; ++t) {
    RVec x = sample(rng);
    RVec v = sample_tangent(m.domain, x, rng);
    RVec w = sample_tangent(m.domain, x, rng);
    double want = src(x, v, w);
    double got = pullback_two_form(m, dst, x, v, w);
    ASSERT_NEAR(got, want, tol * std::max(1.0, std::abs(want))) << m.id << " sample " << t;
  }
}

complexd proj_pair_square_sum(const RVec& rep) {
  CVec z = unflatten_c(rep);
  return (z.array() * z.array()).sum();
}

}  // namespace

// ---------------------------------------------------------------------------
// Scalar helpers
// ---------------------------------------------------------------------------

TEST(HelperF, ValuesIdentityAndDomain) {
  EXPECT_NEAR(helper_f(0.0), 0.5, 1e-15);
  EXPECT_NEAR(helper_f(0.5), 4.0 - 2.0 * std::sqrt(3.0), 1e-14);
  EXPECT_NEAR(0.81 * helper_f(0.9) + 1.0 / helper_f(0.9), 2.0, 1e-13);
  // no cancellation for tiny arguments
  EXPECT_NEAR(helper_f(1e-8), 0.5, 1e-15);
  Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    double x = rng.uniform(0.0, 0.999);
    double f = helper_f(x);
    EXPECT_NEAR(x * x * f + 1.0 / f, 2.0, 1e-12);
  }
  EXPECT_THROW(helper_f(1.0), std::invalid_argument);
  EXPECT_THROW(helper_f(-0.1), std::invalid_argument);
}

TEST(HelperF, HalfDiskChart) {
  Rng rng(32);
  for (int t = 0; t < 100; ++t) {
    complexd z = std::polar(std::sqrt(rng.uniform(0.001, 0.9)), rng.uniform(0, 2 * M_PI));
    complexd fz = plane_f(z);
    EXPECT_GT(fz.imag(), 0.0);
    // z^2 + f(z)^2 + c(z)^2 = 0 up to the real part; the construction forces
    // the imaginary parts to cancel
    complexd s = z * z + fz * fz + plane_c(z) * plane_c(z);
    EXPECT_NEAR(std::abs(s), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(plane_f(-z) - fz), 0.0, 1e-15);
  }
}

// ---------------------------------------------------------------------------
// The sphere-product / cotangent model
// ---------------------------------------------------------------------------

TEST(Phi2, ExampleAndRoundTrip) {
  SmoothMap m = map_Phi2();
  RVec x(6);
  x << 1, 0, 0, 0, 1, 0;  // (e1, e2)
  RVec out = m.eval(x);
  double s = std::sqrt(2.0);
  EXPECT_NEAR((out.head(3) - rvec3(0, 0, 1) / s).norm(), 0.0, 1e-14);
  EXPECT_NEAR((out.tail(3) - rvec3(1 / s, -1 / s, 0)).norm(), 0.0, 1e-14);

  Rng rng(33);
  for (int t = 0; t < 200; ++t) {
    RVec vw = sample_pair(rng);
    RVec pq = m.eval(vw);
    EXPECT_LT(m.codomain.residual(pq), 1e-12);
    EXPECT_NEAR((m.inverse(pq) - vw).norm(), 0.0, 1e-12);
    CotangentPoint c = sample_cotangent(2, 0.05, 0.95, rng);
    RVec back = m.eval(m.inverse(c.flat()));
    EXPECT_NEAR((back - c.flat()).norm(), 0.0, 1e-12);
  }
}

TEST(Phi2, ObservablesAndEq1) {
  SmoothMap m = map_Phi2();
  Rng rng(34);
  for (int t = 0; t < 200; ++t) {
    RVec x = sample_pair(rng);
    RVec v = x.head(3), w = x.tail(3);
    RVec pq = m.eval(x);
    RVec p = pq.head(3), q = pq.tail(3);
    EXPECT_NEAR(p.norm(), 0.5 * (v + w).norm(), 1e-12);
    EXPECT_NEAR(cross3(p, q)[0], 0.5 * (v + w)[0], 1e-12);
    EXPECT_NEAR((v - w).squaredNorm() * (v + w).squaredNorm(),
                4.0 * cross3(v, w).squaredNorm(), 1e-12);
  }
}

TEST(Phi2, PullsBackCanonicalSymplecticForm) {
  expect_form_pullback(map_Phi2(), omega_s2s2(), dlambda(), sample_pair, 200, 1e-5, 35);
}

TEST(SpherePairFields, FormValuesBracketsAndPrimitive) {
  Rng rng(36);
  TwoForm om = omega_s2s2();
  OneForm lam = lambda_canonical();
  SmoothMap m = map_Phi2();
  for (int t = 0; t < 50; ++t) {
    RVec x = sample_pair(rng);
    RVec v = x.head(3), w = x.tail(3);
    double cw2 = cross3(v, w).squaredNorm();
    std::vector<RVec> X;
    for (int j = 1; j <= 4; ++j) X.push_back(field_sphere_pair(j)(x));
    EXPECT_NEAR(om(x, X[0], X[1]), cw2, 1e-12);
    EXPECT_NEAR(om(x, X[2], X[3]), cw2, 1e-12);
    EXPECT_NEAR(om(x, X[0], X[2]), 0.0, 1e-12);
    EXPECT_NEAR(om(x, X[0], X[3]), 0.0, 1e-12);
    EXPECT_NEAR(om(x, X[1], X[2]), 0.0, 1e-12);
    EXPECT_NEAR(om(x, X[1], X[3]), 0.0, 1e-12);

    EXPECT_NEAR(pullback_one_form(m, lam, x, X[0]), 0.5 * (v + w).squaredNorm(), 1e-6);
    for (int j = 1; j < 4; ++j)
      EXPECT_NEAR(pullback_one_form(m, lam, x, X[j]), 0.0, 1e-6);
  }
  // commutator table
  for (int t = 0; t < 20; ++t) {
    RVec x = sample_pair(rng);
    RVec v = x.head(3), w = x.tail(3);
    double dm = (v - w).squaredNorm(), dp = (v + w).squaredNorm();
    auto X1 = field_sphere_pair(1), X2 = field_sphere_pair(2), X3 = field_sphere_pair(3),
         X4 = field_sphere_pair(4);
    double tol = 1e-5;
    EXPECT_NEAR((lie_bracket(X1, X2, x) - RVec(0.5 * dm * X1(x))).norm(), 0.0, tol);
    EXPECT_NEAR((lie_bracket(X3, X4, x) + RVec(0.5 * dm * X1(x))).norm(), 0.0, tol);
    EXPECT_NEAR((lie_bracket(X1, X3, x) + RVec(2.0 * X4(x))).norm(), 0.0, tol);
    EXPECT_NEAR((lie_bracket(X1, X4, x) - RVec(0.5 * dp * X3(x))).norm(), 0.0, tol);
    EXPECT_NEAR((lie_bracket(X2, X3, x) - RVec(0.5 * dp * X3(x))).norm(), 0.0, tol);
    EXPECT_NEAR((lie_bracket(X2, X4, x) - RVec(2.0 * v.dot(w) * X4(x))).norm(), 0.0, tol);
  }
}

// ---------------------------------------------------------------------------
// The quaternionic double cover of the punctured disk bundle
// ---------------------------------------------------------------------------

TEST(Phi1, DoubleCoverAndObservables) {
  SmoothMap m = map_phi1();
  Rng rng(37);
  for (int t = 0; t < 200; ++t) {
    RVec xi = rng.gaussian_vec(4);
    xi *= rng.uniform(0.2, 1.9) / xi.norm();
    RVec out = m.eval(xi);
    EXPECT_NEAR((m.eval(RVec(-xi)) - out).norm(), 0.0, 1e-14);
    EXPECT_LT(m.codomain.residual(out), 1e-12);
    double n2 = xi.squaredNorm();
    complexd z1(xi[0], xi[1]), z2(xi[2], xi[3]);
    EXPECT_NEAR(out.head(3).norm(), n2 / 4.0, 1e-12);
    EXPECT_NEAR(cross3(RVec(out.head(3)), RVec(out.tail(3)))[0],
                0.25 * (std::norm(z1) - std::norm(z2)), 1e-12);
  }
  EXPECT_THROW(m.eval(RVec(RVec::Zero(4))), std::invalid_argument);
}

TEST(Phi1, PullbackOfCanonicalForms) {
  SmoothMap m = map_phi1();
  OneForm lam = lambda_canonical();
  Rng rng(38);
  for (int t = 0; t < 200; ++t) {
    RVec xi = rng.gaussian_vec(4);
    xi *= rng.uniform(0.3, 1.8) / xi.norm();
    RVec v = rng.gaussian_vec(4);
    // phi1^* lambda = (1/2) sum (x dy - y dx)
    double want = 0.5 * (xi[0] * v[1] - xi[1] * v[0] + xi[2] * v[3] - xi[3] * v[2]);
    EXPECT_NEAR(pullback_one_form(m, lam, xi, v), want, 1e-7 * std::max(1.0, std::abs(want)));
  }
  // the induced two-form is the standard one, with positive sign
  expect_form_pullback(
      m, omega_standard_cn(), dlambda(),
      [](Rng& r) {
        RVec xi = r.gaussian_vec(4);
        xi *= r.uniform(0.3, 1.8) / xi.norm();
        return xi;
      },
      200, 1e-5, 39);
}

// ---------------------------------------------------------------------------
// Planar disk models of the sphere and projective line
// ---------------------------------------------------------------------------

TEST(Psi, DiskToSphere) {
  SmoothMap m = map_psi();
  Rng rng(40);
  TwoForm half_std{[](const RVec& x, const RVec& a, const RVec& b) {
    return 0.5 * x.dot(cross3(a, b));
  }};
  for (int t = 0; t < 200; ++t) {
    RVec z = rng.gaussian_vec(2);
    z *= rng.uniform(0.05, 1.35) / z.norm();
    RVec v = m.eval(z);
    EXPECT_LT(m.codomain.residual(v), 1e-12);
    EXPECT_NEAR((m.inverse(v) - z).norm(), 0.0, 1e-12);
    // equivariance: psi(e^{it} z) = R_t psi(z)
    double th = rng.uniform(0, 2 * M_PI);
    complexd rz = complexd(z[0], z[1]) * std::polar(1.0, th);
    RVec zr(2);
    zr << rz.real(), rz.imag();
    EXPECT_NEAR((m.eval(zr) - RVec(rot_axis1(th) * v)).norm(), 0.0, 1e-12);
  }
  expect_form_pullback(
      m, omega_standard_cn(), half_std,
      [](Rng& r) {
        RVec z = r.gaussian_vec(2);
        z *= r.uniform(0.05, 1.35) / z.norm();
        return z;
      },
      200, 1e-5, 41);
}

TEST(H1H2, ProjectiveLineModels) {
  SmoothMap h1 = map_h1(), h2 = map_h2();
  Rng rng(42);
  for (int t = 0; t < 200; ++t) {
    double r = std::sqrt(rng.uniform(0.001, 0.96));
    complexd zeta = std::polar(r, rng.uniform(0, 2 * M_PI));
    RVec zv(2);
    zv << zeta.real(), zeta.imag();
    RVec rep = h1.eval(zv);
    CVec z = unflatten_c(rep);
    EXPECT_NEAR(rep.squaredNorm(), 2.0, 1e-12);
    EXPECT_NEAR(std::norm(z[0] * z[0] + z[1] * z[1]), 4.0 * r * r * (2.0 - r * r), 1e-12);
    EXPECT_NEAR((z[0] * std::conj(z[1])).imag(), 1.0 - r * r, 1e-12);

    // transporting the radius-r circle through both models lands on the
    // quartic curve |w^2 + 2 - |w|^2|^2 = 4 r^2 (2 - r^2)
    RVec wv = h2.inverse(rep);
    complexd w(wv[0], wv[1]);
    EXPECT_GT(w.imag(), 0.0);
    EXPECT_NEAR(std::norm(w * w + 2.0 - std::norm(w)), 4.0 * r * r * (2.0 - r * r), 1e-10);
    EXPECT_NEAR(proj_dist(ProjPoint(unflatten_c(h2.eval(wv))), ProjPoint(z)), 0.0, 1e-7);
  }
  auto sample_unit = [](Rng& r) {
    RVec z = r.gaussian_vec(2);
    z *= std::sqrt(r.uniform(0.001, 0.92)) / z.norm();
    return z;
  };
  expect_form_pullback(h1, omega_standard_cn(), fubini_study(), sample_unit, 150, 1e-5, 43);
  auto sample_half = [](Rng& r) {
    RVec w(2);
    w << r.uniform(-1.0, 1.0), r.uniform(0.1, 1.0);
    return w;
  };
  expect_form_pullback(h2, omega_standard_cn(), fubini_study(), sample_half, 150, 1e-5, 44);
}

TEST(PsiPembed, BallToProjectivePlane) {
  SmoothMap m = map_psi_P();
  Rng rng(45);
  auto sample_ball = [](Rng& r) {
    RVec z = r.gaussian_vec(4);
    z *= std::sqrt(r.uniform(0.01, 1.9)) / z.norm();
    return z;
  };
  for (int t = 0; t < 200; ++t) {
    RVec z = sample_ball(rng);
    RVec rep = m.eval(z);
    EXPECT_NEAR(rep.squaredNorm(), 2.0, 1e-12);
    EXPECT_NEAR((m.inverse(rep) - z).norm(), 0.0, 1e-12);
  }
  expect_form_pullback(m, omega_standard_cn(), fubini_study(), sample_ball, 150, 1e-5, 46);
}

TEST(PsiPembed, ConjugatedCircleActionsAgree) {
  // Q rho_{0,1}(t) = rho(t) Q on C^2
  Rng rng(47);
  CMat Q = mat_conj_u2();
  EXPECT_NEAR((Q * Q.adjoint() - CMat::Identity(2, 2)).norm(), 0.0, 1e-14);
  for (int t = 0; t < 100; ++t) {
    RVec z = rng.gaussian_vec(4);
    double th = rng.uniform(0, 2 * M_PI);
    CVec lhs = Q * unflatten_c(act_rho_rot(th, z));
    CVec rhs = unflatten_c(act_rho_diag(th, flatten_c(CVec(Q * unflatten_c(z)))));
    EXPECT_NEAR((lhs - rhs).norm(), 0.0, 1e-13);
  }
  // the induced projective-plane conjugation preserves the symplectic form
  auto sample_rep = [](Rng& r) {
    CVec z(3);
    for (int i = 0; i < 3; ++i) z[i] = complexd(r.gaussian(), r.gaussian());
    z *= std::sqrt(2.0) / z.norm();
    // keep away from z0 = 0 where the conjugation chart degenerates
    if (std::abs(z[0]) < 0.3) z[0] += complexd(0.5, 0);
    z *= std::sqrt(2.0) / z.norm();
    return flatten_c(z);
  };
  expect_form_pullback(map_psi_P_conj(), fubini_study(), fubini_study(), sample_rep, 100, 1e-4,
                       48);
}

// ---------------------------------------------------------------------------
// Cotangent models of the projective space and quadric
// ---------------------------------------------------------------------------

TEST(PsiP, RoundTripAndSpecialPoints) {
  int n = 2;
  SmoothMap m = map_PsiP(n);
  Rng rng(49);
  for (int t = 0; t < 200; ++t) {
    CotangentPoint c = sample_cotangent(n, 0.05, 0.95, rng);
    RVec rep = m.eval(c.flat());
    EXPECT_NEAR(rep.squaredNorm(), 2.0, 1e-12);
    // inverse recovers the canonical representative of [(p, q)]
    RVec canon = ProjCotangentPoint(c).rep.flat();
    EXPECT_NEAR((m.inverse(rep) - canon).norm(), 0.0, 1e-10);
    // sign-flipped representative maps to the same projective point
    RVec flipped = CotangentPoint(-c.p, -c.q).flat();
    EXPECT_NEAR(proj_dist(ProjPoint(unflatten_c(m.eval(flipped))), ProjPoint(unflatten_c(rep))),
                0.0, 1e-7);
    // sum of coordinate squares is -2 sqrt(1 - |p|^2)
    complexd s = proj_pair_square_sum(rep);
    EXPECT_NEAR(s.real(), -2.0 * std::sqrt(1.0 - c.p.squaredNorm()), 1e-11);
    EXPECT_NEAR(s.imag(), 0.0, 1e-11);
  }
  // zero-momentum points go to [i sqrt(2) q] (the real projective locus)
  RVec q = sample_sphere(n, rng).q;
  RVec pq(2 * (n + 1));
  pq << RVec::Zero(n + 1), q;
  CVec want(n + 1);
  for (int i = 0; i <= n; ++i) want[i] = complexd(0, std::sqrt(2.0) * q[i]);
  EXPECT_NEAR(proj_dist(ProjPoint(unflatten_c(m.eval(pq))), ProjPoint(want)), 0.0, 1e-7);
}

TEST(PsiP, PullbacksOfFormsAndObservables) {
  int n = 2;
  SmoothMap m = map_PsiP(n);
  OneForm lam = lambda_canonical();
  OneForm alpha = alpha_xy();
  Rng rng(50);
  auto sample = [n](Rng& r) { return sample_cotangent(n, 0.1, 0.9, r).flat(); };
  for (int t = 0; t < 200; ++t) {
    RVec x = sample(rng);
    RVec v = sample_tangent(m.domain, x, rng);
    double want = lam(x, v);
    EXPECT_NEAR(pullback_one_form(m, alpha, x, v), want, 1e-6 * std::max(1.0, std::abs(want)));
  }
  expect_form_pullback(m, dlambda(), fubini_study(), sample, 200, 1e-5, 51);
  // the norm of the unitary moment map recovers the momentum
  for (int t = 0; t < 100; ++t) {
    CotangentPoint c = sample_cotangent(n, 0.1, 0.9, rng);
    EXPECT_NEAR(moment_norm(moment_Phi_C(m.eval(c.flat()))), c.p.norm(), 1e-10);
  }
}

TEST(PsiP, ComposesWithDoubleCoverObservables) {
  SmoothMap phi1 = map_phi1();
  SmoothMap psip = map_PsiP(2);
  Rng rng(52);
  for (int t = 0; t < 200; ++t) {
    RVec xi = rng.gaussian_vec(4);
    xi *= rng.uniform(0.2, 1.9) / xi.norm();
    complexd z1(xi[0], xi[1]), z2(xi[2], xi[3]);
    CVec u = unflatten_c(psip.eval(phi1.eval(xi)));
    EXPECT_NEAR((std::conj(u[1]) * u[2]).imag(), 0.25 * (std::norm(z1) - std::norm(z2)), 1e-10);
    complexd s = (u.array() * u.array()).sum();
    EXPECT_NEAR(0.25 * std::sqrt(4.0 - std::norm(s)), 0.125 * xi.squaredNorm(), 1e-10);
  }
}

TEST(Psi, QuadricModel) {
  int n = 2;
  SmoothMap m = map_Psi(n);
  Rng rng(53);
  for (int t = 0; t < 200; ++t) {
    CotangentPoint c = sample_cotangent(n, 0.05, 0.95, rng);
    RVec rep = m.eval(c.flat());
    EXPECT_LT(m.codomain.residual(rep), 1e-12);
    EXPECT_NEAR((m.inverse(rep) - c.flat()).norm(), 0.0, 1e-11);
    // moment map and height observables
    Mat muq = moment_mu_Q(rep);
    Mat mus = moment_Phi_R(c.flat());
    EXPECT_NEAR((muq - mus).norm(), 0.0, 1e-12);
    EXPECT_NEAR(moment_norm(mus), c.p.norm(), 1e-12);
    CVec z = unflatten_c(rep);
    EXPECT_NEAR(std::norm(z[0]), 1.0 - c.p.squaredNorm(), 1e-12);
  }
  expect_form_pullback(m, dlambda(), fubini_study(),
                       [n](Rng& r) { return sample_cotangent(n, 0.1, 0.9, r).flat(); }, 200,
                       1e-5, 54);
}

// ---------------------------------------------------------------------------
// Disk bundle embeddings
// ---------------------------------------------------------------------------

TEST(ThetaDelta, ModelOfTheDiagonalComplement) {
  SmoothMap m = map_ThetaDelta();
  SmoothMap phi2 = map_Phi2();
  Rng rng(55);
  for (int t = 0; t < 200; ++t) {
    RVec xy = sample_tangent_disk(0.1, 1.35, rng);
    RVec vw = m.eval(xy);
    EXPECT_LT(m.codomain.residual(vw), 1e-12);
    EXPECT_NEAR((m.inverse(vw) - xy).norm(), 0.0, 1e-12);
    RVec x = xy.head(3), y = xy.tail(3);
    RVec v = vw.head(3), w = vw.tail(3);
    double y2 = y.squaredNorm();
    EXPECT_NEAR((v + w)[0], (2.0 - y2) * x[0], 1e-12);
    EXPECT_NEAR(v.dot(w), 1.0 - 2.0 * y2 + y2 * y2 / 2.0, 1e-12);
    // closed form for the composition into the cotangent bundle
    RVec pq = phi2.eval(vw);
    double yn = std::sqrt(y2);
    RVec want_p = (y2 / 2.0 - 1.0) * cross3(x, RVec(y / yn));
    EXPECT_NEAR((pq.head(3) - want_p).norm(), 0.0, 1e-12);
    EXPECT_NEAR((pq.tail(3) - y / yn).norm(), 0.0, 1e-12);
  }
}

TEST(ThetaDelta, TangentBundleFormPullback) {
  SmoothMap m = map_ThetaDelta();
  SmoothMap phi2 = map_Phi2();
  OneForm eta = tangent_bundle_primitive();
  OneForm lam = lambda_canonical();
  Rng rng(56);
  SmoothMap comp{"Phi2.ThetaDelta", m.domain, phi2.codomain,
                 [m, phi2](const RVec& x) { return phi2.eval(m.eval(x)); }, nullptr, nullptr};
  for (int t = 0; t < 150; ++t) {
    RVec xy = sample_tangent_disk(0.3, 1.3, rng);
    RVec a = sample_tangent(m.domain, xy, rng);
    double want = eta(xy, a);
    EXPECT_NEAR(pullback_one_form(comp, lam, xy, a), want,
                1e-6 * std::max(1.0, std::abs(want)));
  }
  expect_form_pullback(m, tangent_bundle_form(), omega_s2s2(),
                       [](Rng& r) { return sample_tangent_disk(0.3, 1.3, r); }, 150, 1e-4, 57);
}

TEST(ThetaQ, EmbeddingOracleAndForm) {
  int n = 2;
  SmoothMap m = map_ThetaQ(n);
  Rng rng(58);
  for (int t = 0; t < 200; ++t) {
    RVec x = sample_pq_disk(n, 1.35, rng);
    RVec rep = m.eval(x);
    EXPECT_LT(m.codomain.residual(rep), 1e-10);
    // gauge equivariance: (e^{is} w, e^{is} zeta) maps to the same point
    double s = rng.uniform(0, 2 * M_PI);
    CVec wz = unflatten_c(x);
    CVec rot = wz * std::polar(1.0, s);
    EXPECT_NEAR(proj_dist(ProjPoint(unflatten_c(m.eval(flatten_c(rot)))),
                          ProjPoint(unflatten_c(rep))),
                0.0, 1e-6);
  }
  // real-fiber closed form: [r sqrt(1 - r^2/4) : (1 - r^2/2) u + i v]
  for (int t = 0; t < 50; ++t) {
    RVec x = sample_pq_disk(n, 1.35, rng);
    int h = n + 1;
    double r = rng.uniform(0.05, 1.3);
    x[2 * h] = r;
    x[2 * h + 1] = 0.0;
    CVec z = unflatten_c(m.eval(x));
    CVec want(h + 1);
    want[0] = r * std::sqrt(1.0 - r * r / 4.0);
    for (int i = 0; i < h; ++i)
      want[i + 1] = complexd((1.0 - r * r / 2.0) * x[2 * i], x[2 * i + 1]);
    EXPECT_NEAR((z - want).norm(), 0.0, 1e-12);
  }
  expect_form_pullback(m, disk_bundle_form_quadric(), fubini_study(),
                       [n](Rng& r) { return sample_pq_disk(n, 1.3, r); }, 150, 1e-5, 59);
}

TEST(Thetap, EmbeddingOracleAndForm) {
  int n = 2;
  SmoothMap m = map_Thetap(n);
  Rng rng(60);
  int h = n + 1;
  for (int t = 0; t < 200; ++t) {
    RVec x = sample_pq_disk(n, 0.95, rng);
    RVec rep = m.eval(x);
    EXPECT_NEAR(rep.squaredNorm(), 2.0, 1e-12);
    // the projective-bundle gauge: (e^{-it/2} w, e^{-it} zeta) and (-w, zeta)
    // give the same projective point
    double s = rng.uniform(0, 2 * M_PI);
    CVec wz = unflatten_c(x);
    CVec rot = wz;
    for (int i = 0; i < h; ++i) rot[i] *= std::polar(1.0, -s / 2.0);
    rot[h] *= std::polar(1.0, -s);
    EXPECT_NEAR(proj_dist(ProjPoint(unflatten_c(m.eval(flatten_c(rot)))),
                          ProjPoint(unflatten_c(rep))),
                0.0, 1e-6);
    RVec neg = x;
    for (int i = 0; i < 2 * h; ++i) neg[i] = -x[i];
    EXPECT_NEAR(proj_dist(ProjPoint(unflatten_c(m.eval(neg))), ProjPoint(unflatten_c(rep))),
                0.0, 1e-6);
  }
  // real-fiber closed form
  for (int t = 0; t < 50; ++t) {
    RVec x = sample_pq_disk(n, 0.95, rng);
    double r = rng.uniform(0.05, 0.9);
    x[2 * h] = r;
    x[2 * h + 1] = 0.0;
    CVec z = unflatten_c(m.eval(x));
    double a = std::sqrt(1.0 - r * r / 2.0);
    CVec want(h);
    for (int i = 0; i < h; ++i)
      want[i] = complexd((a - r / std::sqrt(2.0)) * x[2 * i],
                         (a + r / std::sqrt(2.0)) * x[2 * i + 1]);
    EXPECT_NEAR((z - want).norm(), 0.0, 1e-12);
  }
  // both forms are degenerate along the gauge direction
  TwoForm bundle_form = disk_bundle_form_proj();
  TwoForm fs = fubini_study();
  for (int t = 0; t < 50; ++t) {
    RVec x = sample_pq_disk(n, 0.9, rng);
    RVec gauge(2 * h + 2);
    for (int i = 0; i < h; ++i) {
      gauge[2 * i] = 0.5 * x[2 * i + 1];
      gauge[2 * i + 1] = -0.5 * x[2 * i];
    }
    gauge[2 * h] = x[2 * h + 1];
    gauge[2 * h + 1] = -x[2 * h];
    RVec v = sample_tangent(m.domain, x, rng);
    EXPECT_NEAR(bundle_form(x, gauge, v), 0.0, 1e-10);
    EXPECT_NEAR(pullback_two_form(m, fs, x, gauge, v), 0.0, 1e-6);
  }
  expect_form_pullback(m, bundle_form, fs, [n](Rng& r) { return sample_pq_disk(n, 0.9, r); }, 150,
                       1e-5, 61);
}

// ---------------------------------------------------------------------------
// Torus parametrization and geodesic flow
// ---------------------------------------------------------------------------

TEST(Iota, DoubleCoverMomentumAndFlow) {
  int k = 1, m = 2;
  double r = 0.6;
  SmoothMap io = map_iota(k, m, r);
  Rng rng(62);
  for (int t = 0; t < 100; ++t) {
    RVec par(1 + (k + 1) + (m + 1));
    par[0] = rng.uniform(0, 2 * M_PI);
    RVec x = sample_sphere(k, rng).q, y = sample_sphere(m, rng).q;
    par.segment(1, k + 1) = x;
    par.tail(m + 1) = y;
    RVec out = io.eval(par);
    EXPECT_LT(io.codomain.residual(out), 1e-12);
    int h = k + m + 2;
    EXPECT_NEAR(out.head(h).norm(), r, 1e-13);
    // exact two-to-one covering
    RVec par2 = par;
    par2[0] += M_PI;
    par2.segment(1, k + 1) = -x;
    par2.tail(m + 1) = -y;
    EXPECT_NEAR((io.eval(par2) - out).norm(), 0.0, 1e-12);
    // unit-speed geodesic flow shifts the angle parameter
    double dt = rng.uniform(-2.0, 2.0);
    CotangentPoint c = CotangentPoint::unflat(out);
    RVec par3 = par;
    par3[0] += dt;
    EXPECT_NEAR((geodesic_flow(dt, c).flat() - io.eval(par3)).norm(), 0.0, 1e-12);
  }
}

TEST(GeodesicFlow, GroupLawAndInvariants) {
  Rng rng(63);
  for (int t = 0; t < 100; ++t) {
    CotangentPoint c = sample_cotangent(3, 0.1, 0.9, rng);
    double a = rng.uniform(-3, 3), b = rng.uniform(-3, 3);
    CotangentPoint one = geodesic_flow(a + b, c);
    CotangentPoint two = geodesic_flow(a, geodesic_flow(b, c));
    EXPECT_NEAR((one.flat() - two.flat()).norm(), 0.0, 1e-12);
    EXPECT_NEAR(one.p.norm(), c.p.norm(), 1e-12);
    EXPECT_NEAR(one.q.norm(), 1.0, 1e-12);
    EXPECT_NEAR(one.p.dot(one.q), 0.0, 1e-12);
  }
  RVec zero = RVec::Zero(3), q = rvec3(0, 0, 1);
  EXPECT_THROW(geodesic_flow(1.0, CotangentPoint(zero, q)), std::invalid_argument);
}

TEST(Iota, MatchesCircleBundleFiberFormula) {
  // Psi(iota(theta, x, y)) = ThetaQ((ix, y), sqrt(2 - 2 r e^{-i theta}))
  int k = 0, m = 1;
  double r = 0.5;
  SmoothMap io = map_iota(k, m, r);
  SmoothMap psi = map_Psi(k + m + 1);
  SmoothMap tq = map_ThetaQ(k + m + 1);
  Rng rng(64);
  int h = k + m + 2;
  for (int t = 0; t < 100; ++t) {
    RVec par(1 + (k + 1) + (m + 1));
    par[0] = rng.uniform(0, 2 * M_PI);
    par.segment(1, k + 1) = sample_sphere(k, rng).q;
    par.tail(m + 1) = sample_sphere(m, rng).q;
    RVec lhs = psi.eval(io.eval(par));

    complexd zeta = std::sqrt(2.0 - 2.0 * r) * std::polar(1.0, -par[0]);
    RVec arg(2 * h + 2);
    for (int i = 0; i <= k; ++i) {
      arg[2 * i] = 0.0;
      arg[2 * i + 1] = par[1 + i];  // i x block
    }
    for (int j = 0; j <= m; ++j) {
      arg[2 * (k + 1 + j)] = par[1 + (k + 1) + j];  // y block
      arg[2 * (k + 1 + j) + 1] = 0.0;
    }
    arg[2 * h] = zeta.real();
    arg[2 * h + 1] = zeta.imag();
    RVec rhs = tq.eval(arg);
    EXPECT_NEAR(proj_dist(ProjPoint(unflatten_c(lhs)), ProjPoint(unflatten_c(rhs))), 0.0, 1e-7);
  }
}

// ---------------------------------------------------------------------------
// Circle actions and involutions
// ---------------------------------------------------------------------------

TEST(Actions, RotationsPreserveChartsAndForms) {
  Rng rng(65);
  Chart pair = chart_s2s2();
  for (int t = 0; t < 100; ++t) {
    RVec vw = sample_pair(rng);
    double th = rng.uniform(0, 2 * M_PI);
    EXPECT_LT(pair.residual(act_rho_CS(th, vw)), 1e-12);
    EXPECT_LT(pair.residual(act_rho_EP(th, vw)), 1e-12);
    // rho_CS and rho_EP are conjugate by (Q1, Q2) = (I, diag(-1,-1,1))
    SmoothMap inv = map_Q1Q2();
    RVec lhs = inv.eval(act_rho_EP(th, vw));
    RVec rhs = act_rho_CS(th, inv.eval(vw));
    EXPECT_NEAR((lhs - rhs).norm(), 0.0, 1e-13);
  }
  SmoothMap inv = map_Q1Q2();
  for (int t = 0; t < 50; ++t) {
    RVec vw = sample_pair(rng);
    EXPECT_NEAR((inv.eval(inv.eval(vw)) - vw).norm(), 0.0, 1e-15);
  }
  expect_form_pullback(inv, omega_s2s2(), omega_s2s2(), sample_pair, 100, 1e-5, 66);
}

TEST(Actions, ProjectiveRotations) {
  Rng rng(67);
  for (int t = 0; t < 100; ++t) {
    CVec z(3);
    for (int i = 0; i < 3; ++i) z[i] = complexd(rng.gaussian(), rng.gaussian());
    z *= std::sqrt(2.0) / z.norm();
    RVec rep = flatten_c(z);
    double th = rng.uniform(0, 2 * M_PI);
    RVec rot = act_rho_proj12(th, rep);
    EXPECT_NEAR(rot.squaredNorm(), 2.0, 1e-12);
    EXPECT_NEAR((act_rho_proj_pair(1, 2, th, rep) - rot).norm(), 0.0, 1e-15);
    // unitary moment map is equivariant in norm
    EXPECT_NEAR(moment_norm(moment_Phi_C(rot)), moment_norm(moment_Phi_C(rep)), 1e-11);
  }
}

// ---------------------------------------------------------------------------
// Moment maps
// ---------------------------------------------------------------------------

TEST(MomentMaps, NormsAndIdentities) {
  Rng rng(68);
  for (int t = 0; t < 200; ++t) {
    CVec z(4);
    for (int i = 0; i < 4; ++i) z[i] = complexd(rng.gaussian(), rng.gaussian());
    z *= std::sqrt(2.0) / z.norm();
    RVec rep = flatten_c(z);
    Mat A = moment_Phi_C(rep);
    EXPECT_NEAR((A + A.transpose()).norm(), 0.0, 1e-14);
    complexd s = (z.array() * z.array()).sum();
    EXPECT_NEAR(moment_norm(A), 0.5 * std::sqrt(4.0 - std::norm(s)), 1e-12);
    // phase invariance
    RVec rep2 = flatten_c(CVec(z * std::polar(1.0, rng.uniform(0, 2 * M_PI))));
    EXPECT_NEAR((moment_Phi_C(rep2) - A).norm(), 0.0, 1e-12);
  }
  for (int t = 0; t < 100; ++t) {
    CotangentPoint c = sample_cotangent(3, 0.1, 0.95, rng);
    Mat B = moment_Phi_R(c.flat());
    EXPECT_NEAR((B + B.transpose()).norm(), 0.0, 1e-14);
    EXPECT_NEAR(moment_norm(B), c.p.norm(), 1e-13);
  }
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

TEST(Catalog, AllIdsResolve) {
  for (const std::string& id : atlas_ids()) {
    SmoothMap m = atlas_map(id, {{"n", 2}, {"k", 0}, {"m", 1}, {"r", 0.5}});
    EXPECT_EQ(m.id, id);
    EXPECT_TRUE(static_cast<bool>(m.eval));
    EXPECT_GT(m.domain.ambient_dim, 0);
  }
  EXPECT_THROW(atlas_map("nope"), std::invalid_argument);
}

TEST(ThetaBundles, InverseRoundTrips) {
  Rng rng(97);
  SmoothMap tq = map_ThetaQ(2), tp = map_Thetap(2);
  for (int i = 0; i < 20; ++i) {
    RVec x = sample_pq_disk(2, 1.2, rng);
    EXPECT_LE((tq.inverse(tq.eval(x)) - x).norm(), 1e-12);
    RVec y = sample_pq_disk(2, 0.9, rng);
    EXPECT_LE((tp.inverse(tp.eval(y)) - y).norm(), 1e-12);
  }
  SmoothMap pc = map_psi_P_conj();
  RVec b(4);
  b << 0.3, -0.2, 0.5, 0.1;
  RVec z = map_psi_P().eval(b);
  EXPECT_NEAR(
      proj_dist(ProjPoint(unflatten_c(pc.inverse(pc.eval(z)))), ProjPoint(unflatten_c(z))),
      0.0, 1e-10);
}
