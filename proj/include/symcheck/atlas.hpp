// Catalog of the explicit coordinate maps between the ball, sphere-product,
// cotangent-bundle, projective and quadric models, together with geodesic
// flow, circle actions, moment maps and the disk-bundle symplectic forms.
#pragma once

#include "symcheck/calculus.hpp"

#include <map>
#include <string>
#include <vector>

namespace symcheck {

inline constexpr double singular_delta = 1e-6;

// ---------------------------------------------------------------------------
// Scalar helpers
// ---------------------------------------------------------------------------

// f(x) = (1 - sqrt(1 - x^2)) / x^2 on [0, 1), smoothly 1/2 at 0.  Satisfies
// x^2 f(x) + 1/f(x) = 2.  Evaluated in the equivalent cancellation-free form
// 1 / (1 + sqrt(1 - x^2)).
inline double helper_f(double x) {
  if (x < 0.0 || x >= 1.0) throw std::invalid_argument("helper_f: x outside [0,1)");
  return 1.0 / (1.0 + std::sqrt(1.0 - x * x));
}

// Half-disk chart helper: D(1) -> closed upper half disk,
// f(a+ib) = -ab/sqrt(1-b^2) + i sqrt(1-b^2); satisfies f(z) = f(-z) and
// z^2 + f(z)^2 + c(z)^2 = 0 with c below.
inline complexd plane_f(complexd z) {
  double a = z.real(), b = z.imag();
  double s = std::sqrt(1.0 - b * b);
  return complexd(-a * b / s, s);
}

inline double plane_c(complexd z) {
  complexd fz = plane_f(z);
  double v = 2.0 - std::norm(z) - std::norm(fz);
  return std::sqrt(std::max(0.0, v));
}

// ---------------------------------------------------------------------------
// Extra charts
// ---------------------------------------------------------------------------

// disk bundle in TS^2: {(x, y) : |x| = 1, x.y = 0}, |y| < bound (not part of
// the residual)
inline Chart chart_tangent_s2() {
  return Chart{6, [](const RVec& x) {
                 RVec r(2);
                 r[0] = x.head(3).squaredNorm() - 1.0;
                 r[1] = x.head(3).dot(x.tail(3));
                 return r;
               }};
}

// circle-bundle total space over the quadric times a disk factor:
// ambient = (w in C^{n+1} interleaved, zeta in R^2), constraints
// |u| = |v| = 1, u.v = 0 for w = u + iv.
inline Chart chart_pq_disk(int n) {
  return Chart{2 * (n + 1) + 2, [n](const RVec& x) {
                 int h = n + 1;
                 RVec u(h), v(h);
                 for (int i = 0; i < h; ++i) {
                   u[i] = x[2 * i];
                   v[i] = x[2 * i + 1];
                 }
                 RVec r(3);
                 r[0] = u.squaredNorm() - 1.0;
                 r[1] = v.squaredNorm() - 1.0;
                 r[2] = u.dot(v);
                 return r;
               }};
}

// parameter chart for the two-to-one torus parametrization: (theta, x, y)
// with x in S^k, y in S^m
inline Chart chart_torus_params(int k, int m) {
  return Chart{1 + (k + 1) + (m + 1), [k, m](const RVec& t) {
                 RVec r(2);
                 r[0] = t.segment(1, k + 1).squaredNorm() - 1.0;
                 r[1] = t.tail(m + 1).squaredNorm() - 1.0;
                 return r;
               }};
}

// ---------------------------------------------------------------------------
// Quaternion coordinates: R^4 point (a, b, c, d) <-> z1 = a + bi, z2 = c + di,
// xi = z1 + z2 j.
// ---------------------------------------------------------------------------

inline Quat quat_from_r4(const RVec& x) { return Quat(x[0], x[1], x[2], x[3]); }

// ---------------------------------------------------------------------------
// Map catalog
// ---------------------------------------------------------------------------

// ball-to-cotangent double cover: xi -> (-xi* k xi / 4, xi* j xi / |xi|^2)
inline SmoothMap map_phi1() {
  SmoothMap m;
  m.id = "phi1";
  m.domain = chart_rn(4);
  m.codomain = chart_cotangent(2);
  m.eval = [](const RVec& x) {
    Quat xi = quat_from_r4(x);
    double n2 = xi.norm2();
    if (n2 < singular_delta * singular_delta)
      throw std::invalid_argument("phi1: too close to the origin");
    if (n2 >= 4.0) throw std::invalid_argument("phi1: outside the radius-2 ball");
    RVec p = -0.25 * quat_sandwich(xi, Quat::k());
    RVec q = quat_sandwich(xi, Quat::j()) / n2;
    RVec out(6);
    out << p, q;
    return out;
  };
  return m;
}

// sphere-product-to-cotangent symplectomorphism and its inverse
inline SmoothMap map_Phi2() {
  SmoothMap m;
  m.id = "Phi2";
  m.domain = chart_s2s2();
  m.codomain = chart_cotangent(2);
  m.eval = [](const RVec& x) {
    RVec v = x.head(3), w = x.tail(3);
    double d = (v - w).norm();
    if (d < singular_delta) throw std::invalid_argument("Phi2: too close to the diagonal");
    RVec out(6);
    out << cross3(v, w) / d, (v - w) / d;
    return out;
  };
  m.inverse = [](const RVec& x) {
    RVec p = x.head(3), q = x.tail(3);
    double s = std::sqrt(std::max(0.0, 1.0 - p.squaredNorm()));
    RVec qp = cross3(q, p);
    RVec out(6);
    out << s * q - qp, -s * q - qp;
    return out;
  };
  return m;
}

// planar disk to sphere: re^{i theta} -> (1 - r^2, r cos(theta) sqrt(2 - r^2),
// r sin(theta) sqrt(2 - r^2))
inline SmoothMap map_psi() {
  SmoothMap m;
  m.id = "psi";
  m.domain = chart_rn(2);
  m.codomain = chart_sphere(2);
  m.eval = [](const RVec& x) {
    double r2 = x.squaredNorm();
    if (r2 >= 2.0) throw std::invalid_argument("psi: outside the radius-sqrt(2) disk");
    double s = std::sqrt(2.0 - r2);
    return rvec3(1.0 - r2, x[0] * s, x[1] * s);
  };
  m.inverse = [](const RVec& v) {
    if (v[0] <= -1.0 + singular_delta)
      throw std::invalid_argument("psi inverse: at the removed antipode");
    double s = std::sqrt(1.0 + v[0]);
    RVec out(2);
    out << v[1] / s, v[2] / s;
    return out;
  };
  return m;
}

// cotangent-of-projective-space model of the projective complement of the
// quadric: [(p, q)] -> [sqrt(f(|p|)) p + i q / sqrt(f(|p|))]
inline SmoothMap map_PsiP(int n) {
  SmoothMap m;
  m.id = "PsiP";
  m.domain = chart_cotangent(n);
  m.codomain = chart_csphere(n);
  m.eval = [n](const RVec& x) {
    int h = n + 1;
    RVec p = x.head(h), q = x.tail(h);
    double pn = p.norm();
    if (pn >= 1.0) throw std::invalid_argument("PsiP: |p| >= 1");
    double sf = std::sqrt(helper_f(pn));
    CVec z(h);
    for (int i = 0; i < h; ++i) z[i] = complexd(sf * p[i], q[i] / sf);
    return flatten_c(z);
  };
  m.inverse = [n](const RVec& x) {
    CVec z = unflatten_c(x);
    complexd s = (z.array() * z.array()).sum();
    if (std::abs(s) < singular_delta)
      throw std::invalid_argument("PsiP inverse: point lies on the quadric");
    // rotate the representative so the coordinate-square sum is negative real
    double th = 0.5 * std::arg(-s);
    CVec zt = z * std::polar(1.0, -th);
    int h = n + 1;
    RVec u(h), v(h);
    for (int i = 0; i < h; ++i) {
      u[i] = zt[i].real();
      v[i] = zt[i].imag();
    }
    CotangentPoint c(v.norm() * u, v / v.norm());
    return ProjCotangentPoint(c).rep.flat();
  };
  return m;
}

// cotangent-of-sphere model of the quadric minus a hyperplane section:
// (p, q) -> [sqrt(1 - |p|^2) : p + iq]
inline SmoothMap map_Psi(int n) {
  SmoothMap m;
  m.id = "Psi";
  m.domain = chart_cotangent(n);
  m.codomain = chart_quadric(n + 1);
  m.eval = [n](const RVec& x) {
    int h = n + 1;
    RVec p = x.head(h), q = x.tail(h);
    double pn2 = p.squaredNorm();
    if (pn2 >= 1.0) throw std::invalid_argument("Psi: |p| >= 1");
    CVec z(h + 1);
    z[0] = std::sqrt(1.0 - pn2);
    for (int i = 0; i < h; ++i) z[i + 1] = complexd(p[i], q[i]);
    return flatten_c(z);
  };
  m.inverse = [n](const RVec& x) {
    CVec z = unflatten_c(x);
    if (std::abs(z[0]) < singular_delta)
      throw std::invalid_argument("Psi inverse: point on the hyperplane section");
    complexd ph = z[0] / std::abs(z[0]);
    CVec zt = z / ph;
    int h = n + 1;
    RVec out(2 * h);
    for (int i = 0; i < h; ++i) {
      out[i] = zt[i + 1].real();
      out[h + i] = zt[i + 1].imag();
    }
    return out;
  };
  return m;
}

// planar embeddings of the projective line used for the half-disk area
// computation
inline SmoothMap map_h1() {
  SmoothMap m;
  m.id = "h1";
  m.domain = chart_rn(2);
  m.codomain = chart_csphere(1);
  m.eval = [](const RVec& x) {
    complexd zeta(x[0], x[1]);
    double r2 = std::norm(zeta);
    if (r2 >= 2.0) throw std::invalid_argument("h1: outside the radius-sqrt(2) disk");
    double s = std::sqrt(1.0 - r2 / 2.0);
    CVec z(2);
    z[0] = complexd(0, 1) * (s + zeta / std::sqrt(2.0));
    z[1] = s - zeta / std::sqrt(2.0);
    return flatten_c(z);
  };
  return m;
}

inline SmoothMap map_h2() {
  SmoothMap m;
  m.id = "h2";
  m.domain = chart_rn(2);
  m.codomain = chart_csphere(1);
  m.eval = [](const RVec& x) {
    complexd w(x[0], x[1]);
    if (x[1] <= 0.0) throw std::invalid_argument("h2: not in the upper half plane");
    double r2 = std::norm(w);
    if (r2 >= 2.0) throw std::invalid_argument("h2: outside the radius-sqrt(2) disk");
    CVec z(2);
    z[0] = w;
    z[1] = std::sqrt(2.0 - r2);
    return flatten_c(z);
  };
  m.inverse = [](const RVec& x) {
    CVec z = unflatten_c(x);
    if (std::abs(z[1]) < singular_delta) throw std::invalid_argument("h2 inverse: z1 = 0");
    complexd ph = z[1] / std::abs(z[1]);
    complexd w = z[0] / ph;
    RVec out(2);
    out << w.real(), w.imag();
    return out;
  };
  return m;
}

// ball-to-projective-plane embedding: (z1, z2) -> [sqrt(2 - |z|^2) : z1 : z2]
inline SmoothMap map_psi_P() {
  SmoothMap m;
  m.id = "psi_P";
  m.domain = chart_rn(4);
  m.codomain = chart_csphere(2);
  m.eval = [](const RVec& x) {
    double r2 = x.squaredNorm();
    if (r2 >= 2.0) throw std::invalid_argument("psi_P: outside the radius-sqrt(2) ball");
    CVec z(3);
    z[0] = std::sqrt(2.0 - r2);
    z[1] = complexd(x[0], x[1]);
    z[2] = complexd(x[2], x[3]);
    return flatten_c(z);
  };
  m.inverse = [](const RVec& x) {
    CVec z = unflatten_c(x);
    if (std::abs(z[0]) < singular_delta) throw std::invalid_argument("psi_P inverse: z0 = 0");
    complexd ph = z[0] / std::abs(z[0]);
    CVec zt = z / ph;
    RVec out(4);
    out << zt[1].real(), zt[1].imag(), zt[2].real(), zt[2].imag();
    return out;
  };
  return m;
}

// tangent-disk-bundle model of the complement of the anti-diagonal
inline SmoothMap map_ThetaDelta() {
  SmoothMap m;
  m.id = "ThetaDelta";
  m.domain = chart_tangent_s2();
  m.codomain = chart_s2s2();
  m.eval = [](const RVec& t) {
    RVec x = t.head(3), y = t.tail(3);
    double y2 = y.squaredNorm();
    if (y2 >= 2.0) throw std::invalid_argument("ThetaDelta: |y| >= sqrt(2)");
    double a = 1.0 - y2 / 2.0, b = std::sqrt(1.0 - y2 / 4.0);
    RVec out(6);
    out << a * x + b * y, a * x - b * y;
    return out;
  };
  m.inverse = [](const RVec& vw) {
    RVec v = vw.head(3), w = vw.tail(3);
    double s = (v + w).norm();
    if (s < singular_delta) throw std::invalid_argument("ThetaDelta inverse: anti-diagonal");
    RVec out(6);
    out << (v + w) / s, (v - w) / std::sqrt(2.0 + s);
    return out;
  };
  return m;
}

// disk-bundle embedding into the quadric:
// (w, zeta) -> [sqrt(1 - |zeta|^2/4) zeta : (1 - |zeta|^2/4) w - zeta^2 conj(w)/4]
inline SmoothMap map_ThetaQ(int n) {
  SmoothMap m;
  m.id = "ThetaQ";
  m.domain = chart_pq_disk(n);
  m.codomain = chart_quadric(n + 1);
  m.eval = [n](const RVec& x) {
    int h = n + 1;
    CVec w(h);
    for (int i = 0; i < h; ++i) w[i] = complexd(x[2 * i], x[2 * i + 1]);
    complexd zeta(x[2 * h], x[2 * h + 1]);
    double c = std::norm(zeta) / 4.0;
    if (c >= 0.5) throw std::invalid_argument("ThetaQ: |zeta| >= sqrt(2)");
    CVec z(h + 1);
    z[0] = std::sqrt(1.0 - c) * zeta;
    for (int i = 0; i < h; ++i) z[i + 1] = (1.0 - c) * w[i] - zeta * zeta * std::conj(w[i]) / 4.0;
    return flatten_c(z);
  };
  m.inverse = [n](const RVec& x) {
    CVec z = unflatten_c(x);
    double a2 = std::norm(z[0]);  // = 4c(1-c) on the image
    if (a2 > 1.0 - singular_delta)
      throw std::invalid_argument("ThetaQ inverse: at the boundary fiber radius");
    double c = 0.5 * (1.0 - std::sqrt(1.0 - a2));
    complexd zeta = z[0] / std::sqrt(1.0 - c);
    int h = n + 1;
    RVec out(2 * h + 2);
    for (int i = 0; i < h; ++i) {
      complexd w = ((1.0 - c) * z[i + 1] + zeta * zeta * std::conj(z[i + 1]) / 4.0) / (1.0 - 2.0 * c);
      out[2 * i] = w.real();
      out[2 * i + 1] = w.imag();
    }
    out[2 * h] = zeta.real();
    out[2 * h + 1] = zeta.imag();
    return out;
  };
  return m;
}

// disk-bundle embedding into projective space:
// (w, zeta) -> [sqrt(1 - |zeta|^2/2) w - zeta conj(w)/sqrt(2)]
inline SmoothMap map_Thetap(int n) {
  SmoothMap m;
  m.id = "Thetap";
  m.domain = chart_pq_disk(n);
  m.codomain = chart_csphere(n);
  m.eval = [n](const RVec& x) {
    int h = n + 1;
    CVec w(h);
    for (int i = 0; i < h; ++i) w[i] = complexd(x[2 * i], x[2 * i + 1]);
    complexd zeta(x[2 * h], x[2 * h + 1]);
    double s = std::norm(zeta) / 2.0;
    if (s >= 1.0) throw std::invalid_argument("Thetap: |zeta| >= 1");
    CVec z(h);
    for (int i = 0; i < h; ++i)
      z[i] = std::sqrt(1.0 - s) * w[i] - zeta * std::conj(w[i]) / std::sqrt(2.0);
    return flatten_c(z);
  };
  m.inverse = [n](const RVec& x) {
    CVec z = unflatten_c(x);
    complexd a = -(z.array() * z.array()).sum() / (2.0 * std::sqrt(2.0));  // = zeta sqrt(1-s)
    double a2 = std::norm(a);  // = 2s(1-s) on the image
    if (2.0 * a2 > 1.0 - singular_delta)
      throw std::invalid_argument("Thetap inverse: at the boundary fiber radius");
    double s = 0.5 * (1.0 - std::sqrt(1.0 - 2.0 * a2));
    complexd zeta = a / std::sqrt(1.0 - s);
    int h = n + 1;
    RVec out(2 * h + 2);
    for (int i = 0; i < h; ++i) {
      complexd w =
          (std::sqrt(1.0 - s) * z[i] + zeta * std::conj(z[i]) / std::sqrt(2.0)) / (1.0 - 2.0 * s);
      out[2 * i] = w.real();
      out[2 * i + 1] = w.imag();
    }
    out[2 * h] = zeta.real();
    out[2 * h + 1] = zeta.imag();
    return out;
  };
  return m;
}

// two-to-one torus parametrization into the cotangent bundle:
// (theta, x, y) -> ((-r sin(theta) x, r cos(theta) y), (cos(theta) x, sin(theta) y))
inline SmoothMap map_iota(int k, int m, double r) {
  SmoothMap sm;
  sm.id = "iota";
  sm.domain = chart_torus_params(k, m);
  sm.codomain = chart_cotangent(k + m + 1);
  sm.eval = [k, m, r](const RVec& t) {
    double th = t[0];
    RVec x = t.segment(1, k + 1), y = t.tail(m + 1);
    int h = k + m + 2;
    RVec p(h), q(h);
    p << -r * std::sin(th) * x, r * std::cos(th) * y;
    q << std::cos(th) * x, std::sin(th) * y;
    RVec out(2 * h);
    out << p, q;
    return out;
  };
  return sm;
}

// ---------------------------------------------------------------------------
// Geodesic flow on the cotangent bundle (unit-speed, generated by |p|)
// ---------------------------------------------------------------------------

inline CotangentPoint geodesic_flow(double t, const CotangentPoint& c) {
  double pn = c.p.norm();
  if (pn < singular_delta) throw std::invalid_argument("geodesic_flow: zero section");
  RVec pu = c.p / pn;
  RVec q = std::cos(t) * c.q + std::sin(t) * pu;
  RVec p = pn * (std::cos(t) * pu - std::sin(t) * c.q);
  return CotangentPoint(p, q);
}

// ---------------------------------------------------------------------------
// Rotations, circle actions and conjugating matrices
// ---------------------------------------------------------------------------

// rotation about the first axis
inline Mat rot_axis1(double t) {
  Mat R(3, 3);
  R << 1, 0, 0, 0, std::cos(t), -std::sin(t), 0, std::sin(t), std::cos(t);
  return R;
}

// (v, w) -> (R_t v, R_{-t} w)
inline RVec act_rho_CS(double t, const RVec& vw) {
  RVec out(6);
  out << rot_axis1(t) * vw.head(3), rot_axis1(-t) * vw.tail(3);
  return out;
}

// (v, w) -> (R_t v, R_t w)
inline RVec act_rho_EP(double t, const RVec& vw) {
  RVec out(6);
  out << rot_axis1(t) * vw.head(3), rot_axis1(t) * vw.tail(3);
  return out;
}

// (z1, z2) -> (e^{it} z1, e^{-it} z2) on interleaved C^2 coordinates
inline RVec act_rho_diag(double t, const RVec& x) {
  CVec z = unflatten_c(x);
  z[0] *= std::polar(1.0, t);
  z[1] *= std::polar(1.0, -t);
  return flatten_c(z);
}

// (z1, z2) -> (cos t z1 + sin t z2, -sin t z1 + cos t z2)
inline RVec act_rho_rot(double t, const RVec& x) {
  CVec z = unflatten_c(x);
  CVec out(2);
  out[0] = std::cos(t) * z[0] + std::sin(t) * z[1];
  out[1] = -std::sin(t) * z[0] + std::cos(t) * z[1];
  return flatten_c(out);
}

// [z0 : z1 : z2] -> [z0 : z1 cos t + z2 sin t : -z1 sin t + z2 cos t]
inline RVec act_rho_proj12(double t, const RVec& x) {
  CVec z = unflatten_c(x);
  CVec out = z;
  out[1] = std::cos(t) * z[1] + std::sin(t) * z[2];
  out[2] = -std::sin(t) * z[1] + std::cos(t) * z[2];
  return flatten_c(out);
}

// rotation of a general coordinate pair (i, j) of a projective representative
inline RVec act_rho_proj_pair(int i, int j, double t, const RVec& x) {
  CVec z = unflatten_c(x);
  CVec out = z;
  out[i] = std::cos(t) * z[i] + std::sin(t) * z[j];
  out[j] = -std::sin(t) * z[i] + std::cos(t) * z[j];
  return flatten_c(out);
}

// unitary conjugating the two planar circle actions into each other
inline CMat mat_conj_u2() {
  CMat Q(2, 2);
  double s = 1.0 / std::sqrt(2.0);
  Q << complexd(s, 0), complexd(0, -s), complexd(s, 0), complexd(0, s);
  return Q;
}

// the sphere-product involution (v, w) -> (v, Q2 w), Q2 = diag(-1, -1, 1)
inline SmoothMap map_Q1Q2() {
  SmoothMap m;
  m.id = "Q1Q2";
  m.domain = chart_s2s2();
  m.codomain = chart_s2s2();
  m.eval = [](const RVec& vw) {
    RVec out = vw;
    out[3] = -vw[3];
    out[4] = -vw[4];
    return out;
  };
  m.inverse = m.eval;
  return m;
}

// conjugation of the projective plane by the planar unitary through the ball
// embedding: psi_P o Q o psi_P^{-1}
inline SmoothMap map_psi_P_conj() {
  SmoothMap m;
  m.id = "psi_P_conj";
  m.domain = chart_csphere(2);
  m.codomain = chart_csphere(2);
  SmoothMap emb = map_psi_P();
  auto conj_by = [emb](const CMat& Q) {
    return [emb, Q](const RVec& x) {
      RVec ball = emb.inverse(x);
      CVec z(2);
      z[0] = complexd(ball[0], ball[1]);
      z[1] = complexd(ball[2], ball[3]);
      CVec qz = Q * z;
      RVec b2(4);
      b2 << qz[0].real(), qz[0].imag(), qz[1].real(), qz[1].imag();
      return emb.eval(b2);
    };
  };
  CMat Q = mat_conj_u2();
  m.eval = conj_by(Q);
  m.inverse = conj_by(Q.adjoint());
  return m;
}

// ---------------------------------------------------------------------------
// Vector fields spanning the tangent spaces of the sphere product off the
// (anti-)diagonal
// ---------------------------------------------------------------------------

inline VectorField field_sphere_pair(int j) {
  return VectorField{[j](const RVec& x) {
    RVec v = x.head(3), w = x.tail(3);
    RVec out(6);
    switch (j) {
      case 1:
        out << cross3(v, w), cross3(w, v);
        break;
      case 2:
        out << cross3(v, cross3(v, w)), cross3(w, cross3(w, v));
        break;
      case 3:
        out << cross3(w, v), cross3(w, v);
        break;
      case 4:
        out << cross3(v, cross3(w, v)), cross3(w, cross3(w, v));
        break;
      default:
        throw std::invalid_argument("field_sphere_pair: index in 1..4");
    }
    return out;
  }};
}

// ---------------------------------------------------------------------------
// Moment maps for the orthogonal-group actions
// ---------------------------------------------------------------------------

// Im(conj(z) z^T) over the coordinates past the first (quadric model [z0 : z])
inline Mat moment_mu_Q(const RVec& rep) {
  CVec full = unflatten_c(rep);
  int n = static_cast<int>(full.size()) - 1;
  Mat A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      A(i, j) = (std::conj(full[i + 1]) * full[j + 1]).imag();
  return A;
}

// Im(conj(z) z^T) over all coordinates (projective-space model)
inline Mat moment_Phi_C(const RVec& rep) {
  CVec z = unflatten_c(rep);
  int n = static_cast<int>(z.size());
  Mat A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = (std::conj(z[i]) * z[j]).imag();
  return A;
}

// p q^T - q p^T on cotangent coordinates
inline Mat moment_Phi_R(const RVec& pq) {
  int h = static_cast<int>(pq.size()) / 2;
  RVec p = pq.head(h), q = pq.tail(h);
  return p * q.transpose() - q * p.transpose();
}

// norm with respect to <A, B> = tr(A^T B)/2
inline double moment_norm(const Mat& A) {
  return std::sqrt((A.transpose() * A).trace() / 2.0);
}

// ---------------------------------------------------------------------------
// Disk-bundle symplectic forms
// ---------------------------------------------------------------------------

// primitive (1/2 - 1/|y|^2) b.(x cross y) of the symplectic form on the punctured
// tangent disk bundle of the sphere
inline OneForm tangent_bundle_primitive() {
  return OneForm{[](const RVec& t, const RVec& ab) {
    RVec x = t.head(3), y = t.tail(3);
    double y2 = y.squaredNorm();
    return (0.5 - 1.0 / y2) * ab.tail(3).dot(cross3(x, y));
  }};
}

inline TwoForm tangent_bundle_form() {
  OneForm eta = tangent_bundle_primitive();
  return TwoForm{[eta](const RVec& base, const RVec& v, const RVec& w) {
    return d_one_form(eta, base, v, w);
  }};
}

// d((pi |zeta|^2 - tau) beta) + omega_C on the circle-bundle-times-disk chart,
// with beta = beta_scale * sum(v du - u dv).  tau = 2 pi, beta_scale = 1/(4 pi)
// for the quadric bundle; tau = pi, beta_scale = 1/(2 pi) for the projective
// bundle.
inline TwoForm disk_bundle_form(double tau, double beta_scale) {
  return TwoForm{[tau, beta_scale](const RVec& x, const RVec& a, const RVec& b) {
    int h = (static_cast<int>(x.size()) - 2) / 2;
    auto beta = [&](const RVec& t) {
      double s = 0;
      for (int i = 0; i < h; ++i)
        s += x[2 * i + 1] * t[2 * i] - x[2 * i] * t[2 * i + 1];
      return beta_scale * s;
    };
    auto dbeta = [&](const RVec& t1, const RVec& t2) {
      double s = 0;
      for (int i = 0; i < h; ++i)
        s += t1[2 * i] * t2[2 * i + 1] - t2[2 * i] * t1[2 * i + 1];
      return -2.0 * beta_scale * s;
    };
    double zx = x[2 * h], zy = x[2 * h + 1];
    double sigma = M_PI * (zx * zx + zy * zy) - tau;
    auto dsigma = [&](const RVec& t) {
      return 2.0 * M_PI * (zx * t[2 * h] + zy * t[2 * h + 1]);
    };
    double omega_c = a[2 * h] * b[2 * h + 1] - b[2 * h] * a[2 * h + 1];
    return dsigma(a) * beta(b) - dsigma(b) * beta(a) + sigma * dbeta(a, b) + omega_c;
  }};
}

inline TwoForm disk_bundle_form_quadric() { return disk_bundle_form(2 * M_PI, 1.0 / (4 * M_PI)); }
inline TwoForm disk_bundle_form_proj() { return disk_bundle_form(M_PI, 1.0 / (2 * M_PI)); }

// ---------------------------------------------------------------------------
// String catalog
// ---------------------------------------------------------------------------

struct MapCatalogEntry {
  SmoothMap map;
  std::string note;
};

// id with optional integer parameters, e.g. "PsiP?n=3"
inline SmoothMap atlas_map(const std::string& id,
                           const std::map<std::string, double>& params = {}) {
  auto geti = [&params](const std::string& key, int dflt) {
    auto it = params.find(key);
    return it == params.end() ? dflt : static_cast<int>(it->second);
  };
  auto getd = [&params](const std::string& key, double dflt) {
    auto it = params.find(key);
    return it == params.end() ? dflt : it->second;
  };
  if (id == "phi1") return map_phi1();
  if (id == "Phi2") return map_Phi2();
  if (id == "psi") return map_psi();
  if (id == "PsiP") return map_PsiP(geti("n", 2));
  if (id == "Psi") return map_Psi(geti("n", 2));
  if (id == "h1") return map_h1();
  if (id == "h2") return map_h2();
  if (id == "psi_P") return map_psi_P();
  if (id == "ThetaDelta") return map_ThetaDelta();
  if (id == "ThetaQ") return map_ThetaQ(geti("n", 2));
  if (id == "Thetap") return map_Thetap(geti("n", 2));
  if (id == "iota") return map_iota(geti("k", 0), geti("m", 1), getd("r", 0.5));
  if (id == "Q1Q2") return map_Q1Q2();
  if (id == "psi_P_conj") return map_psi_P_conj();
  throw std::invalid_argument("atlas_map: unknown id " + id);
}

inline std::vector<std::string> atlas_ids() {
  return {"phi1",       "Phi2", "psi",    "PsiP",   "Psi",  "h1",         "h2",
          "psi_P",      "ThetaDelta",     "ThetaQ", "Thetap", "iota",     "Q1Q2",
          "psi_P_conj"};
}

}  // namespace symcheck
