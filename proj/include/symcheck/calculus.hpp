// Charts, smooth maps, differential forms, pullbacks, Lie brackets and
// quadrature.  Everything works on flattened real ambient coordinates;
// manifolds are described by constraint residual functions and all
// differentiation is central finite differences unless a map carries an
// analytic Jacobian.
#pragma once

#include "symcheck/core.hpp"

#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace symcheck {

// FD step per the library-wide convention.
inline double fd_step(const RVec& base) { return 1e-5 * std::max(1.0, base.norm()); }

// ---------------------------------------------------------------------------
// Charts
// ---------------------------------------------------------------------------

// A chart is an ambient coordinate space together with a list of constraint
// residuals cutting out the manifold.  `constraints` may be null for open
// subsets of R^n.
struct Chart {
  int ambient_dim = 0;
  std::function<RVec(const RVec&)> constraints;  // -> residual vector

  double residual(const RVec& x) const {
    if (!constraints) return 0.0;
    return constraints(x).cwiseAbs().maxCoeff();
  }
};

inline Chart chart_rn(int n) { return Chart{n, nullptr}; }

// S^n in R^{n+1}
inline Chart chart_sphere(int n) {
  return Chart{n + 1, [](const RVec& x) {
                 RVec r(1);
                 r[0] = x.squaredNorm() - 1.0;
                 return r;
               }};
}

// S^2 x S^2 in R^6
inline Chart chart_s2s2() {
  return Chart{6, [](const RVec& x) {
                 RVec r(2);
                 r[0] = x.head(3).squaredNorm() - 1.0;
                 r[1] = x.tail(3).squaredNorm() - 1.0;
                 return r;
               }};
}

// T*S^n = {(p,q) : q.p = 0, |q| = 1} in R^{2n+2}, coordinates (p, q)
inline Chart chart_cotangent(int n) {
  return Chart{2 * (n + 1), [n](const RVec& x) {
                 int h = n + 1;
                 RVec p = x.head(h), q = x.tail(h);
                 RVec r(2);
                 r[0] = q.squaredNorm() - 1.0;
                 r[1] = p.dot(q);
                 return r;
               }};
}

// radius-sqrt(2) sphere in C^{n+1}, flattened as (Re z, Im z) interleaved:
// coordinate 2i is Re z_i, coordinate 2i+1 is Im z_i.
inline Chart chart_csphere(int n) {
  return Chart{2 * (n + 1), [](const RVec& x) {
                 RVec r(1);
                 r[0] = x.squaredNorm() - 2.0;
                 return r;
               }};
}

inline CVec unflatten_c(const RVec& x) {
  int n = static_cast<int>(x.size()) / 2;
  CVec z(n);
  for (int i = 0; i < n; ++i) z[i] = complexd(x[2 * i], x[2 * i + 1]);
  return z;
}

inline RVec flatten_c(const CVec& z) {
  RVec x(2 * z.size());
  for (int i = 0; i < z.size(); ++i) {
    x[2 * i] = z[i].real();
    x[2 * i + 1] = z[i].imag();
  }
  return x;
}

// quadric {sum z_j^2 = 0} inside the radius-sqrt(2) sphere
inline Chart chart_quadric(int n) {
  return Chart{2 * (n + 1), [](const RVec& x) {
                 CVec z = unflatten_c(x);
                 complexd s = (z.array() * z.array()).sum();
                 RVec r(3);
                 r[0] = x.squaredNorm() - 2.0;
                 r[1] = s.real();
                 r[2] = s.imag();
                 return r;
               }};
}

// ---------------------------------------------------------------------------
// Tangent vectors
// ---------------------------------------------------------------------------

struct TangentVec {
  RVec base;
  RVec dir;
};

inline Mat constraint_jacobian(const Chart& chart, const RVec& x) {
  RVec c0 = chart.constraints(x);
  int m = static_cast<int>(c0.size());
  Mat J(m, chart.ambient_dim);
  double h = fd_step(x);
  RVec xp = x, xm = x;
  for (int j = 0; j < chart.ambient_dim; ++j) {
    xp[j] += h;
    xm[j] -= h;
    J.col(j) = (chart.constraints(xp) - chart.constraints(xm)) / (2 * h);
    xp[j] = x[j];
    xm[j] = x[j];
  }
  return J;
}

// Project dir onto the kernel of the linearized constraints at x.
inline RVec tangent_project(const Chart& chart, const RVec& x, const RVec& dir) {
  if (!chart.constraints) return dir;
  Mat J = constraint_jacobian(chart, x);
  Mat G = J * J.transpose();
  RVec lam = G.ldlt().solve(J * dir);
  return dir - J.transpose() * lam;
}

inline RVec sample_tangent(const Chart& chart, const RVec& x, Rng& rng) {
  for (int tries = 0; tries < 32; ++tries) {
    RVec v = tangent_project(chart, x, rng.gaussian_vec(chart.ambient_dim));
    if (v.norm() > 1e-6) return v / v.norm();
  }
  throw std::runtime_error("sample_tangent: degenerate draws");
}

// ---------------------------------------------------------------------------
// Smooth maps
// ---------------------------------------------------------------------------

struct SmoothMap {
  std::string id;
  Chart domain;
  Chart codomain;
  std::function<RVec(const RVec&)> eval;
  std::function<Mat(const RVec&)> jac;      // optional analytic Jacobian
  std::function<RVec(const RVec&)> inverse;  // optional
};

inline Mat jacobian(const SmoothMap& map, const RVec& base, double domain_tol = 1e-8) {
  if (map.domain.constraints && map.domain.residual(base) > domain_tol)
    throw std::invalid_argument("jacobian: base point off the domain manifold");
  if (map.jac) return map.jac(base);
  double h = fd_step(base);
  RVec xp = base, xm = base;
  RVec f0 = map.eval(base);
  Mat J(f0.size(), base.size());
  for (int j = 0; j < base.size(); ++j) {
    xp[j] += h;
    xm[j] -= h;
    J.col(j) = (map.eval(xp) - map.eval(xm)) / (2 * h);
    xp[j] = base[j];
    xm[j] = base[j];
  }
  return J;
}

// Directional derivative of the map along dir at base (central differences,
// or the analytic Jacobian when present).
inline RVec pushforward(const SmoothMap& map, const RVec& base, const RVec& dir) {
  if (map.jac) return map.jac(base) * dir;
  double n = std::max(1.0, dir.norm());
  double h = fd_step(base) / n;
  return (map.eval(base + h * dir) - map.eval(base - h * dir)) / (2 * h);
}

// ---------------------------------------------------------------------------
// Differential forms
// ---------------------------------------------------------------------------

struct OneForm {
  std::function<double(const RVec&, const RVec&)> eval;  // (base, v)
  double operator()(const RVec& base, const RVec& v) const { return eval(base, v); }
};

struct TwoForm {
  std::function<double(const RVec&, const RVec&, const RVec&)> eval;  // (base, v, w)
  double operator()(const RVec& base, const RVec& v, const RVec& w) const {
    return eval(base, v, w);
  }
};

struct VectorField {
  std::function<RVec(const RVec&)> eval;
  RVec operator()(const RVec& x) const { return eval(x); }
};

inline double pullback_one_form(const SmoothMap& map, const OneForm& form, const RVec& base,
                                const RVec& v) {
  return form(map.eval(base), pushforward(map, base, v));
}

inline double pullback_two_form(const SmoothMap& map, const TwoForm& form, const RVec& base,
                                const RVec& v, const RVec& w) {
  return form(map.eval(base), pushforward(map, base, v), pushforward(map, base, w));
}

// [X, Y] = DY.X - DX.Y via directional finite differences.
inline RVec lie_bracket(const VectorField& X, const VectorField& Y, const RVec& base) {
  RVec xv = X(base), yv = Y(base);
  double hx = fd_step(base) / std::max(1.0, xv.norm());
  double hy = fd_step(base) / std::max(1.0, yv.norm());
  RVec dyx = (Y(base + hx * xv) - Y(base - hx * xv)) / (2 * hx);
  RVec dxy = (X(base + hy * yv) - X(base - hy * yv)) / (2 * hy);
  return dyx - dxy;
}

// Exterior derivative of a one-form on constant-extension vector fields:
// d(form)(v, w) at x = D_v form(., w) - D_w form(., v).
inline double d_one_form(const OneForm& form, const RVec& base, const RVec& v, const RVec& w) {
  double hv = fd_step(base) / std::max(1.0, v.norm());
  double hw = fd_step(base) / std::max(1.0, w.norm());
  double a = (form(base + hv * v, w) - form(base - hv * v, w)) / (2 * hv);
  double b = (form(base + hw * w, v) - form(base - hw * w, v)) / (2 * hw);
  return a - b;
}

// ---------------------------------------------------------------------------
// Built-in form instances
// ---------------------------------------------------------------------------

inline RVec cross3(const RVec& a, const RVec& b) {
  return rvec3(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]);
}

// canonical one-form p.dq on T*S^n coordinates (p, q)
inline OneForm lambda_canonical() {
  return OneForm{[](const RVec& x, const RVec& v) {
    int h = static_cast<int>(x.size()) / 2;
    return x.head(h).dot(v.tail(h));
  }};
}

// d(lambda) = sum dp_i ^ dq_i
inline TwoForm dlambda() {
  return TwoForm{[](const RVec&, const RVec& v, const RVec& w) {
    int h = static_cast<int>(v.size()) / 2;
    return v.head(h).dot(w.tail(h)) - w.head(h).dot(v.tail(h));
  }};
}

// alpha = sum x_j dy_j on C^{n+1} flattened as (Re, Im) interleaved
inline OneForm alpha_xy() {
  return OneForm{[](const RVec& x, const RVec& v) {
    double s = 0;
    for (int i = 0; i + 1 < x.size(); i += 2) s += x[i] * v[i + 1];
    return s;
  }};
}

// standard form sum dx_j ^ dy_j on interleaved complex coordinates
inline TwoForm omega_standard_cn() {
  return TwoForm{[](const RVec&, const RVec& v, const RVec& w) {
    double s = 0;
    for (int i = 0; i + 1 < v.size(); i += 2) s += v[i] * w[i + 1] - w[i] * v[i + 1];
    return s;
  }};
}

// area form on the unit sphere: omega_x(a, b) = x . (a x b)
inline TwoForm omega_std_s2() {
  return TwoForm{[](const RVec& x, const RVec& v, const RVec& w) {
    return x.dot(cross3(v, w));
  }};
}

// (1/2 omega_std) + (1/2 omega_std) on S^2 x S^2 in R^6
inline TwoForm omega_s2s2() {
  return TwoForm{[](const RVec& x, const RVec& v, const RVec& w) {
    RVec x1 = x.head(3), x2 = x.tail(3);
    return 0.5 * x1.dot(cross3(RVec(v.head(3)), RVec(w.head(3)))) +
           0.5 * x2.dot(cross3(RVec(v.tail(3)), RVec(w.tail(3))));
  }};
}

// du ^ dv / (1 - v^2) on the open planar strip |v| < 1
inline TwoForm omega_prime_disk() {
  return TwoForm{[](const RVec& x, const RVec& v, const RVec& w) {
    return (v[0] * w[1] - w[0] * v[1]) / (1.0 - x[1] * x[1]);
  }};
}

// primitive u dv / (1 - v^2) of omega_prime_disk
inline OneForm omega_prime_primitive() {
  return OneForm{[](const RVec& x, const RVec& v) {
    return x[0] * v[1] / (1.0 - x[1] * x[1]);
  }};
}

// primitive (u dv - v du)/2 of the standard area form
inline OneForm standard_area_primitive() {
  return OneForm{[](const RVec& x, const RVec& v) {
    return 0.5 * (x[0] * v[1] - x[1] * v[0]);
  }};
}

// Fubini-Study form on CP^n(sqrt 2), evaluated on representatives on the
// radius-sqrt(2) sphere via horizontal projection
inline TwoForm fubini_study() {
  return TwoForm{[](const RVec& x, const RVec& v, const RVec& w) {
    CVec z = unflatten_c(x), zv = unflatten_c(v), zw = unflatten_c(w);
    complexd ipv = (z.conjugate().array() * zv.array()).sum();
    complexd ipw = (z.conjugate().array() * zw.array()).sum();
    CVec hv = zv - (ipv / 2.0) * z;
    CVec hw = zw - (ipw / 2.0) * z;
    complexd ip = (hv.conjugate().array() * hw.array()).sum();
    return ip.imag();
  }};
}

// ---------------------------------------------------------------------------
// Gauss-Legendre quadrature (Golub-Welsch)
// ---------------------------------------------------------------------------

struct QuadRule {
  std::vector<double> nodes, weights;  // on [-1, 1]
};

inline const QuadRule& gauss_legendre(int n) {
  static std::map<int, QuadRule> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Mat J = Mat::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    double b = i / std::sqrt(4.0 * i * i - 1.0);
    J(i, i - 1) = b;
    J(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(J);
  QuadRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = es.eigenvalues()[i];
    double v0 = es.eigenvectors()(0, i);
    r.weights[i] = 2.0 * v0 * v0;
  }
  return cache.emplace(n, std::move(r)).first->second;
}

// ---------------------------------------------------------------------------
// Integration of a pulled-back two-form over a parameter rectangle
// ---------------------------------------------------------------------------

struct IntegralResult {
  double value = 0;
  double error_estimate = 0;
};

using ParamSurface = std::function<RVec(double, double)>;

inline double integrate_surface_once(const ParamSurface& F, const TwoForm& form, double a0,
                                     double a1, double b0, double b1, int n) {
  const QuadRule& q = gauss_legendre(n);
  double total = 0;
  double ka = (a1 - a0) / 2, kb = (b1 - b0) / 2;
  for (int i = 0; i < n; ++i) {
    double s = a0 + ka * (q.nodes[i] + 1.0);
    for (int j = 0; j < n; ++j) {
      double t = b0 + kb * (q.nodes[j] + 1.0);
      // fourth-order stencils keep the rounding error of the partials well
      // below the quadrature tolerance
      double hs = 1e-4 * std::max(1.0, std::abs(s));
      double ht = 1e-4 * std::max(1.0, std::abs(t));
      RVec P = F(s, t);
      RVec ds = (8.0 * (F(s + hs, t) - F(s - hs, t)) - (F(s + 2 * hs, t) - F(s - 2 * hs, t))) /
                (12 * hs);
      RVec dt = (8.0 * (F(s, t + ht) - F(s, t - ht)) - (F(s, t + 2 * ht) - F(s, t - 2 * ht))) /
                (12 * ht);
      total += q.weights[i] * q.weights[j] * ka * kb * form(P, ds, dt);
    }
  }
  return total;
}

// Tensor Gauss-Legendre integration of F^* form over [a0,a1]x[b0,b1] with a
// Richardson-style error estimate from the half-resolution grid.
inline IntegralResult integrate_surface(const ParamSurface& F, const TwoForm& form, double a0,
                                        double a1, double b0, double b1, int n = 64) {
  double coarse = integrate_surface_once(F, form, a0, a1, b0, b1, n / 2);
  double fine = integrate_surface_once(F, form, a0, a1, b0, b1, n);
  return IntegralResult{fine, std::abs(fine - coarse)};
}

// Integral of the pulled-back two-form over the closed unit parameter disk,
// in polar parameters.
inline IntegralResult disk_integral(const std::function<RVec(complexd)>& disk, const TwoForm& form,
                                    int n = 64) {
  ParamSurface F = [&disk](double r, double th) { return disk(std::polar(r, th)); };
  return integrate_surface(F, form, 0.0, 1.0, 0.0, 2 * M_PI, n);
}

// ---------------------------------------------------------------------------
// FFT and closed-curve line integrals
// ---------------------------------------------------------------------------

inline void fft_inplace(std::vector<complexd>& a, bool invert) {
  int n = static_cast<int>(a.size());
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    double ang = 2 * M_PI / len * (invert ? 1 : -1);
    complexd wl = std::polar(1.0, ang);
    for (int i = 0; i < n; i += len) {
      complexd w(1.0);
      for (int k = 0; k < len / 2; ++k) {
        complexd u = a[i + k], v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (invert)
    for (auto& x : a) x /= n;
}

// Spectral derivative of a periodic sequence of samples over [0, 2pi).
inline std::vector<complexd> spectral_derivative(std::vector<complexd> samples) {
  int n = static_cast<int>(samples.size());
  fft_inplace(samples, false);
  for (int k = 0; k < n; ++k) {
    int freq = (k <= n / 2) ? k : k - n;
    if (k == n / 2) freq = 0;  // drop the unmatched Nyquist mode
    samples[k] *= complexd(0.0, freq);
  }
  fft_inplace(samples, true);
  return samples;
}

using PlaneCurve = std::function<complexd(double)>;  // periodic over [0, 2pi)

// Line integral of a one-form over a closed plane curve, spectrally accurate
// for trigonometric-polynomial curves.
inline double closed_line_integral(const PlaneCurve& curve, const OneForm& form, int n = 1024) {
  std::vector<complexd> samples(n);
  for (int k = 0; k < n; ++k) samples[k] = curve(2 * M_PI * k / n);
  std::vector<complexd> deriv = spectral_derivative(samples);
  double total = 0;
  for (int k = 0; k < n; ++k) {
    RVec x(2), v(2);
    x << samples[k].real(), samples[k].imag();
    v << deriv[k].real(), deriv[k].imag();
    total += form(x, v);
  }
  return total * 2 * M_PI / n;
}

// Enclosed area of a simple closed plane curve with respect to a two-form
// given by a primitive one-form (Green's theorem).
inline double planar_area(const PlaneCurve& curve, const OneForm& primitive, int n = 1024) {
  return closed_line_integral(curve, primitive, n);
}

}  // namespace symcheck
