#pragma once

// Quantitative invariants of the catalog Lagrangians: symplectic areas of
// explicit disks, Maslov indices via symplectic trivializations, monotone
// fiber radii, minimal Maslov numbers, the circle-bundle displaceability
// criterion, holonomy angles, displacement-isotopy certificates, and the
// Morse-function verification on the split torus bundles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "symcheck/atlas.hpp"
#include "symcheck/calculus.hpp"
#include "symcheck/core.hpp"
#include "symcheck/lagrangians.hpp"

namespace symcheck {

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

// A parametrized disk with boundary on a catalog Lagrangian.  `map` sends the
// closed unit disk into the ambient chart; `form` is the ambient symplectic
// form used for its area.  `boundary_params`, when present, sends a boundary
// angle to parameters of the boundary Lagrangian (used by the Maslov engine).
struct DiskSpec {
  std::string id;
  Chart ambient;
  TwoForm form;
  std::function<RVec(complexd)> map;
  std::string boundary_id;
  LagrangianSpec boundary;
  std::function<RVec(double)> boundary_params;
};

// A loop of Lagrangian frames: each entry is a 2N x N real matrix (X; Y)
// whose columns span a Lagrangian plane of the standard form on R^{2N}.
struct LagrangianFrameLoop {
  std::vector<Mat> frames;
};

struct ClassLatticeEntry {
  std::string id;
  double area = 0.0;
  long long maslov = 0;
};

// ---------------------------------------------------------------------------
// Small exact rationals (for monotone radii)
// ---------------------------------------------------------------------------

struct Rational {
  long long num = 0;
  long long den = 1;
};

namespace detail {

inline long long gcd_ll(long long a, long long b) {
  a = std::llabs(a);
  b = std::llabs(b);
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline Rational rat(long long n, long long d) {
  if (d == 0) throw std::domain_error("rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  long long g = gcd_ll(n, d);
  if (g == 0) return Rational{0, 1};
  return Rational{n / g, d / g};
}

inline Rational rat_add(Rational a, Rational b) {
  return rat(a.num * b.den + b.num * a.den, a.den * b.den);
}
inline Rational rat_sub(Rational a, Rational b) {
  return rat(a.num * b.den - b.num * a.den, a.den * b.den);
}
inline Rational rat_mul(Rational a, Rational b) { return rat(a.num * b.num, a.den * b.den); }
inline Rational rat_div(Rational a, Rational b) {
  if (b.num == 0) throw std::domain_error("rational: division by zero");
  return rat(a.num * b.den, a.den * b.num);
}

// continued-fraction rationalization of a measured value
inline Rational rational_approx(double x, double tol = 1e-9, long long max_den = 1000000) {
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double v = x;
  for (int it = 0; it < 64; ++it) {
    double fa = std::floor(v);
    long long a = static_cast<long long>(fa);
    long long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (std::abs(x - static_cast<double>(p1) / q1) < tol) return rat(p1, q1);
    double frac = v - fa;
    if (frac < 1e-15) break;
    v = 1.0 / frac;
  }
  if (std::abs(x - static_cast<double>(p1) / std::max<long long>(q1, 1)) < tol) return rat(p1, q1);
  throw std::domain_error("rational_approx: no small-denominator value within tolerance");
}

}  // namespace detail

inline double rational_value(const Rational& r) {
  return static_cast<double>(r.num) / static_cast<double>(r.den);
}

// ---------------------------------------------------------------------------
// Disk catalog
// ---------------------------------------------------------------------------

namespace detail {

inline std::pair<std::string, std::map<std::string, double>> parse_id(const std::string& full) {
  auto qpos = full.find('?');
  std::map<std::string, double> pv;
  std::string id = full.substr(0, qpos);
  if (qpos != std::string::npos) {
    std::string rest = full.substr(qpos + 1);
    size_t pos = 0;
    while (pos < rest.size()) {
      size_t amp = rest.find('&', pos);
      std::string kvs = rest.substr(pos, amp == std::string::npos ? amp : amp - pos);
      auto eq = kvs.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("disk: malformed query " + full);
      pv[kvs.substr(0, eq)] = std::stod(kvs.substr(eq + 1));
      pos = amp == std::string::npos ? rest.size() : amp + 1;
    }
  }
  return {id, pv};
}

inline double pv_get(const std::map<std::string, double>& pv, const std::string& key,
                     double fallback, bool required = false) {
  auto it = pv.find(key);
  if (it != pv.end()) return it->second;
  if (required) throw std::invalid_argument("disk: missing parameter " + key);
  return fallback;
}

inline std::string km_query(int k, int m) {
  return "k=" + std::to_string(k) + "&m=" + std::to_string(m);
}

// geodesic-orbit disks in T*S^{k+m+1}; slot bookkeeping matches map_iota
inline DiskSpec make_u_disk(int which, int k, int m, double r) {
  if (k < 0 || m < k || (k == 0 && m == 0))
    throw std::invalid_argument("disk: need m >= k >= 0, not both zero");
  if (which == 2 && k < 1) throw std::invalid_argument("disk: u2 needs k >= 1");
  if (which == 3 && m < 1) throw std::invalid_argument("disk: u3 needs m >= 1");
  int h = k + m + 2;
  DiskSpec d;
  d.id = "u" + std::to_string(which);
  d.ambient = chart_cotangent(k + m + 1);
  d.form = dlambda();
  d.boundary_id = "P_k_m?" + km_query(k, m) + "&r=" + std::to_string(r);
  d.boundary = detail::make_P(k, m, r, false);
  if (which == 1) {
    d.map = [h, k, r](complexd w) {
      RVec x = RVec::Zero(2 * h);
      x[0] = -r * w.imag();
      x[k + 1] = r * w.real();
      x[h] = w.real();
      x[h + k + 1] = w.imag();
      x[2 * h - 1] = std::sqrt(std::max(0.0, 1.0 - std::norm(w)));
      return x;
    };
    d.boundary_params = [k, m](double th) {
      RVec t = RVec::Zero(1 + (k + 1) + (m + 1));
      t[0] = th;
      t[1] = 1.0;
      t[k + 2] = 1.0;
      return t;
    };
  } else if (which == 2) {
    d.map = [h, r](complexd w) {
      RVec x = RVec::Zero(2 * h);
      x[0] = r * w.real();
      x[1] = r * w.imag();
      x[2 * h - 1] = 1.0;
      return x;
    };
    d.boundary_params = [k, m](double th) {
      RVec t = RVec::Zero(1 + (k + 1) + (m + 1));
      t[0] = M_PI / 2;
      t[1] = -std::cos(th);
      t[2] = -std::sin(th);
      t[1 + (k + 1) + m] = 1.0;
      return t;
    };
  } else {
    d.map = [h, k, r](complexd w) {
      RVec x = RVec::Zero(2 * h);
      x[k + 1] = r * w.real();
      x[k + 2] = r * w.imag();
      x[h] = 1.0;
      return x;
    };
    d.boundary_params = [k, m](double th) {
      RVec t = RVec::Zero(1 + (k + 1) + (m + 1));
      t[0] = 0.0;
      t[1] = 1.0;
      t[k + 2] = std::cos(th);
      t[k + 3] = std::sin(th);
      return t;
    };
  }
  return d;
}

// zero-area vertical disks through the projective RP^3-type locus [ix : y]
inline DiskSpec make_v_disk(int which) {
  double s2 = 1.0 - std::sqrt(3.0) / 2.0;  // square of the smaller critical radius
  double sm = std::sqrt(s2);
  DiskSpec d;
  d.id = "v" + std::to_string(which);
  d.ambient = chart_csphere(3);
  d.form = fubini_study();
  d.boundary_id = "L_P_k_m?k=1&m=1";
  d.boundary = detail::make_L_P(1, 1);
  d.map = [sm, which](complexd w) {
    CVec z = CVec::Zero(4);
    complexd g = sm * w;
    double c = std::sqrt(std::max(0.0, 2.0 - std::norm(g)));
    if (which == 1) {
      z[0] = complexd(0, 1) * g.real() * 1.0;
      z[1] = complexd(0, 1) * g.imag() * 1.0;
      z[2] = c;
    } else {
      z[0] = complexd(0, c);
      z[2] = g.real();
      z[3] = g.imag();
    }
    return flatten_c(z);
  };
  return d;
}

// fiber disk of a circle-bundle lift, expressed through the bundle chart
inline DiskSpec make_fiber_disk(const std::string& bundle, int k, int m, double r) {
  DiskSpec d;
  d.id = "fiber_" + bundle;
  int n = k + m + 1;
  bool quadric = bundle == "ThetaQ";
  double rho = quadric ? std::sqrt(std::max(0.0, 2.0 - 2.0 * r))
                       : std::sqrt(std::max(0.0, 1.0 - r));
  SmoothMap th = quadric ? map_ThetaQ(n) : map_Thetap(n);
  d.ambient = th.codomain;
  d.form = fubini_study();
  LagrangianSpec base = make_S(k, m);
  d.boundary = circle_bundle_lift(base, rho, bundle);
  d.boundary_id = "S_k_m?" + km_query(k, m) + "@" + bundle;
  // base point [i e_{0,x} : e_{0,y}] written in the (u, v) chart of the bundle
  RVec bp = RVec::Zero(2 * (n + 1) + 2);
  bp[2 * 0 + 1] = 1.0;            // v = e_0 of the x block
  bp[2 * (k + 1) + 0] = 1.0;      // u = e_0 of the y block
  d.map = [th, bp, rho, n](complexd w) {
    RVec x = bp;
    x[2 * (n + 1)] = rho * w.real();
    x[2 * (n + 1) + 1] = rho * w.imag();
    return th.eval(x);
  };
  return d;
}

inline DiskSpec make_fiber_delta(double rho) {
  DiskSpec d;
  d.id = "fiber_ThetaDelta";
  SmoothMap th = map_ThetaDelta();
  d.ambient = th.codomain;
  d.form = omega_s2s2();
  d.boundary = circle_bundle_lift(make_equator_x1(), rho, "ThetaDelta");
  d.boundary_id = "equator_x1@ThetaDelta";
  d.map = [th, rho](complexd w) {
    RVec in(6);
    in << 0, 0, 1, rho * w.real(), rho * w.imag(), 0;
    return th.eval(in);
  };
  return d;
}

// cap above the height-1/2 circle on the sphere, measured against omega/2
inline DiskSpec make_cap_disk() {
  DiskSpec d;
  d.id = "cap_gamma_prime";
  d.ambient = chart_sphere(3);
  TwoForm half;
  half.eval = [](const RVec& x, const RVec& v, const RVec& w) {
    return 0.5 * x.dot(cross3(v, w));
  };
  d.form = half;
  d.boundary_id = "Gamma_prime";
  d.boundary = lagrangian("Gamma_prime");
  double c = std::sqrt(3.0) / 2.0;
  d.map = [c](complexd w) {
    double r2 = std::norm(w);
    return rvec3(-c * w.imag(), -c * w.real(), std::sqrt(std::max(0.0, 1.0 - 0.75 * r2)));
  };
  return d;
}

// half of a plane conic through the real locus of the k = 0 quadric
inline DiskSpec make_hemisphere_disk(int m) {
  if (m < 1) throw std::invalid_argument("disk: hemisphere_Q needs m >= 1");
  DiskSpec d;
  d.id = "hemisphere_Q";
  d.ambient = chart_quadric(m + 1);
  d.form = fubini_study();
  d.boundary_id = "S_k_m?" + km_query(0, m);
  d.boundary = detail::make_S(0, m);
  d.map = [m](complexd w) {
    complexd s = complexd(0, 1) * (1.0 - w), t = 1.0 + w;
    CVec z = CVec::Zero(m + 2);
    z[0] = complexd(0, 1) * (s * s + t * t);
    z[1] = s * s - t * t;
    z[2] = 2.0 * s * t;
    z *= std::sqrt(2.0) / z.norm();
    return flatten_c(z);
  };
  return d;
}

// half of a projective line through the real locus of a k > 0 quadric
inline DiskSpec make_line_half_disk(int k, int m) {
  if (k < 1) throw std::invalid_argument("disk: line_half needs k >= 1");
  DiskSpec d;
  d.id = "line_half";
  d.ambient = chart_quadric(k + m + 1);
  d.form = fubini_study();
  d.boundary_id = "S_k_m?" + km_query(k, m);
  d.boundary = detail::make_S(k, m);
  d.map = [k, m](complexd w) {
    complexd u = complexd(0, 1) * (1.0 - w), v = 1.0 + w;
    CVec z = CVec::Zero(k + m + 2);
    z[0] = complexd(0, 1) * u;
    z[1] = complexd(0, 1) * v;
    z[k + 1] = u;
    z[k + 2] = -v;
    z *= std::sqrt(2.0) / z.norm();
    return flatten_c(z);
  };
  return d;
}

}  // namespace detail

inline std::vector<std::string> disk_ids() {
  return {"u1", "u2",          "u3",          "v1",          "v2",       "fiber_ThetaQ",
          "fiber_Thetap", "fiber_ThetaDelta", "cap_gamma_prime", "hemisphere_Q", "line_half"};
}

inline DiskSpec disk(const std::string& full_id,
                     const std::map<std::string, double>& extra = {}) {
  auto [id, pv] = detail::parse_id(full_id);
  for (const auto& [key, val] : extra) pv[key] = val;
  auto geti = [&pv](const std::string& key, int fallback) {
    return static_cast<int>(std::llround(detail::pv_get(pv, key, fallback)));
  };
  if (id == "u1" || id == "u2" || id == "u3") {
    int k = geti("k", id == "u2" ? 1 : 0), m = geti("m", 1);
    double r = detail::pv_get(pv, "r", 0.5);
    return detail::make_u_disk(id[1] - '0', k, m, r);
  }
  if (id == "v1") return detail::make_v_disk(1);
  if (id == "v2") return detail::make_v_disk(2);
  if (id == "fiber_ThetaQ") {
    int k = geti("k", 0), m = geti("m", 1);
    double r = detail::pv_get(pv, "r", 1.0 - 1.0 / (k + m + 1));
    return detail::make_fiber_disk("ThetaQ", k, m, r);
  }
  if (id == "fiber_Thetap") {
    int k = geti("k", 0), m = geti("m", 1);
    double r = detail::pv_get(pv, "r", 1.0 - 2.0 / (k + m + 2));
    return detail::make_fiber_disk("Thetap", k, m, r);
  }
  if (id == "fiber_ThetaDelta") return detail::make_fiber_delta(detail::pv_get(pv, "rho", 1.0));
  if (id == "cap_gamma_prime") return detail::make_cap_disk();
  if (id == "hemisphere_Q") return detail::make_hemisphere_disk(geti("m", 1));
  if (id == "line_half") return detail::make_line_half_disk(geti("k", 1), geti("m", 1));
  throw std::invalid_argument("disk: unknown id " + id);
}

// worst boundary residual of the disk on its named Lagrangian
inline double boundary_residual(const DiskSpec& d, int n = 64) {
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    RVec p = d.map(std::polar(1.0, 2 * M_PI * i / n));
    worst = std::max(worst, residual(d.boundary, p));
  }
  return worst;
}

inline double disk_area(const DiskSpec& d, int n = 64) {
  return disk_integral(d.map, d.form, n).value;
}

// ---------------------------------------------------------------------------
// Maslov index of a loop of Lagrangian frames
// ---------------------------------------------------------------------------

inline int maslov_frame_loop(const LagrangianFrameLoop& loop) {
  if (loop.frames.empty()) throw std::invalid_argument("maslov_frame_loop: empty loop");
  std::vector<complexd> det2;
  det2.reserve(loop.frames.size());
  for (const Mat& F : loop.frames) {
    int N = static_cast<int>(F.cols());
    if (F.rows() != 2 * N) throw std::invalid_argument("maslov_frame_loop: frame is not 2N x N");
    Mat X = F.topRows(N), Y = F.bottomRows(N);
    if ((X.transpose() * Y - Y.transpose() * X).cwiseAbs().maxCoeff() > 1e-8)
      throw std::invalid_argument("maslov_frame_loop: frame is not Lagrangian");
    CMat Z = X.cast<complexd>() + complexd(0, 1) * Y.cast<complexd>();
    CMat G = Z.adjoint() * Z;
    Eigen::SelfAdjointEigenSolver<CMat> es(G);
    if (es.eigenvalues().minCoeff() < 1e-12)
      throw std::invalid_argument("maslov_frame_loop: rank-deficient frame");
    CMat U = Z * es.operatorInverseSqrt();
    complexd det = U.determinant();
    det2.push_back(det * det);
  }
  double acc = 0.0;
  int M = static_cast<int>(det2.size());
  for (int i = 0; i < M; ++i) {
    double step = std::arg(det2[(i + 1) % M] / det2[i]);
    if (std::abs(step) > M_PI / 2)
      throw std::runtime_error("maslov_frame_loop: grid too coarse (unwrap step > pi/2)");
    acc += step;
  }
  double winding = acc / (2 * M_PI);
  int k = static_cast<int>(std::llround(winding));
  if (std::abs(winding - k) > 0.01)
    throw std::runtime_error("maslov_frame_loop: winding not within 0.01 of an integer");
  return k;
}

// ---------------------------------------------------------------------------
// Maslov index of a disk in T*S^n via radial symplectic trivialization
// ---------------------------------------------------------------------------

namespace detail {

// canonical symplectic pairing on R^{2h} = (p, q)
inline double omega_pq(const RVec& v, const RVec& w) {
  int h = static_cast<int>(v.size()) / 2;
  return v.head(h).dot(w.tail(h)) - w.head(h).dot(v.tail(h));
}

// orthogonal projection onto the tangent space of T*S^n at x = (p, q)
inline RVec project_tsn(const RVec& x, const RVec& dir) {
  int h = static_cast<int>(x.size()) / 2;
  RVec p = x.head(h), q = x.tail(h);
  RVec g1(2 * h), g2(2 * h);
  g1 << RVec::Zero(h), q;  // gradient of (|q|^2 - 1)/2
  g2 << q, p;              // gradient of p.q
  Eigen::Matrix2d G;
  G << g1.dot(g1), g1.dot(g2), g2.dot(g1), g2.dot(g2);
  Eigen::Vector2d rhs(g1.dot(dir), g2.dot(dir));
  Eigen::Vector2d c = G.ldlt().solve(rhs);
  return dir - c[0] * g1 - c[1] * g2;
}

// remove the span of the accepted Darboux pairs (columns 0..2*npairs-1 of E)
inline RVec darboux_reduce(const Mat& E, int npairs, RVec v) {
  for (int j = 0; j < npairs; ++j) {
    RVec e = E.col(2 * j), f = E.col(2 * j + 1);
    v -= omega_pq(v, f) * e - omega_pq(v, e) * f;
  }
  return v;
}

// greedy Darboux frame of the tangent space of T*S^n at x, q-directions first
inline Mat initial_darboux(const RVec& x) {
  int dim = static_cast<int>(x.size());
  int n = dim / 2 - 1;
  std::vector<RVec> cands;
  for (int j = 0; j < dim; ++j) {
    RVec c = RVec::Zero(dim);
    c[(j < dim / 2) ? dim / 2 + j : j - dim / 2] = 1.0;  // q-like axes first
    RVec t = project_tsn(x, c);
    if (t.norm() > 1e-8) cands.push_back(t);
  }
  Mat E(dim, 2 * n);
  for (int i = 0; i < n; ++i) {
    RVec e;
    bool found = false;
    for (const RVec& c : cands) {
      RVec t = darboux_reduce(E, i, c);
      if (t.norm() > 1e-3) {
        e = t.normalized();
        found = true;
        break;
      }
    }
    if (!found) throw std::runtime_error("maslov_disk: cannot complete the Darboux frame");
    RVec f;
    found = false;
    for (const RVec& c : cands) {
      RVec t = darboux_reduce(E, i, c);
      double pair = omega_pq(e, t);
      if (std::abs(pair) > 1e-3) {
        f = t / pair;
        found = true;
        break;
      }
    }
    if (!found) throw std::runtime_error("maslov_disk: cannot complete the Darboux frame");
    E.col(2 * i) = e;
    E.col(2 * i + 1) = f;
  }
  return E;
}

// project a Darboux frame to the tangent space at xnew and re-orthogonalize;
// returns the largest column displacement
inline double transport_frame(const RVec& xnew, Mat& E) {
  int n = static_cast<int>(E.cols()) / 2;
  Mat old = E;
  for (int c = 0; c < E.cols(); ++c) E.col(c) = project_tsn(xnew, E.col(c));
  for (int i = 0; i < n; ++i) {
    RVec e = darboux_reduce(E, i, E.col(2 * i));
    if (e.norm() < 1e-6) throw std::runtime_error("maslov_disk: frame collapse in transport");
    e.normalize();
    RVec f = darboux_reduce(E, i, E.col(2 * i + 1));
    double pair = omega_pq(e, f);
    if (std::abs(pair) < 1e-6) throw std::runtime_error("maslov_disk: frame collapse in transport");
    f /= pair;
    E.col(2 * i) = e;
    E.col(2 * i + 1) = f;
  }
  double jump = 0.0;
  for (int c = 0; c < E.cols(); ++c) jump = std::max(jump, (E.col(c) - old.col(c)).norm());
  return jump;
}

// orthonormal tangent frame of a parametrized Lagrangian at parameters t
inline Mat lagrangian_tangent_frame(const LagrangianSpec& L, const RVec& t) {
  int d = L.params.ambient_dim;
  Mat dirs;
  if (!L.params.constraints) {
    dirs = Mat::Identity(d, d);
  } else {
    Mat proj(d, d);
    for (int i = 0; i < d; ++i)
      proj.col(i) = tangent_project(L.params, t, RVec(RVec::Unit(d, i)));
    Eigen::JacobiSVD<Mat> svd(proj, Eigen::ComputeThinU);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()[i] > 1e-8) ++rank;
    dirs = svd.matrixU().leftCols(rank);
  }
  double h = fd_step(t);
  Mat V(L.ambient.ambient_dim, dirs.cols());
  for (int j = 0; j < dirs.cols(); ++j)
    V.col(j) = (L.param(t + h * dirs.col(j)) - L.param(t - h * dirs.col(j))) / (2 * h);
  Eigen::JacobiSVD<Mat> svd(V, Eigen::ComputeThinU);
  if (svd.singularValues().size() < L.dim ||
      svd.singularValues()[L.dim - 1] < 1e-6 * svd.singularValues()[0])
    throw std::runtime_error("maslov_disk: boundary frame is rank deficient");
  return svd.matrixU().leftCols(L.dim);
}

}  // namespace detail

// Maslov index of a disk in T*S^n with boundary on a parametrized Lagrangian:
// symplectically trivializes the tangent planes of T*S^n along the disk by
// radial parallel transport from the center, reads the boundary tangent
// frames in that trivialization, and takes the winding of det U^2.
inline int maslov_disk(const DiskSpec& d, int n_theta = 512, int n_rad = 256) {
  if (!d.boundary_params)
    throw std::invalid_argument("maslov_disk: disk has no boundary parameter path");
  int dim = d.ambient.ambient_dim;
  int n = dim / 2 - 1;
  RVec center = d.map(0.0);
  if (std::abs(center.tail(dim / 2).norm() - 1.0) > 1e-9)
    throw std::invalid_argument("maslov_disk: ambient is not a cotangent chart");
  Mat E0 = detail::initial_darboux(center);
  LagrangianFrameLoop loop;
  loop.frames.reserve(n_theta);
  for (int i = 0; i < n_theta; ++i) {
    double th = 2 * M_PI * i / n_theta;
    Mat E = E0;
    double s = 0.0, ds = 1.0 / n_rad;
    const double ds_min = 1.0 / (16.0 * n_rad);
    while (s < 1.0 - 1e-12) {
      double step = std::min(ds, 1.0 - s);
      Mat Etry = E;
      double jump = detail::transport_frame(d.map(std::polar(s + step, th)), Etry);
      if (jump > 0.3) {
        if (step <= ds_min + 1e-15)
          throw std::runtime_error("maslov_disk: trivialization discontinuity");
        ds = step / 2;
        continue;
      }
      E = Etry;
      s += step;
      if (jump < 0.05) ds = std::min(2 * ds, 1.0 / n_rad);
    }
    Mat V = detail::lagrangian_tangent_frame(d.boundary, d.boundary_params(th));
    Mat F(2 * n, n);
    for (int j = 0; j < n; ++j) {
      // tangent vectors of the boundary Lagrangian in Darboux coordinates
      RVec v = detail::project_tsn(d.map(std::polar(1.0, th)), V.col(j));
      for (int a = 0; a < n; ++a) {
        F(a, j) = detail::omega_pq(v, E.col(2 * a + 1));
        F(n + a, j) = detail::omega_pq(E.col(2 * a), v);
      }
    }
    loop.frames.push_back(F);
  }
  return maslov_frame_loop(loop);
}

// ---------------------------------------------------------------------------
// Monotone radii, minimal Maslov numbers, displaceability
// ---------------------------------------------------------------------------

// The unique fiber radius for which the fiber-disk ratio area/Maslov matches
// the ambient line ratio; fiber_area must be affine in r (checked), and the
// result is computed in exact rational arithmetic on values measured in pi.
inline Rational monotone_radius(const std::function<double(double)>& fiber_area,
                                long long fiber_maslov, double line_area,
                                long long line_maslov) {
  double a0 = fiber_area(0.0) / M_PI, a1 = fiber_area(1.0) / M_PI;
  double mid = fiber_area(0.5) / M_PI;
  if (std::abs(mid - 0.5 * (a0 + a1)) > 1e-9)
    throw std::invalid_argument("monotone_radius: fiber area is not affine in r");
  Rational A0 = detail::rational_approx(a0, 1e-9, 1000);
  Rational S = detail::rational_approx(a1 - a0, 1e-9, 1000);
  Rational LA = detail::rational_approx(line_area / M_PI, 1e-9, 1000);
  Rational rhs = detail::rat_sub(
      detail::rat_div(detail::rat_mul(LA, Rational{fiber_maslov, 1}), Rational{line_maslov, 1}),
      A0);
  Rational r = detail::rat_div(rhs, S);
  double rv = rational_value(r);
  if (!(rv > 0.0 && rv < 1.0)) throw std::domain_error("monotone_radius: no solution in (0,1)");
  return r;
}

// gcd-style minimal positive Maslov value over the generated integer lattice,
// optionally including the half class delta = (sum of generators)/2
inline long long minimal_maslov(const std::vector<ClassLatticeEntry>& entries,
                                bool half_class_present) {
  long long g = 0, sum = 0;
  for (const auto& e : entries) {
    g = detail::gcd_ll(g, e.maslov);
    sum += e.maslov;
  }
  if (half_class_present) {
    if (sum % 2 != 0)
      throw std::invalid_argument("minimal_maslov: half class has non-integer Maslov index");
    g = detail::gcd_ll(g, sum / 2);
  }
  if (g == 0) throw std::domain_error("minimal_maslov: all generators have Maslov index zero");
  return g;
}

// circle-bundle displaceability criterion: the bundle radius condition
// alpha < tau/2 together with integrality of the area homomorphism image
inline bool displaceability_criterion(double alpha, double tau, double area_image_generator) {
  if (!(alpha > 0.0 && tau > 0.0))
    throw std::invalid_argument("displaceability_criterion: alpha, tau must be positive");
  if (!(alpha < tau / 2)) return false;
  double k = std::round(area_image_generator / tau);
  return std::abs(area_image_generator - k * tau) <= 1e-12;
}

// fiber rotation angle of the induced connection around the disk boundary
inline double holonomy_angle(const DiskSpec& u, double tau, int n = 64) {
  double a = std::fmod((2 * M_PI / tau) * disk_area(u, n), 2 * M_PI);
  if (a < 0) a += 2 * M_PI;
  return a;
}

// ---------------------------------------------------------------------------
// Displacement-isotopy certificates
// ---------------------------------------------------------------------------

struct IsotopyCertificate {
  bool refused = false;
  std::string reason;
  int steps = 0;
  double enclosed_area = 0.0;
  double max_area_drift = 0.0;
  double min_separation = 0.0;
  double min_domain_margin = 0.0;
  bool curves_simple = true;
  bool pass = false;
};

namespace detail {

using Curve = std::vector<complexd>;

inline double polyline_area(const Curve& c, const OneForm& prim) {
  const QuadRule& q = gauss_legendre(6);
  double total = 0.0;
  int n = static_cast<int>(c.size());
  for (int i = 0; i < n; ++i) {
    complexd a = c[i], b = c[(i + 1) % n];
    complexd dz = b - a;
    RVec dir(2);
    dir << dz.real(), dz.imag();
    for (size_t j = 0; j < q.nodes.size(); ++j) {
      complexd p = a + 0.5 * (q.nodes[j] + 1.0) * dz;
      RVec x(2);
      x << p.real(), p.imag();
      total += 0.5 * q.weights[j] * prim(x, dir);
    }
  }
  return total;
}

inline bool segments_cross(complexd a, complexd b, complexd c, complexd d) {
  auto cross = [](complexd u, complexd v) { return u.real() * v.imag() - u.imag() * v.real(); };
  double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
  double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
  // near-degenerate cross products (touching or collinear pieces) are not
  // proper crossings; without the guard fp noise flags collinear segments
  double lab = std::abs(b - a), lcd = std::abs(d - c);
  if (std::abs(d1) < 1e-12 * lab * std::abs(c - a)) return false;
  if (std::abs(d2) < 1e-12 * lab * std::abs(d - a)) return false;
  if (std::abs(d3) < 1e-12 * lcd * std::abs(a - c)) return false;
  if (std::abs(d4) < 1e-12 * lcd * std::abs(b - c)) return false;
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

inline bool polyline_simple(const Curve& c) {
  int n = static_cast<int>(c.size());
  for (int i = 0; i < n; ++i) {
    complexd a = c[i], b = c[(i + 1) % n];
    if (std::abs(b - a) < 1e-14) continue;
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // wrap-around neighbors
      complexd p = c[j], q = c[(j + 1) % n];
      if (std::abs(q - p) < 1e-14) continue;
      if (segments_cross(a, b, p, q)) return false;
    }
  }
  return true;
}

// one displacement problem: the planar picture of a circle-bundle Lagrangian,
// with radius functions about a star center, an area primitive, a domain
// margin function, and an ambient lift for the separation certificate
struct IsotopyProblem {
  complexd c0;
  int ngrid = 1024;
  std::vector<double> r_init, r_max;  // radius samples over [0, 2pi)
  OneForm prim;
  std::function<double(complexd)> margin;
  std::function<std::vector<CVec>(complexd)> lift;
  Curve initial;
  double area = 0.0;        // enclosed area of the initial curve (measured)
  double area_exact = 0.0;  // closed-form enclosed area, for the refusal check
  double half_total = 0.0; // displaceability bound for the refusal check
  double gap_dir = 0.0;    // direction of the excavation channel
  double G = 0.25;         // channel half width (radians)
  double delta_in = 0.05;  // clearance of the final curve over the initial one
};

inline double interp_radius(const std::vector<double>& r, double phi) {
  int n = static_cast<int>(r.size());
  double t = std::fmod(phi, 2 * M_PI);
  if (t < 0) t += 2 * M_PI;
  double u = t / (2 * M_PI) * n;
  int i = static_cast<int>(std::floor(u)) % n;
  double f = u - std::floor(u);
  return (1 - f) * r[i] + f * r[(i + 1) % n];
}

// Boundary of the excavated region at one step of the isotopy.  The region
// starts as the full initial region; a radial channel of angular half-width G
// opens at gap_dir (wedge_t), the excavation sweeps around the annulus below
// the clearance floor (sweep_t), and the leftover core sector is lifted up to
// the floor (lift_t).  mu in [0,1] inflates the outer radius toward the
// domain boundary and is solved for to keep the enclosed area constant.
struct ShapePhase {
  double wedge_t = 0.0, sweep_t = 0.0, lift_t = 0.0;
};

inline Curve isotopy_curve(const IsotopyProblem& P, const ShapePhase& ph, double mu) {
  const double Wmax = 2 * M_PI - 2 * P.G - 0.15;  // residual core sector 0.15 rad
  const double ramp = 0.06;
  auto out = [&](double alpha) {
    double phi = P.gap_dir + alpha;
    double ri = interp_radius(P.r_init, phi), rm = interp_radius(P.r_max, phi);
    return ri + mu * (rm - ri);
  };
  // the clearance over the initial curve ramps with the sweep so the floor
  // stays below the outer boundary before the inflation has absorbed much area
  auto floor_r = [&](double alpha) {
    double phi = P.gap_dir + alpha;
    return interp_radius(P.r_init, phi) + P.delta_in * std::min(1.0, ph.sweep_t);
  };
  Curve c;
  auto emit = [&](double alpha, double R) {
    c.push_back(P.c0 + std::polar(R, P.gap_dir + alpha));
  };
  auto arc = [&](double a0, double a1, const std::function<double(double)>& R, int npts) {
    for (int i = 0; i < npts; ++i) {
      double a = a0 + (a1 - a0) * i / npts;
      emit(a, R(a));
    }
  };
  auto wall = [&](double alpha, double R0, double R1, int npts) {
    for (int i = 0; i < npts; ++i) emit(alpha, R0 + (R1 - R0) * i / npts);
  };
  if (ph.wedge_t <= 0.0 && ph.sweep_t <= 0.0 && ph.lift_t <= 0.0) {
    arc(0.0, 2 * M_PI, out, 1280);
  } else if (ph.sweep_t <= 0.0 && ph.lift_t <= 0.0) {
    // channel opening: dig radially inward across the gap sector
    double t = ph.wedge_t;
    auto bottom = [&](double a) { return (1.0 - t) * out(a); };
    arc(P.G, 2 * M_PI - P.G, out, 768);
    wall(2 * M_PI - P.G, out(2 * M_PI - P.G), bottom(2 * M_PI - P.G), 96);
    arc(2 * M_PI - P.G, 2 * M_PI + P.G, bottom, 128);
    wall(P.G, bottom(P.G), out(P.G), 96);
  } else if (ph.lift_t <= 0.0) {
    // excavation sweep below the clearance floor
    double W = ph.sweep_t * Wmax;
    arc(P.G, 2 * M_PI - P.G, out, 768);
    wall(2 * M_PI - P.G, out(2 * M_PI - P.G), 0.0, 96);
    wall(P.G + W, 0.0, floor_r(P.G + W), 96);
    arc(P.G + W, P.G, floor_r, 384);
    wall(P.G, floor_r(P.G), out(P.G), 96);
  } else {
    // lift the residual core sector up to the clearance floor
    double t = ph.lift_t;
    auto lifted = [&](double a) {
      double f = floor_r(a);
      if (a <= P.G + Wmax) return f;
      if (a <= P.G + Wmax + ramp) return f * (1.0 + (t - 1.0) * (a - P.G - Wmax) / ramp);
      return t * f;
    };
    arc(P.G, 2 * M_PI - P.G, out, 768);
    wall(2 * M_PI - P.G, out(2 * M_PI - P.G), lifted(2 * M_PI - P.G), 96);
    arc(2 * M_PI - P.G, P.G, lifted, 448);
    wall(P.G, lifted(P.G), out(P.G), 96);
  }
  // drop repeated points (collapsed pieces at the apex)
  Curve clean;
  for (const complexd& z : c)
    if (clean.empty() || std::abs(z - clean.back()) > 1e-12) clean.push_back(z);
  while (clean.size() > 1 && std::abs(clean.front() - clean.back()) < 1e-12) clean.pop_back();
  return clean;
}

inline Curve isotopy_step(const IsotopyProblem& P, double s, double* drift) {
  ShapePhase ph;
  const double s1 = 0.35, s2 = 0.85;
  if (s <= s1)
    ph.wedge_t = s / s1;
  else if (s <= s2) {
    ph.wedge_t = 1.0;
    ph.sweep_t = (s - s1) / (s2 - s1);
  } else {
    ph.wedge_t = 1.0;
    ph.sweep_t = 1.0;
    ph.lift_t = (s - s2) / (1.0 - s2);
  }
  // solve the outer inflation mu for constant enclosed area
  double lo = 0.0, hi = 1.0;
  double alo = polyline_area(isotopy_curve(P, ph, lo), P.prim);
  double ahi = polyline_area(isotopy_curve(P, ph, hi), P.prim);
  if (!(alo <= P.area && ahi >= P.area)) {
    *drift = std::min(std::abs(alo - P.area), std::abs(ahi - P.area));
    return isotopy_curve(P, ph, alo >= P.area ? lo : hi);
  }
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    if (polyline_area(isotopy_curve(P, ph, mid), P.prim) < P.area)
      lo = mid;
    else
      hi = mid;
  }
  double mu = 0.5 * (lo + hi);
  Curve c = isotopy_curve(P, ph, mu);
  *drift = std::abs(polyline_area(c, P.prim) - P.area);
  return c;
}

inline std::vector<CVec> lift_points(const IsotopyProblem& P, const Curve& c, int stride) {
  std::vector<CVec> reps;
  for (size_t i = 0; i < c.size(); i += stride)
    for (CVec& z : P.lift(c[i])) reps.push_back(std::move(z));
  return reps;
}

// radius samples of a star-shaped curve about c0 on a uniform angle grid
inline std::vector<double> star_radius(const Curve& c, complexd c0, int ngrid) {
  struct Pt {
    double phi, r;
  };
  std::vector<Pt> pts;
  pts.reserve(c.size());
  for (const complexd& z : c) {
    complexd d = z - c0;
    pts.push_back({std::arg(d) < 0 ? std::arg(d) + 2 * M_PI : std::arg(d), std::abs(d)});
  }
  std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.phi < b.phi; });
  for (size_t i = 0; i + 1 < pts.size(); ++i)
    if (std::abs(pts[i + 1].r - pts[i].r) > 0.05)
      throw std::runtime_error("displacement_isotopy: initial curve not star-shaped");
  std::vector<double> r(ngrid);
  size_t n = pts.size();
  for (int i = 0; i < ngrid; ++i) {
    double phi = 2 * M_PI * i / ngrid;
    size_t hi = std::upper_bound(pts.begin(), pts.end(), phi,
                                 [](double v, const Pt& p) { return v < p.phi; }) -
                pts.begin();
    const Pt& a = pts[(hi + n - 1) % n];
    const Pt& b = pts[hi % n];
    double span = b.phi - a.phi;
    if (span <= 0) span += 2 * M_PI;
    double f = phi - a.phi;
    if (f < 0) f += 2 * M_PI;
    f = span > 1e-12 ? f / span : 0.0;
    r[i] = (1 - f) * a.r + f * b.r;
  }
  return r;
}

inline IsotopyProblem quadric_isotopy_problem(int m) {
  IsotopyProblem P;
  int K = m + 1;
  double a = std::sqrt((1.0 / K) * (2.0 - 1.0 / K));
  P.c0 = 0.0;
  P.prim = omega_prime_primitive();
  P.margin = [](complexd z) { return 1.0 - std::abs(z); };
  P.half_total = M_PI;  // total area of the hyperbolic-density disk is 2 pi
  P.gap_dir = 0.0;
  P.area_exact = 2 * M_PI / K;
  for (int i = 0; i < 5120; ++i) P.initial.push_back(std::polar(a, 2 * M_PI * i / 5120));
  P.r_init.assign(P.ngrid, a);
  P.r_max.assign(P.ngrid, 0.995);
  P.lift = [m](complexd z) {
    std::vector<CVec> reps;
    complexd f = plane_f(z);
    double c = plane_c(z);
    for (int j = 0; j <= std::min(m, 1); ++j) {
      for (double sgn : {1.0, -1.0}) {
        CVec rep = CVec::Zero(m + 3);
        rep[0] = z;
        rep[1] = f;
        rep[2 + j] = sgn * c;
        reps.push_back(std::move(rep));
        if (j > 0) break;  // only one sign needed away from the first axis
      }
    }
    return reps;
  };
  return P;
}

inline IsotopyProblem projective_isotopy_problem(int k, int m) {
  IsotopyProblem P;
  double r = 1.0 - 2.0 / (k + m + 2);
  P.area_exact = 2 * M_PI / (k + m + 2);
  double rho = std::sqrt(1.0 - r);
  Curve c;
  for (int i = 0; i < 5120; ++i) c.push_back(quartic_curve(rho, 2 * M_PI * i / 5120));
  complexd c0 = 0.0;
  for (const complexd& z : c) c0 += z;
  c0 /= static_cast<double>(c.size());
  P.c0 = c0;
  P.initial = std::move(c);
  P.prim = standard_area_primitive();
  P.margin = [](complexd z) { return std::min(std::sqrt(2.0) - std::abs(z), z.imag()); };
  P.half_total = M_PI / 2;  // the half disk of radius sqrt 2 has standard area pi
  P.gap_dir = -M_PI / 2;
  P.r_init = star_radius(P.initial, c0, P.ngrid);
  P.r_max.resize(P.ngrid);
  for (int i = 0; i < P.ngrid; ++i) {
    double phi = 2 * M_PI * i / P.ngrid;
    complexd e = std::polar(1.0, phi);
    double beta = (std::conj(c0) * e).real();
    double t_circ = -beta + std::sqrt(beta * beta + 2.0 - std::norm(c0));
    double t_axis = e.imag() < -1e-9 ? -c0.imag() / e.imag() : 1e9;
    P.r_max[i] = std::min(t_circ, t_axis) - 0.012;
  }
  P.lift = [k, m](complexd z) {
    double w = std::sqrt(std::max(0.0, 2.0 - std::norm(z)));
    std::vector<CVec> reps;
    auto push = [&](int xi, int yj, double sx, double sy) {
      CVec rep = CVec::Zero(k + m + 2);
      rep[xi] = sx * z;
      rep[k + 1 + yj] = sy * w;
      reps.push_back(std::move(rep));
    };
    push(0, 0, 1, 1);
    push(0, 0, -1, 1);
    push(k, m, 1, 1);
    if (m > 0) push(0, m, 1, -1);
    return reps;
  };
  return P;
}

inline IsotopyCertificate run_isotopy(const IsotopyProblem& P0, int steps) {
  IsotopyProblem P = P0;
  // orient the initial curve positively
  if (polyline_area(P.initial, standard_area_primitive()) < 0)
    std::reverse(P.initial.begin(), P.initial.end());
  P.area = polyline_area(P.initial, P.prim);
  IsotopyCertificate cert;
  cert.steps = steps;
  cert.enclosed_area = P.area;
  if (P.area_exact >= P.half_total - 1e-9) {
    cert.refused = true;
    cert.reason = "enclosed area " + std::to_string(P.area_exact) +
                  " is not smaller than half the total area " + std::to_string(P.half_total);
    return cert;
  }
  cert.min_domain_margin = 1e9;
  Curve final_curve;
  for (int j = 0; j <= steps; ++j) {
    double s = static_cast<double>(j) / steps;
    double drift = 0.0;
    Curve c = j == 0 ? P.initial : isotopy_step(P, s, &drift);
    cert.max_area_drift = std::max(cert.max_area_drift, drift);
    if (!polyline_simple(c)) cert.curves_simple = false;
    for (const complexd& z : c) cert.min_domain_margin = std::min(cert.min_domain_margin, P.margin(z));
    if (j == steps) final_curve = std::move(c);
  }
  std::vector<CVec> a = lift_points(P, P.initial, 10);
  std::vector<CVec> b = lift_points(P, final_curve, 10);
  double sep = 1e9;
  for (const CVec& x : a) {
    ProjPoint px(x);
    for (const CVec& y : b) sep = std::min(sep, proj_dist(px, ProjPoint(y)));
  }
  cert.min_separation = sep;
  cert.pass = cert.curves_simple && cert.max_area_drift <= 1e-6 && cert.min_separation > 0.01 &&
              cert.min_domain_margin > 0.003;
  return cert;
}

}  // namespace detail

// Certified displacement of a circle-bundle Lagrangian through its planar
// picture: an exact-area isotopy of simple closed curves from the defining
// curve to one disjoint from it, with the separation measured on ambient
// lifts of both curves.
inline IsotopyCertificate displacement_isotopy(const std::string& target, int steps = 48) {
  auto [id, pv] = detail::parse_id(target);
  auto geti = [&pv = pv](const std::string& key) {
    auto it = pv.find(key);
    if (it == pv.end()) throw std::invalid_argument("displacement_isotopy: missing " + key);
    return static_cast<int>(std::llround(it->second));
  };
  if (id == "L_Q_k_m") {
    int k = geti("k"), m = geti("m");
    if (k != 0)
      throw std::invalid_argument("displacement_isotopy: only the k = 0 quadric family");
    return detail::run_isotopy(detail::quadric_isotopy_problem(m), steps);
  }
  if (id == "L_P_k_m") {
    int k = geti("k"), m = geti("m");
    return detail::run_isotopy(detail::projective_isotopy_problem(k, m), steps);
  }
  throw std::invalid_argument("displacement_isotopy: unknown target " + id);
}

// ---------------------------------------------------------------------------
// Morse check on the split torus bundles
// ---------------------------------------------------------------------------

struct MorseCriticalPoint {
  double theta = 0.0;
  RVec x, y;
  double value = 0.0;
  int index = 0;
  double grad_norm = 0.0;
};

struct MorseReport {
  std::vector<MorseCriticalPoint> points;
  int starts = 0;
  int unconverged = 0;
};

namespace detail {

// height-type Morse function on S^1 x S^k x S^m in torus-bundle parameters
inline double morse_f(const RVec& t, int k) {
  return 5.0 * std::sin(2.0 * t[0]) + std::cos(t[0]) * (t[1] + t[k + 2]);
}

// orthonormal tangent basis of the parameter manifold at t
inline Mat morse_tangent_basis(const RVec& t, int k, int m) {
  int d = 1 + k + m;
  Mat B = Mat::Zero(t.size(), d);
  B(0, 0) = 1.0;
  RVec x = t.segment(1, k + 1), y = t.tail(m + 1);
  Eigen::JacobiSVD<Mat> sx(Mat(Mat::Identity(k + 1, k + 1) - x * x.transpose()),
                           Eigen::ComputeThinU);
  for (int i = 0; i < k; ++i) B.block(1, 1 + i, k + 1, 1) = sx.matrixU().col(i);
  Eigen::JacobiSVD<Mat> sy(Mat(Mat::Identity(m + 1, m + 1) - y * y.transpose()),
                           Eigen::ComputeThinU);
  for (int i = 0; i < m; ++i) B.block(k + 2, 1 + k + i, m + 1, 1) = sy.matrixU().col(i);
  return B;
}

inline RVec morse_retract(const RVec& t, int k, int m, const RVec& step) {
  RVec out = t + step;
  out.segment(1, k + 1).normalize();
  out.tail(m + 1).normalize();
  return out;
}

inline RVec morse_grad_coords(const RVec& t, int k, int m, const Mat& B) {
  int d = static_cast<int>(B.cols());
  RVec g(d);
  double h = 1e-6;
  for (int i = 0; i < d; ++i) {
    RVec dir = B.col(i);
    g[i] = (morse_f(morse_retract(t, k, m, h * dir), k) -
            morse_f(morse_retract(t, k, m, -h * dir), k)) /
           (2 * h);
  }
  return g;
}

}  // namespace detail

// Locates the critical points of the restricted Morse function by multi-start
// Newton iteration on the product manifold, classifies them by Hessian
// signature, and asserts the expected structure: axis-aligned sphere factors
// and cos(theta) bounded away from zero.
inline MorseReport morse_critical_points(int k, int m) {
  if (k < 0 || m < 1 || k + m > 3)
    throw std::invalid_argument("morse_critical_points: need m >= 1, k + m <= 3");
  MorseReport rep;
  int d = 1 + k + m;
  std::vector<RVec> xs, ys;
  for (double sgn : {1.0, -1.0}) {
    RVec e = RVec::Zero(k + 1);
    e[0] = sgn;
    xs.push_back(e);
    RVec f = RVec::Zero(m + 1);
    f[0] = sgn;
    ys.push_back(f);
  }
  Rng rng(11);
  for (int extra = 0; extra < 2; ++extra) {
    xs.push_back(rng.gaussian_vec(k + 1).normalized());
    ys.push_back(rng.gaussian_vec(m + 1).normalized());
  }
  for (int it = 0; it < 16; ++it) {
    double th0 = 2 * M_PI * it / 16;
    for (const RVec& x0 : xs)
      for (const RVec& y0 : ys) {
        ++rep.starts;
        RVec t(1 + (k + 1) + (m + 1));
        t << th0, x0, y0;
        bool ok = false;
        for (int iter = 0; iter < 80; ++iter) {
          Mat B = detail::morse_tangent_basis(t, k, m);
          RVec g = detail::morse_grad_coords(t, k, m, B);
          if (g.norm() < 1e-11) {
            ok = true;
            break;
          }
          Mat H(d, d);
          double h = 1e-5;
          for (int i = 0; i < d; ++i) {
            RVec dir = B.col(i);
            RVec tp = detail::morse_retract(t, k, m, h * dir);
            RVec tm = detail::morse_retract(t, k, m, -h * dir);
            H.col(i) = (detail::morse_grad_coords(tp, k, m, detail::morse_tangent_basis(tp, k, m)) -
                        detail::morse_grad_coords(tm, k, m, detail::morse_tangent_basis(tm, k, m))) /
                       (2 * h);
          }
          // the FD Hessian uses parallel bases only to first order; symmetrize
          H = 0.5 * (H + H.transpose());
          RVec step = H.fullPivLu().solve(-g);
          if (!step.allFinite() || step.norm() > 1.0) step = -0.05 * g;
          t = detail::morse_retract(t, k, m, B * step);
        }
        if (!ok) {
          ++rep.unconverged;
          continue;
        }
        double th = std::fmod(t[0], 2 * M_PI);
        if (th < 0) th += 2 * M_PI;
        t[0] = th;
        bool dup = false;
        for (const auto& p : rep.points) {
          RVec q(t.size());
          q << p.theta, p.x, p.y;
          double dth = std::abs(std::remainder(t[0] - p.theta, 2 * M_PI));
          if (dth < 1e-6 && (t.tail(t.size() - 1) - q.tail(q.size() - 1)).norm() < 1e-6) {
            dup = true;
            break;
          }
        }
        if (dup) continue;
        MorseCriticalPoint cp;
        cp.theta = t[0];
        cp.x = t.segment(1, k + 1);
        cp.y = t.tail(m + 1);
        cp.value = detail::morse_f(t, k);
        Mat B = detail::morse_tangent_basis(t, k, m);
        cp.grad_norm = detail::morse_grad_coords(t, k, m, B).norm();
        Mat H(d, d);
        double h = 1e-5;
        for (int i = 0; i < d; ++i) {
          RVec dir = B.col(i);
          RVec tp = detail::morse_retract(t, k, m, h * dir);
          RVec tm = detail::morse_retract(t, k, m, -h * dir);
          H.col(i) = (detail::morse_grad_coords(tp, k, m, detail::morse_tangent_basis(tp, k, m)) -
                      detail::morse_grad_coords(tm, k, m, detail::morse_tangent_basis(tm, k, m))) /
                     (2 * h);
        }
        H = 0.5 * (H + H.transpose());
        Eigen::SelfAdjointEigenSolver<Mat> es(H);
        int neg = 0;
        double minabs = 1e9;
        for (int i = 0; i < d; ++i) {
          if (es.eigenvalues()[i] < 0) ++neg;
          minabs = std::min(minabs, std::abs(es.eigenvalues()[i]));
        }
        cp.index = neg;
        if (d > 0 && minabs < 1e-6)
          throw std::runtime_error("morse_critical_points: degenerate critical point");
        // expected structure of every critical point
        double sx = cp.x[0] > 0 ? 1.0 : -1.0, sy = cp.y[0] > 0 ? 1.0 : -1.0;
        RVec ex = RVec::Zero(k + 1), ey = RVec::Zero(m + 1);
        ex[0] = sx;
        ey[0] = sy;
        if ((cp.x - ex).norm() > 1e-8 || (cp.y - ey).norm() > 1e-8)
          throw std::runtime_error("morse_critical_points: sphere factor off axis");
        if (std::abs(std::cos(cp.theta)) < 1e-6)
          throw std::runtime_error("morse_critical_points: cos(theta) vanishes");
        rep.points.push_back(std::move(cp));
      }
  }
  std::sort(rep.points.begin(), rep.points.end(),
            [](const MorseCriticalPoint& a, const MorseCriticalPoint& b) {
              return a.value < b.value;
            });
  return rep;
}

}  // namespace symcheck
