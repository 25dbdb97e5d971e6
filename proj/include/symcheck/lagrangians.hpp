#pragma once

// Catalog of Lagrangian submanifolds as parametrization + implicit-residual
// pairs, with a sampling-based set-equality engine and constructors for
// circle orbits and circle-bundle lifts.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "symcheck/atlas.hpp"

namespace symcheck {

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

struct LagrangianSpec {
  std::string id;
  Chart ambient;
  Chart params;  // chart for the parameter domain of `param`
  int dim = 0;   // intrinsic dimension
  std::function<RVec(const RVec&)> param;       // parameters -> ambient point
  std::function<RVec(Rng&)> sample_params;      // random parameter draw
  std::vector<std::function<double(const RVec&)>> residuals;
  std::string note;

  RVec sample_point(Rng& rng) const { return param(sample_params(rng)); }
};

struct CircleAction {
  std::string id;
  std::function<RVec(double, const RVec&)> act;  // (t, point) -> point
};

// ---------------------------------------------------------------------------
// Basic operations
// ---------------------------------------------------------------------------

inline double residual(const LagrangianSpec& L, const RVec& point) {
  double m = 0.0;
  for (const auto& r : L.residuals) m = std::max(m, std::abs(r(point)));
  return m;
}

struct SetEqualReport {
  double max_a_in_b = 0.0;  // residuals of B over samples of A
  double max_b_in_a = 0.0;
  int samples = 0;
  bool pass = false;
};

inline SetEqualReport set_equal(const LagrangianSpec& A, const LagrangianSpec& B,
                                int n_samples = 200, double tol = 1e-10, uint64_t seed = 7) {
  if (A.ambient.ambient_dim != B.ambient.ambient_dim)
    throw std::invalid_argument("set_equal: ambient chart mismatch");
  SetEqualReport rep;
  rep.samples = n_samples;
  Rng rng(seed);
  for (int i = 0; i < n_samples; ++i) {
    rep.max_a_in_b = std::max(rep.max_a_in_b, residual(B, A.sample_point(rng)));
    rep.max_b_in_a = std::max(rep.max_b_in_a, residual(A, B.sample_point(rng)));
  }
  rep.pass = rep.max_a_in_b <= tol && rep.max_b_in_a <= tol;
  return rep;
}

// set equality of the image of A under an invertible map against B
inline SetEqualReport mapped_equal(const SmoothMap& phi, const LagrangianSpec& A,
                                   const LagrangianSpec& B, int n_samples = 200,
                                   double tol = 1e-10, uint64_t seed = 7) {
  if (!phi.inverse) throw std::invalid_argument("mapped_equal: map has no inverse");
  SetEqualReport rep;
  rep.samples = n_samples;
  Rng rng(seed);
  for (int i = 0; i < n_samples; ++i) {
    rep.max_a_in_b = std::max(rep.max_a_in_b, residual(B, phi.eval(A.sample_point(rng))));
    rep.max_b_in_a = std::max(rep.max_b_in_a, residual(A, phi.inverse(B.sample_point(rng))));
  }
  rep.pass = rep.max_a_in_b <= tol && rep.max_b_in_a <= tol;
  return rep;
}

// image of a spec under an invertible map
inline LagrangianSpec mapped_spec(const SmoothMap& phi, const LagrangianSpec& A) {
  LagrangianSpec L = A;
  L.id = A.id + "@" + phi.id;
  L.ambient = phi.codomain;
  auto base_param = A.param;
  auto ev = phi.eval;
  L.param = [base_param, ev](const RVec& t) { return ev(base_param(t)); };
  L.residuals.clear();
  auto inv = phi.inverse;
  if (!inv) throw std::invalid_argument("mapped_spec: map has no inverse");
  for (const auto& r : A.residuals)
    L.residuals.push_back([r, inv](const RVec& x) { return r(inv(x)); });
  return L;
}

// secondary diagnostic: symmetric Hausdorff distance estimate on point clouds
inline double hausdorff_estimate(const LagrangianSpec& A, const LagrangianSpec& B,
                                 int n_points = 10000, uint64_t seed = 7) {
  if (A.ambient.ambient_dim != B.ambient.ambient_dim)
    throw std::invalid_argument("hausdorff_estimate: ambient chart mismatch");
  Rng rng(seed);
  std::vector<RVec> pa(n_points), pb(n_points);
  for (int i = 0; i < n_points; ++i) pa[i] = A.sample_point(rng);
  for (int i = 0; i < n_points; ++i) pb[i] = B.sample_point(rng);
  auto directed = [](const std::vector<RVec>& from, const std::vector<RVec>& to) {
    double worst = 0.0;
    for (const auto& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : to) best = std::min(best, (p - q).squaredNorm());
      worst = std::max(worst, best);
    }
    return std::sqrt(worst);
  };
  return std::max(directed(pa, pb), directed(pb, pa));
}

struct LagrangianCheckReport {
  double max_omega = 0.0;       // worst |omega(v_i, v_j)| over unit tangent bases
  double min_singular = 0.0;    // smallest singular value of the tangent frame
  bool full_rank = true;
  int samples = 0;
};

// verifies that the tangent planes cut out by the parametrization are
// omega-isotropic and that the parametrization is an immersion
inline LagrangianCheckReport lagrangian_check(const LagrangianSpec& L, const TwoForm& omega,
                                              int n_samples = 40, uint64_t seed = 7) {
  LagrangianCheckReport rep;
  rep.samples = n_samples;
  rep.min_singular = std::numeric_limits<double>::infinity();
  Rng rng(seed);
  for (int s = 0; s < n_samples; ++s) {
    RVec th = L.sample_params(rng);
    int d = L.params.ambient_dim;
    // basis of the parameter-chart tangent space at th
    Mat dirs;
    if (!L.params.constraints) {
      dirs = Mat::Identity(d, d);
    } else {
      Mat proj(d, d);
      for (int i = 0; i < d; ++i)
        proj.col(i) = tangent_project(L.params, th, RVec(RVec::Unit(d, i)));
      Eigen::JacobiSVD<Mat> svd(proj, Eigen::ComputeThinU);
      int rank = 0;
      for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()[i] > 1e-8) ++rank;
      dirs = svd.matrixU().leftCols(rank);
    }
    RVec x = L.param(th);
    double h = fd_step(th);
    Mat V(x.size(), dirs.cols());
    for (int j = 0; j < dirs.cols(); ++j) {
      RVec dp = L.param(th + h * dirs.col(j)), dm = L.param(th - h * dirs.col(j));
      V.col(j) = (dp - dm) / (2.0 * h);
    }
    Eigen::JacobiSVD<Mat> svd(V);
    double smin = svd.singularValues().size() >= L.dim
                      ? svd.singularValues()[L.dim - 1]
                      : 0.0;
    rep.min_singular = std::min(rep.min_singular, smin);
    if (smin < 1e-6 * svd.singularValues()[0]) rep.full_rank = false;
    for (int i = 0; i < V.cols(); ++i) {
      RVec vi = V.col(i).normalized();
      for (int j = i + 1; j < V.cols(); ++j) {
        RVec vj = V.col(j).normalized();
        rep.max_omega = std::max(rep.max_omega, std::abs(omega(x, vi, vj)));
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Orbit and circle-bundle constructors
// ---------------------------------------------------------------------------

namespace detail {

inline Chart chart_append_angle(const Chart& base) {
  Chart c;
  c.ambient_dim = base.ambient_dim + 1;
  if (base.constraints) {
    Chart b = base;
    c.constraints = [b](const RVec& x) { return b.constraints(x.head(x.size() - 1)); };
  }
  return c;
}

// distance of a point to a circle orbit of a curve: minimize the summed
// squared curve residuals along the orbit (coarse grid + golden-section)
inline double orbit_min_residual(const LagrangianSpec& curve, const CircleAction& action,
                                 const RVec& x, int grid = 96) {
  auto g = [&](double t) {
    RVec y = action.act(-t, x);
    double s = 0.0;
    for (const auto& r : curve.residuals) {
      double v = r(y);
      s += v * v;
    }
    return s;
  };
  double best_t = 0.0, best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    double t = 2.0 * M_PI * i / grid;
    double v = g(t);
    if (v < best) {
      best = v;
      best_t = t;
    }
  }
  double a = best_t - 2.0 * M_PI / grid, b = best_t + 2.0 * M_PI / grid;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double gc = g(c), gd = g(d);
  for (int it = 0; it < 160; ++it) {
    if (gc < gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - gr * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + gr * (b - a);
      gd = g(d);
    }
  }
  return std::sqrt(std::min(gc, gd));
}

}  // namespace detail

inline LagrangianSpec orbit_spec(const LagrangianSpec& curve, const CircleAction& action,
                                 int grid = 96) {
  LagrangianSpec L;
  L.id = curve.id + "@" + action.id;
  L.ambient = curve.ambient;
  L.params = detail::chart_append_angle(curve.params);
  L.dim = curve.dim + 1;
  auto cparam = curve.param;
  auto act = action.act;
  L.param = [cparam, act](const RVec& t) {
    return act(t[t.size() - 1], cparam(t.head(t.size() - 1)));
  };
  auto csample = curve.sample_params;
  L.sample_params = [csample](Rng& rng) {
    RVec base = csample(rng);
    RVec out(base.size() + 1);
    out << base, rng.uniform(0.0, 2.0 * M_PI);
    return out;
  };
  L.residuals.push_back([curve, action, grid](const RVec& x) {
    return detail::orbit_min_residual(curve, action, x, grid);
  });
  L.note = "circle orbit of " + curve.id;
  return L;
}

// lift of a spec in the base of a disk bundle to the radius-r circle bundle
inline LagrangianSpec circle_bundle_lift(const LagrangianSpec& base, double r,
                                         const std::string& bundle) {
  LagrangianSpec L;
  L.params = detail::chart_append_angle(base.params);
  L.dim = base.dim + 1;
  auto bparam = base.param;
  auto bres = base.residuals;
  auto bsample = base.sample_params;
  L.sample_params = [bsample](Rng& rng) {
    RVec b = bsample(rng);
    RVec out(b.size() + 1);
    out << b, rng.uniform(0.0, 2.0 * M_PI);
    return out;
  };
  if (bundle == "ThetaDelta") {
    if (!(r > 0.0 && r < std::sqrt(2.0)))
      throw std::invalid_argument("circle_bundle_lift: radius out of range");
    SmoothMap th = map_ThetaDelta();
    L.ambient = th.codomain;
    L.param = [bparam, th, r](const RVec& t) {
      RVec x = bparam(t.head(t.size() - 1));
      double ang = t[t.size() - 1];
      // orthonormal frame of the tangent plane, smooth away from the poles
      RVec u1 = (rvec3(1, 0, 0) - x[0] * x).normalized();
      RVec u2 = cross3(x, u1).normalized();
      RVec in(6);
      in << x, r * (std::cos(ang) * u1 + std::sin(ang) * u2);
      return th.eval(in);
    };
    for (const auto& res : bres)
      L.residuals.push_back([res, th](const RVec& p) { return res(th.inverse(p).head(3)); });
    L.residuals.push_back(
        [th, r](const RVec& p) { return th.inverse(p).tail(3).norm() - r; });
  } else if (bundle == "ThetaQ" || bundle == "Thetap") {
    int h = base.ambient.ambient_dim / 2;  // complex dimension of the base reps
    int n = h - 1;
    bool quadric = bundle == "ThetaQ";
    if (!(r > 0.0 && r < (quadric ? std::sqrt(2.0) : 1.0)))
      throw std::invalid_argument("circle_bundle_lift: radius out of range");
    SmoothMap th = quadric ? map_ThetaQ(n) : map_Thetap(n);
    L.ambient = th.codomain;
    L.param = [bparam, th, r, h](const RVec& t) {
      RVec in(2 * h + 2);
      in.head(2 * h) = bparam(t.head(t.size() - 1));
      double ang = t[t.size() - 1];
      in[2 * h] = r * std::cos(ang);
      in[2 * h + 1] = r * std::sin(ang);
      return th.eval(in);
    };
    for (const auto& res : bres)
      L.residuals.push_back(
          [res, th, h](const RVec& p) { return res(th.inverse(p).head(2 * h)); });
    L.residuals.push_back([th, r, h](const RVec& p) {
      RVec w = th.inverse(p);
      return std::hypot(w[2 * h], w[2 * h + 1]) - r;
    });
  } else {
    throw std::invalid_argument("circle_bundle_lift: unknown bundle " + bundle);
  }
  L.id = base.id + "@" + bundle;
  L.note = "radius-" + std::to_string(r) + " circle bundle lift of " + base.id;
  return L;
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

namespace detail {

// the profile circle at height 1/2 on the sphere and its planar preimage
inline RVec profile_circle(double s) {
  double c = std::sqrt(3.0) / 2.0;
  return rvec3(-c * std::sin(s), -c * std::cos(s), 0.5);
}

inline complexd profile_disk(double s) {
  RVec v = profile_circle(s);
  return complexd(v[1], v[2]) / std::sqrt(1.0 + v[0]);
}

// closed planar curve |w^2 + 2 - |w|^2|^2 = 4 rho^2 (2 - rho^2) in the open
// upper half-disk of radius sqrt(2), traced through the two line charts
inline complexd quartic_curve(double rho, double s) {
  double s0 = std::sqrt(1.0 - rho * rho / 2.0);
  complexd zeta = std::polar(rho, s);
  complexd z0 = complexd(0, 1) * (s0 + zeta / std::sqrt(2.0));
  complexd z1 = s0 - zeta / std::sqrt(2.0);
  return z0 * std::conj(z1) / std::abs(z1);
}

inline std::function<RVec(Rng&)> sample_angles(int d) {
  return [d](Rng& rng) {
    RVec t(d);
    for (int i = 0; i < d; ++i) t[i] = rng.uniform(0.0, 2.0 * M_PI);
    return t;
  };
}

inline std::function<RVec(Rng&)> sample_angle_spheres(int k, int m) {
  return [k, m](Rng& rng) {
    RVec t(1 + (k + 1) + (m + 1));
    t[0] = rng.uniform(0.0, 2.0 * M_PI);
    t.segment(1, k + 1) = rng.gaussian_vec(k + 1).normalized();
    t.tail(m + 1) = rng.gaussian_vec(m + 1).normalized();
    return t;
  };
}

inline Chart chart_sphere_pair(int k, int m) {
  Chart c;
  c.ambient_dim = k + m + 2;
  c.constraints = [k, m](const RVec& x) {
    RVec r(2);
    r << x.head(k + 1).squaredNorm() - 1.0, x.tail(m + 1).squaredNorm() - 1.0;
    return r;
  };
  return c;
}

inline std::function<RVec(Rng&)> sample_sphere_pair(int k, int m) {
  return [k, m](Rng& rng) {
    RVec t(k + m + 2);
    t.head(k + 1) = rng.gaussian_vec(k + 1).normalized();
    t.tail(m + 1) = rng.gaussian_vec(m + 1).normalized();
    return t;
  };
}

inline double require_param(const std::map<std::string, double>& pv, const std::string& key) {
  auto it = pv.find(key);
  if (it == pv.end()) throw std::invalid_argument("lagrangian: missing parameter " + key);
  return it->second;
}

}  // namespace detail

inline CircleAction circle_action(const std::string& id) {
  if (id == "rho_EP") return {id, [](double t, const RVec& x) { return act_rho_EP(t, x); }};
  if (id == "rho_CS") return {id, [](double t, const RVec& x) { return act_rho_CS(t, x); }};
  if (id == "rho_diag") return {id, [](double t, const RVec& x) { return act_rho_diag(t, x); }};
  if (id == "rho_rot") return {id, [](double t, const RVec& x) { return act_rho_rot(t, x); }};
  if (id == "rho_proj12")
    return {id, [](double t, const RVec& x) { return act_rho_proj12(t, x); }};
  if (id == "trivial") return {id, [](double, const RVec& x) { return x; }};
  throw std::invalid_argument("circle_action: unknown id " + id);
}

inline std::vector<std::string> circle_action_ids() {
  return {"rho_EP", "rho_CS", "rho_diag", "rho_rot", "rho_proj12", "trivial"};
}

inline LagrangianSpec lagrangian(const std::string& full_id,
                                 std::map<std::string, double> pv = {});

namespace detail {

inline LagrangianSpec make_T_EP() {
  LagrangianSpec L;
  L.id = "T_EP";
  L.ambient = chart_s2s2();
  L.params = chart_rn(2);
  L.dim = 2;
  L.param = [](const RVec& t) {
    RVec c(6);
    RVec v = profile_circle(t[0]);
    c << v, -v[0], -v[1], v[2];
    return act_rho_EP(t[1], c);
  };
  L.sample_params = sample_angles(2);
  L.residuals = {
      [](const RVec& x) { return 0.5 * (x[0] + x[3]); },
      [](const RVec& x) { return x.head(3).dot(x.tail(3)) + 0.5; },
  };
  L.note = "axis-balanced antidiagonal-type torus in the sphere product";
  return L;
}

inline LagrangianSpec make_T_AF() {
  LagrangianSpec L;
  L.id = "T_AF";
  L.ambient = chart_s2s2();
  L.params = chart_torus_params(0, 1);
  L.dim = 2;
  SmoothMap io = map_iota(0, 1, 0.5);
  SmoothMap ph = map_Phi2();
  L.param = [io, ph](const RVec& t) { return ph.inverse(io.eval(t)); };
  L.sample_params = sample_angle_spheres(0, 1);
  L.residuals = {
      [](const RVec& x) { return 0.5 * (x.head(3) + x.tail(3)).norm() - 0.5; },
      [](const RVec& x) { return 0.5 * (x[0] + x[3]); },
  };
  L.note = "preimage of the half-radius axis-aligned momentum torus";
  return L;
}

inline LagrangianSpec make_T_CS() {
  LagrangianSpec L;
  L.id = "T_CS";
  L.ambient = chart_s2s2();
  L.params = chart_rn(2);
  L.dim = 2;
  SmoothMap ps = map_psi();
  L.param = [ps](const RVec& t) {
    complexd z = profile_disk(t[0]);
    complexd za = z * std::polar(1.0, t[1]), zb = z * std::polar(1.0, -t[1]);
    RVec ra(2), rb(2);
    ra << za.real(), za.imag();
    rb << zb.real(), zb.imag();
    RVec out(6);
    out << ps.eval(ra), ps.eval(rb);
    return out;
  };
  L.sample_params = sample_angles(2);
  // invariants of the opposite-rotation orbit of the doubled profile circle:
  // the first coordinates agree, and the product of the complexified last
  // coordinate pairs stays on the parabola Re = Im^2 - 1/4
  L.residuals = {
      [](const RVec& x) { return x[0] - x[3]; },
      [](const RVec& x) {
        complexd p = complexd(x[1], x[2]) * complexd(x[4], x[5]);
        return p.real() - p.imag() * p.imag() + 0.25;
      },
  };
  L.note = "opposite-rotation orbit torus of the doubled profile circle";
  return L;
}

inline LagrangianSpec make_T_FOOO() {
  LagrangianSpec L = make_T_EP();
  L.id = "T_FOOO";
  L.residuals = {
      [](const RVec& x) {
        RVec s = x.head(3) + x.tail(3);
        return 0.5 * s.norm() + 0.5 * s[0] - 0.5;
      },
      [](const RVec& x) { return 1.0 - 0.5 * (x.head(3) + x.tail(3)).norm() - 0.5; },
  };
  L.note = "toric-degeneration presentation of the same torus";
  return L;
}

inline LagrangianSpec make_equator_x1() {
  LagrangianSpec L;
  L.id = "equator_x1";
  L.ambient = chart_sphere(2);
  L.params = chart_rn(1);
  L.dim = 1;
  L.param = [](const RVec& t) { return rvec3(0.0, std::cos(t[0]), std::sin(t[0])); };
  L.sample_params = sample_angles(1);
  L.residuals = {[](const RVec& x) { return x[0]; }};
  L.note = "great circle orthogonal to the first axis";
  return L;
}

inline LagrangianSpec make_P(int k, int m, double r, bool quotient) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("lagrangian: radius out of range");
  LagrangianSpec L;
  L.id = quotient ? "Pbar_k_m" : "P_k_m";
  L.ambient = chart_cotangent(k + m + 1);
  L.params = chart_torus_params(k, m);
  L.dim = k + m + 1;
  SmoothMap io = map_iota(k, m, r);
  L.param = io.eval;
  L.sample_params = sample_angle_spheres(k, m);
  int h = k + m + 2;
  L.residuals = {
      [h, r](const RVec& x) { return x.head(h).norm() - r; },
      [h, k](const RVec& x) {
        Mat A = moment_Phi_R(x);
        return A.topLeftCorner(k + 1, k + 1).norm();
      },
      [h, m](const RVec& x) {
        Mat A = moment_Phi_R(x);
        return A.bottomRightCorner(m + 1, m + 1).norm();
      },
  };
  L.note = quotient ? "antipodal quotient of the split geodesic-orbit torus bundle"
                    : "split geodesic-orbit submanifold in the cotangent disk bundle";
  return L;
}

inline LagrangianSpec make_S(int k, int m) {
  LagrangianSpec L;
  L.id = "S_k_m";
  L.ambient = chart_quadric(k + m + 1);
  L.params = chart_sphere_pair(k, m);
  L.dim = k + m;
  L.param = [k, m](const RVec& t) {
    CVec z(k + m + 2);
    for (int i = 0; i <= k; ++i) z[i] = complexd(0.0, t[i]);
    for (int j = 0; j <= m; ++j) z[k + 1 + j] = complexd(t[k + 1 + j], 0.0);
    return flatten_c(z);
  };
  L.sample_params = sample_sphere_pair(k, m);
  // each block is a phase times a real vector, the block phases differ by a
  // quarter turn, and the blocks have equal norms
  auto block_sums = [k, m](const RVec& x) {
    CVec z = unflatten_c(x);
    complexd s1 = 0, s2 = 0;
    double n1 = 0, n2 = 0;
    for (int i = 0; i <= k; ++i) {
      s1 += z[i] * z[i];
      n1 += std::norm(z[i]);
    }
    for (int j = 0; j <= m; ++j) {
      s2 += z[k + 1 + j] * z[k + 1 + j];
      n2 += std::norm(z[k + 1 + j]);
    }
    return std::tuple<complexd, complexd, double, double>(s1, s2, n1, n2);
  };
  L.residuals = {
      [block_sums](const RVec& x) {
        auto [s1, s2, n1, n2] = block_sums(x);
        return std::abs(s1) - n1;
      },
      [block_sums](const RVec& x) {
        auto [s1, s2, n1, n2] = block_sums(x);
        return std::abs(s2) - n2;
      },
      [block_sums](const RVec& x) {
        auto [s1, s2, n1, n2] = block_sums(x);
        return std::abs(s1 * std::conj(s2) + n1 * n2);
      },
      [block_sums](const RVec& x) {
        auto [s1, s2, n1, n2] = block_sums(x);
        return n1 - 1.0;
      },
  };
  L.note = "real product-of-spheres submanifold of the projective quadric";
  return L;
}

inline LagrangianSpec make_L_Q(int k, int m) {
  int K = k + m + 1;
  double r = 1.0 - 1.0 / K;
  LagrangianSpec L;
  L.id = "L_Q_k_m";
  L.ambient = chart_quadric(k + m + 2);
  L.params = chart_torus_params(k, m);
  L.dim = k + m + 1;
  SmoothMap io = map_iota(k, m, r);
  SmoothMap ps = map_Psi(K);
  L.param = [io, ps](const RVec& t) { return ps.eval(io.eval(t)); };
  L.sample_params = sample_angle_spheres(k, m);
  double z0sq = (1.0 / K) * (2.0 - 1.0 / K);
  L.residuals = {
      [z0sq](const RVec& x) { return x[0] * x[0] + x[1] * x[1] - z0sq; },
      [k](const RVec& x) {
        Mat A = moment_mu_Q(x);
        return A.topLeftCorner(k + 1, k + 1).norm();
      },
      [m](const RVec& x) {
        Mat A = moment_mu_Q(x);
        return A.bottomRightCorner(m + 1, m + 1).norm();
      },
  };
  L.note = "monotone circle-bundle torus bundle inside the quadric";
  return L;
}

inline std::function<RVec(const RVec&)> lp_param(int k, int m, double r) {
  double rho = std::sqrt(1.0 - r);
  return [k, m, rho](const RVec& t) {
    complexd v = quartic_curve(rho, t[0]);
    double w = std::sqrt(2.0 - std::norm(v));
    CVec z(k + m + 2);
    for (int i = 0; i <= k; ++i) z[i] = v * t[1 + i];
    for (int j = 0; j <= m; ++j) z[k + 1 + j] = complexd(w * t[k + 2 + j], 0.0);
    return flatten_c(z);
  };
}

inline LagrangianSpec make_L_P(int k, int m) {
  double r = 1.0 - 2.0 / (k + m + 2);
  LagrangianSpec L;
  L.id = "L_P_k_m";
  L.ambient = chart_csphere(k + m + 1);
  L.params = chart_torus_params(k, m);
  L.dim = k + m + 1;
  L.param = lp_param(k, m, r);
  L.sample_params = sample_angle_spheres(k, m);
  L.residuals = {
      [r](const RVec& x) { return moment_norm(moment_Phi_C(x)) - r; },
      [k](const RVec& x) {
        Mat A = moment_Phi_C(x);
        return A.topLeftCorner(k + 1, k + 1).norm();
      },
      [m](const RVec& x) {
        Mat A = moment_Phi_C(x);
        return A.bottomRightCorner(m + 1, m + 1).norm();
      },
  };
  L.note = "monotone circle-bundle submanifold of projective space";
  return L;
}

inline LagrangianSpec make_L_P_01() {
  LagrangianSpec L = make_L_P(0, 1);
  L.id = "L_P_0_1";
  L.residuals = {
      [](const RVec& x) {
        CVec z = unflatten_c(x);
        return std::abs((z.array() * z.array()).sum()) - 4.0 * std::sqrt(2.0) / 3.0;
      },
      [](const RVec& x) {
        CVec z = unflatten_c(x);
        return std::imag(std::conj(z[1]) * z[2]);
      },
  };
  L.note = "exotic monotone torus in the projective plane";
  return L;
}

inline LagrangianSpec make_clifford_s2s2() {
  LagrangianSpec L;
  L.id = "T_CL";
  L.ambient = chart_s2s2();
  L.params = chart_rn(2);
  L.dim = 2;
  L.param = [](const RVec& t) {
    RVec out(6);
    out << std::cos(t[0]), std::sin(t[0]), 0.0, std::cos(t[1]), std::sin(t[1]), 0.0;
    return out;
  };
  L.sample_params = sample_angles(2);
  L.residuals = {[](const RVec& x) { return x[2]; }, [](const RVec& x) { return x[5]; }};
  L.note = "product of equators";
  return L;
}

inline LagrangianSpec make_clifford_cp2() {
  LagrangianSpec L;
  L.id = "T_CL_P";
  L.ambient = chart_csphere(2);
  L.params = chart_rn(2);
  L.dim = 2;
  double a = std::sqrt(2.0 / 3.0);
  L.param = [a](const RVec& t) {
    CVec z(3);
    z[0] = a;
    z[1] = a * std::polar(1.0, t[0]);
    z[2] = a * std::polar(1.0, t[1]);
    return flatten_c(z);
  };
  L.sample_params = sample_angles(2);
  L.residuals = {
      [](const RVec& x) { return x[0] * x[0] + x[1] * x[1] - 2.0 / 3.0; },
      [](const RVec& x) { return x[2] * x[2] + x[3] * x[3] - 2.0 / 3.0; },
  };
  L.note = "equal-modulus torus in the projective plane";
  return L;
}

inline LagrangianSpec make_curve_C() {
  LagrangianSpec L;
  L.id = "C";
  L.ambient = chart_s2s2();
  L.params = chart_rn(1);
  L.dim = 1;
  L.param = [](const RVec& t) {
    RVec v = profile_circle(t[0]);
    RVec out(6);
    out << v, -v[0], -v[1], v[2];
    return out;
  };
  L.sample_params = sample_angles(1);
  L.residuals = {
      [](const RVec& x) { return x[2] - 0.5; },
      [](const RVec& x) { return x[5] - 0.5; },
      [](const RVec& x) { return x[0] + x[3]; },
      [](const RVec& x) { return x[1] + x[4]; },
  };
  L.note = "height-1/2 circle paired with its horizontal reflection";
  return L;
}

inline LagrangianSpec make_gamma_prime() {
  LagrangianSpec L;
  L.id = "Gamma_prime";
  L.ambient = chart_sphere(2);
  L.params = chart_rn(1);
  L.dim = 1;
  L.param = [](const RVec& t) { return profile_circle(t[0]); };
  L.sample_params = sample_angles(1);
  L.residuals = {[](const RVec& x) { return x[2] - 0.5; }};
  L.note = "height-1/2 circle on the sphere";
  return L;
}

inline LagrangianSpec make_C_km(int k, int m) {
  double r = 1.0 - 2.0 / (k + m + 2);
  double target = 4.0 * (1.0 - r * r);
  LagrangianSpec L;
  L.id = "C_k_m";
  L.ambient = chart_rn(2);
  L.params = chart_rn(1);
  L.dim = 1;
  double rho = std::sqrt(1.0 - r);
  L.param = [rho](const RVec& t) {
    complexd w = quartic_curve(rho, t[0]);
    RVec out(2);
    out << w.real(), w.imag();
    return out;
  };
  L.sample_params = sample_angles(1);
  L.residuals = {[target](const RVec& x) {
    complexd w(x[0], x[1]);
    return std::norm(w * w + 2.0 - std::norm(w)) - target;
  }};
  L.note = "profile quartic curve in the upper half-disk";
  return L;
}

inline LagrangianSpec make_C_tilde() {
  LagrangianSpec L = make_C_km(0, 1);
  L.id = "C_tilde";
  auto base = L.param;
  L.param = [base](const RVec& t) { return RVec(base(t) / std::sqrt(2.0)); };
  L.residuals = {[](const RVec& x) {
    complexd z(x[0], x[1]);
    return 4.0 * std::norm(z * z + 1.0 - std::norm(z)) - 32.0 / 9.0;
  }};
  L.note = "half-scale profile quartic in the unit disk";
  return L;
}

inline LagrangianSpec make_C_P() {
  LagrangianSpec L;
  L.id = "C_P";
  L.ambient = chart_csphere(2);
  L.params = chart_rn(1);
  L.dim = 1;
  double rho = std::sqrt(2.0 / 3.0);
  L.param = [rho](const RVec& t) {
    complexd v = quartic_curve(rho, t[0]);
    CVec z(3);
    z[0] = std::sqrt(2.0 - std::norm(v));
    z[1] = v;
    z[2] = 0.0;
    return flatten_c(z);
  };
  L.sample_params = sample_angles(1);
  L.residuals = {
      [](const RVec& x) { return std::hypot(x[4], x[5]); },
      [](const RVec& x) {
        CVec z = unflatten_c(x);
        return std::norm((z.array() * z.array()).sum()) - 32.0 / 9.0;
      },
  };
  L.note = "quartic profile curve inside a projective line";
  return L;
}

inline LagrangianSpec make_delta_curve(const std::string& id,
                                       std::function<complexd(double)> curve,
                                       std::function<double(const RVec&)> profile_res,
                                       const std::string& note) {
  LagrangianSpec L;
  L.id = id;
  L.ambient = chart_rn(4);
  L.params = chart_rn(1);
  L.dim = 1;
  L.param = [curve](const RVec& t) {
    complexd z = curve(t[0]);
    RVec out(4);
    out << z.real(), z.imag(), z.real(), z.imag();
    return out;
  };
  L.sample_params = sample_angles(1);
  L.residuals = {
      [](const RVec& x) { return x[0] - x[2]; },
      [](const RVec& x) { return x[1] - x[3]; },
      profile_res,
  };
  L.note = note;
  return L;
}

inline LagrangianSpec make_delta_gamma() {
  return make_delta_curve(
      "Delta_Gamma", [](double s) { return profile_disk(s); },
      [](const RVec& x) {
        return x[1] * std::sqrt(2.0 - x[0] * x[0] - x[1] * x[1]) - 0.5;
      },
      "doubled planar preimage of the height-1/2 circle");
}

inline LagrangianSpec make_delta_C_tilde() {
  double rho = std::sqrt(2.0 / 3.0);
  return make_delta_curve(
      "Delta_C_tilde",
      [rho](double s) { return quartic_curve(rho, s) / std::sqrt(2.0); },
      [](const RVec& x) {
        complexd z(x[0], x[1]);
        return 4.0 * std::norm(z * z + 1.0 - std::norm(z)) - 32.0 / 9.0;
      },
      "doubled half-scale profile quartic");
}

inline LagrangianSpec make_T_BC() {
  LagrangianSpec L = circle_bundle_lift(make_equator_x1(), 1.0, "ThetaDelta");
  L.id = "T_BC";
  L.note = "unit circle bundle over an equator, through the diagonal model";
  return L;
}

inline LagrangianSpec make_T_CS_P() {
  LagrangianSpec orb = orbit_spec(make_delta_C_tilde(), circle_action("rho_diag"));
  LagrangianSpec L = mapped_spec(map_psi_P(), orb);
  L.id = "T_CS_P";
  L.note = "rotation orbit of the doubled half-scale quartic, in the projective plane";
  return L;
}

}  // namespace detail

inline LagrangianSpec lagrangian(const std::string& full_id,
                                 std::map<std::string, double> pv) {
  std::string id = full_id;
  auto qpos = full_id.find('?');
  if (qpos != std::string::npos) {
    id = full_id.substr(0, qpos);
    std::string rest = full_id.substr(qpos + 1);
    size_t pos = 0;
    while (pos < rest.size()) {
      size_t amp = rest.find('&', pos);
      if (amp == std::string::npos) amp = rest.size();
      std::string kv = rest.substr(pos, amp - pos);
      size_t eq = kv.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("lagrangian: malformed query " + full_id);
      pv[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
      pos = amp + 1;
    }
  }
  auto geti = [&pv](const std::string& key) {
    return static_cast<int>(std::llround(detail::require_param(pv, key)));
  };
  if (id == "T_EP") return detail::make_T_EP();
  if (id == "T_AF") return detail::make_T_AF();
  if (id == "T_CS") return detail::make_T_CS();
  if (id == "T_BC") return detail::make_T_BC();
  if (id == "T_FOOO") return detail::make_T_FOOO();
  if (id == "T_CS_P") return detail::make_T_CS_P();
  if (id == "T_CL") return detail::make_clifford_s2s2();
  if (id == "T_CL_P") return detail::make_clifford_cp2();
  if (id == "L_P_0_1") return detail::make_L_P_01();
  if (id == "L_Q_k_m") return detail::make_L_Q(geti("k"), geti("m"));
  if (id == "L_P_k_m") return detail::make_L_P(geti("k"), geti("m"));
  if (id == "P_k_m" || id == "Pbar_k_m") {
    int k = geti("k"), m = geti("m");
    double r = pv.count("r") ? pv["r"] : 1.0 - 1.0 / (k + m + 1);
    return detail::make_P(k, m, r, id == "Pbar_k_m");
  }
  if (id == "S_k_m") return detail::make_S(geti("k"), geti("m"));
  if (id == "C_k_m") return detail::make_C_km(geti("k"), geti("m"));
  if (id == "C") return detail::make_curve_C();
  if (id == "Gamma_prime") return detail::make_gamma_prime();
  if (id == "C_P") return detail::make_C_P();
  if (id == "C_0_1") {
    LagrangianSpec L = detail::make_C_km(0, 1);
    L.id = "C_0_1";
    return L;
  }
  if (id == "C_tilde") return detail::make_C_tilde();
  if (id == "Delta_Gamma") return detail::make_delta_gamma();
  if (id == "Delta_C_tilde") return detail::make_delta_C_tilde();
  if (id == "equator_x1") return detail::make_equator_x1();
  throw std::invalid_argument("lagrangian: unknown id " + id);
}

inline std::vector<std::string> lagrangian_ids() {
  return {"T_EP",    "T_AF",    "T_CS",        "T_BC",        "T_FOOO",  "T_CS_P",
          "T_CL",    "T_CL_P",  "L_P_0_1",     "L_Q_k_m",     "L_P_k_m", "P_k_m",
          "Pbar_k_m", "S_k_m",  "C_k_m",       "C",           "Gamma_prime",
          "C_P",     "C_0_1",   "C_tilde",     "Delta_Gamma", "Delta_C_tilde",
          "equator_x1"};
}

}  // namespace symcheck
