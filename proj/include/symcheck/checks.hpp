#pragma once

// Named check registry and deterministic runner.  Every library operation is
// reachable from at least one check; each check draws its own seeded sample
// stream, compares a scalar metric against a tolerance, and reports in a
// machine-readable form.

#include <algorithm>
#include <chrono>
#include <functional>
#include <future>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "symcheck/floerdata.hpp"

#include "json.hpp"

namespace symcheck {

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

struct CheckParams {
  int samples = 1000;
  unsigned long long seed = 7;
  double tol = -1.0;                  // negative: use the check default
  std::map<std::string, double> qp;   // query parameters from the check id
};

struct CheckOutcome {
  double metric = 0.0;    // pass iff metric <= tolerance
  double value = 0.0;     // headline value, used by parameter sweeps
  double expected = 0.0;  // reference for the headline value
  std::string notes;
};

struct CheckDescriptor {
  std::string id;
  std::string description;
  double default_tol = 1e-12;
  std::string sweep_param;  // numeric parameter a sweep varies, if any
  std::function<CheckOutcome(const CheckParams&)> run;
};

struct CheckReport {
  std::string id;
  std::string status;  // pass | fail | error
  double metric = 0.0;
  double tolerance = 0.0;
  int samples = 0;
  unsigned long long seed = 0;
  double elapsed_ms = 0.0;
  std::string notes;
};

namespace detail {

inline double qget(const CheckParams& p, const std::string& key, double dflt) {
  auto it = p.qp.find(key);
  return it == p.qp.end() ? dflt : it->second;
}
inline int qgeti(const CheckParams& p, const std::string& key, int dflt) {
  return static_cast<int>(qget(p, key, dflt));
}

// --------------------------- samplers --------------------------------------

inline RVec sample_pair_s2s2(Rng& rng) {
  for (;;) {
    RVec v = sample_sphere(2, rng).q, w = sample_sphere(2, rng).q;
    if ((v - w).norm() > 0.3 && (v + w).norm() > 0.3) {
      RVec x(6);
      x << v, w;
      return x;
    }
  }
}

inline RVec sample_pq_disk_chart(int n, double zeta_max, Rng& rng) {
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

inline RVec sample_tangent_disk_chart(double lo, double hi, Rng& rng) {
  RVec x = sample_sphere(2, rng).q;
  RVec y = rng.gaussian_vec(3);
  y -= y.dot(x) * x;
  y *= rng.uniform(lo, hi) / y.norm();
  RVec t(6);
  t << x, y;
  return t;
}

inline RVec sample_scaled_gauss(int dim, double lo, double hi, Rng& rng) {
  RVec z = rng.gaussian_vec(dim);
  z *= rng.uniform(lo, hi) / z.norm();
  return z;
}

inline RVec sample_proj_rep(int n, Rng& rng) {
  CVec z(n + 1);
  for (int i = 0; i <= n; ++i) z[i] = complexd(rng.gaussian(), rng.gaussian());
  z *= std::sqrt(2.0) / z.norm();
  return flatten_c(z);
}

// --------------------------- metrics ---------------------------------------

// max scaled deviation of map^*(dst) from src over seeded (base, v, w) triples
inline double pullback_metric(const SmoothMap& m, const TwoForm& src, const TwoForm& dst,
                              const std::function<RVec(Rng&)>& sample, int count,
                              unsigned long long seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < count; ++t) {
    RVec x = sample(rng);
    RVec v = sample_tangent(m.domain, x, rng);
    RVec w = sample_tangent(m.domain, x, rng);
    double want = src(x, v, w);
    double got = pullback_two_form(m, dst, x, v, w);
    worst = std::max(worst, std::abs(got - want) / std::max(1.0, std::abs(want)));
  }
  return worst;
}

inline double set_equal_metric(const SetEqualReport& r) {
  return std::max(r.max_a_in_b, r.max_b_in_a);
}

inline double circ_dev(double a, double b) { return std::abs(std::remainder(a - b, 2 * M_PI)); }

// half of a degree-one curve in projective space, the line-area oracle
inline double proj_line_half_area() {
  auto half = [](complexd w) {
    double s = std::sqrt(2.0 / (1.0 + std::norm(w)));
    CVec full = CVec::Zero(4);
    full[0] = s * w;
    full[1] = s;
    return flatten_c(full);
  };
  return disk_integral(half, fubini_study()).value;
}

inline std::string lqp_id(const std::string& prefix, int k, int m) {
  return prefix + "?k=" + std::to_string(k) + "&m=" + std::to_string(m);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

inline const std::vector<CheckDescriptor>& check_registry() {
  using detail::qget;
  using detail::qgeti;
  static const std::vector<CheckDescriptor> registry = [] {
    std::vector<CheckDescriptor> reg;
    auto add = [&reg](std::string id, std::string desc, double tol, std::string sweep,
                      std::function<CheckOutcome(const CheckParams&)> fn) {
      reg.push_back({std::move(id), std::move(desc), tol, std::move(sweep), std::move(fn)});
    };

    // ------------------------- scalar helpers ------------------------------
    add("helper-f-identity", "half-disk profile function satisfies x^2 f + 1/f = 2", 1e-12, "x",
        [](const CheckParams& p) {
          CheckOutcome o;
          double x = qget(p, "x", 0.5);
          double f = helper_f(x);
          o.value = x * x * f + 1.0 / f;
          o.expected = 2.0;
          o.metric = std::abs(o.value - o.expected);
          o.metric = std::max(o.metric, std::abs(helper_f(0.0) - 0.5));
          o.metric = std::max(o.metric, std::abs(helper_f(0.5) - (4.0 - 2.0 * std::sqrt(3.0))));
          Rng rng(p.seed);
          for (int t = 0; t < p.samples; ++t) {
            double u = rng.uniform(0.0, 0.999);
            double g = helper_f(u);
            o.metric = std::max(o.metric, std::abs(u * u * g + 1.0 / g - 2.0));
          }
          return o;
        });

    add("quat-sandwich", "quaternion conjugation of i matches its complex-pair closed form",
        1e-12, "", [](const CheckParams& p) {
          CheckOutcome o;
          Rng rng(p.seed);
          for (int t = 0; t < p.samples; ++t) {
            complexd z1(rng.gaussian(), rng.gaussian()), z2(rng.gaussian(), rng.gaussian());
            Quat xi = Quat::from_complex_pair(z1, z2);
            RVec r = quat_sandwich(xi, Quat::i());
            complexd c = 2.0 * std::conj(z1) * z2;
            o.metric = std::max(o.metric, std::abs(r[0] - (std::norm(z1) - std::norm(z2))));
            o.metric = std::max(o.metric, std::abs(r[1] + c.imag()));
            o.metric = std::max(o.metric, std::abs(r[2] - c.real()));
          }
          return o;
        });

    add("plane-half-chart", "half-disk chart functions satisfy z^2 + f^2 + c^2 = 0 and f(-z) = f(z)",
        1e-12, "", [](const CheckParams& p) {
          CheckOutcome o;
          Rng rng(p.seed);
          for (int t = 0; t < p.samples; ++t) {
            complexd z = std::polar(std::sqrt(rng.uniform(0.001, 0.9)), rng.uniform(0, 2 * M_PI));
            complexd fz = plane_f(z);
            complexd s = z * z + fz * fz + plane_c(z) * plane_c(z);
            o.metric = std::max(o.metric, std::abs(s));
            o.metric = std::max(o.metric, std::abs(plane_f(-z) - fz));
            if (fz.imag() <= 0.0) o.metric = std::max(o.metric, 1.0);
          }
          return o;
        });

    // ------------------------- two-form pullbacks --------------------------
    auto add_pullback = [&add](const std::string& id, const std::string& desc, double tol,
                               std::function<double(const CheckParams&)> fn) {
      add("pullback-" + id, desc, tol, "",
          [fn](const CheckParams& p) {
            CheckOutcome o;
            o.metric = fn(p);
            return o;
          });
    };
    add_pullback("phi1", "double cover pulls the exact symplectic form back to the standard one",
                 1e-5, [](const CheckParams& p) {
                   return detail::pullback_metric(
                       map_phi1(), omega_standard_cn(), dlambda(),
                       [](Rng& r) { return detail::sample_scaled_gauss(4, 0.3, 1.8, r); },
                       p.samples, p.seed);
                 });
    add_pullback("Phi2", "sphere-pair chart pulls the cotangent form back to the product form",
                 1e-5, [](const CheckParams& p) {
                   return detail::pullback_metric(map_Phi2(), omega_s2s2(), dlambda(),
                                                  detail::sample_pair_s2s2, p.samples, p.seed);
                 });
    add_pullback("psi", "planar disk model of the sphere is half-area preserving", 1e-5,
                 [](const CheckParams& p) {
                   TwoForm half_std{[](const RVec& x, const RVec& a, const RVec& b) {
                     return 0.5 * x.dot(cross3(a, b));
                   }};
                   return detail::pullback_metric(
                       map_psi(), omega_standard_cn(), half_std,
                       [](Rng& r) { return detail::sample_scaled_gauss(2, 0.05, 1.35, r); },
                       p.samples, p.seed);
                 });
    add_pullback("h1", "circle-symmetric line model is symplectic", 1e-5,
                 [](const CheckParams& p) {
                   return detail::pullback_metric(
                       map_h1(), omega_standard_cn(), fubini_study(),
                       [](Rng& r) {
                         RVec z = r.gaussian_vec(2);
                         z *= std::sqrt(r.uniform(0.001, 0.92)) / z.norm();
                         return z;
                       },
                       p.samples, p.seed);
                 });
    add_pullback("h2", "half-plane line model is symplectic", 1e-5, [](const CheckParams& p) {
      return detail::pullback_metric(
          map_h2(), omega_standard_cn(), fubini_study(),
          [](Rng& r) {
            RVec w(2);
            w << r.uniform(-1.0, 1.0), r.uniform(0.1, 1.0);
            return w;
          },
          p.samples, p.seed);
    });
    add_pullback("psi_P", "ball embedding into the projective plane is symplectic", 1e-5,
                 [](const CheckParams& p) {
                   return detail::pullback_metric(
                       map_psi_P(), omega_standard_cn(), fubini_study(),
                       [](Rng& r) {
                         RVec z = r.gaussian_vec(4);
                         z *= std::sqrt(r.uniform(0.01, 1.9)) / z.norm();
                         return z;
                       },
                       p.samples, p.seed);
                 });
    add_pullback("PsiP", "cotangent model of projective space is symplectic", 1e-5,
                 [](const CheckParams& p) {
                   int n = qgeti(p, "n", 2);
                   return detail::pullback_metric(
                       map_PsiP(n), dlambda(), fubini_study(),
                       [n](Rng& r) { return sample_cotangent(n, 0.1, 0.9, r).flat(); },
                       p.samples, p.seed);
                 });
    add_pullback("Psi", "cotangent model of the quadric is symplectic", 1e-5,
                 [](const CheckParams& p) {
                   int n = qgeti(p, "n", 2);
                   return detail::pullback_metric(
                       map_Psi(n), dlambda(), fubini_study(),
                       [n](Rng& r) { return sample_cotangent(n, 0.1, 0.9, r).flat(); },
                       p.samples, p.seed);
                 });
    add_pullback("ThetaDelta", "diagonal-complement disk bundle embedding is symplectic", 1e-4,
                 [](const CheckParams& p) {
                   return detail::pullback_metric(
                       map_ThetaDelta(), tangent_bundle_form(), omega_s2s2(),
                       [](Rng& r) { return detail::sample_tangent_disk_chart(0.3, 1.3, r); },
                       p.samples, p.seed);
                 });
    add_pullback("ThetaQ", "quadric-complement disk bundle embedding is symplectic", 1e-5,
                 [](const CheckParams& p) {
                   int n = qgeti(p, "n", 2);
                   return detail::pullback_metric(
                       map_ThetaQ(n), disk_bundle_form_quadric(), fubini_study(),
                       [n](Rng& r) { return detail::sample_pq_disk_chart(n, 1.3, r); },
                       p.samples, p.seed);
                 });
    add_pullback("Thetap", "projective disk bundle embedding is symplectic", 1e-5,
                 [](const CheckParams& p) {
                   int n = qgeti(p, "n", 2);
                   return detail::pullback_metric(
                       map_Thetap(n), disk_bundle_form_proj(), fubini_study(),
                       [n](Rng& r) { return detail::sample_pq_disk_chart(n, 0.9, r); },
                       p.samples, p.seed);
                 });
    add_pullback("Q1Q2", "reflection of the second factor preserves the product form", 1e-5,
                 [](const CheckParams& p) {
                   return detail::pullback_metric(map_Q1Q2(), omega_s2s2(), omega_s2s2(),
                                                  detail::sample_pair_s2s2, p.samples, p.seed);
                 });
    add_pullback("psi_P_conj", "conjugated ball rotation preserves the projective form", 1e-4,
                 [](const CheckParams& p) {
                   return detail::pullback_metric(
                       map_psi_P_conj(), fubini_study(), fubini_study(),
                       [](Rng& r) {
                         CVec z(3);
                         for (int i = 0; i < 3; ++i) z[i] = complexd(r.gaussian(), r.gaussian());
                         z *= std::sqrt(2.0) / z.norm();
                         if (std::abs(z[0]) < 0.3) z[0] += complexd(0.5, 0);
                         z *= std::sqrt(2.0) / z.norm();
                         return flatten_c(z);
                       },
                       p.samples, p.seed);
                 });

    // ------------------------- torus equalities ----------------------------
    auto add_equal = [&add](const std::string& id, const std::string& desc, double tol,
                            std::function<SetEqualReport(const CheckParams&)> fn) {
      add(id, desc, tol, "", [fn](const CheckParams& p) {
        CheckOutcome o;
        SetEqualReport r = fn(p);
        o.metric = detail::set_equal_metric(r);
        o.notes = r.pass ? "two-sided containment" : "containment failure";
        return o;
      });
    };
    add_equal("equal-torus-af", "cotangent-bundle torus equals the orbit torus", 1e-10,
              [](const CheckParams& p) {
                return set_equal(lagrangian("T_AF"), lagrangian("T_EP"), p.samples, 1e-10,
                                 p.seed);
              });
    add_equal("equal-torus-bc", "diagonal circle-bundle torus equals the orbit torus", 1e-10,
              [](const CheckParams& p) {
                return set_equal(lagrangian("T_BC"), lagrangian("T_EP"), p.samples, 1e-10,
                                 p.seed);
              });
    add_equal("equal-torus-fooo", "alternate presentation of the orbit torus is the same set",
              1e-10, [](const CheckParams& p) {
                return set_equal(lagrangian("T_FOOO"), lagrangian("T_EP"), p.samples, 1e-10,
                                 p.seed);
              });
    add_equal("mapped-torus-reflection", "factor reflection carries one orbit torus to the other",
              1e-10, [](const CheckParams& p) {
                return mapped_equal(map_Q1Q2(), lagrangian("T_EP"), lagrangian("T_CS"),
                                    p.samples, 1e-10, p.seed);
              });
    add_equal("mapped-ball-rotation",
              "conjugated ball rotation matches the projective orbit torus", 1e-9,
              [](const CheckParams& p) {
                return mapped_equal(map_psi_P_conj(), lagrangian("L_P_0_1"),
                                    lagrangian("T_CS_P"), std::min(p.samples, 300), 1e-9,
                                    p.seed);
              });
    add_equal("lift-quadric", "circle-bundle lift over the quadric matches the catalog entry",
              1e-10, [](const CheckParams& p) {
                int k = qgeti(p, "k", 0), m = qgeti(p, "m", 1);
                double r = 1.0 - 1.0 / (k + m + 1);
                LagrangianSpec base = lagrangian(detail::lqp_id("S_k_m", k, m));
                return set_equal(circle_bundle_lift(base, std::sqrt(2.0 - 2.0 * r), "ThetaQ"),
                                 lagrangian(detail::lqp_id("L_Q_k_m", k, m)),
                                 std::min(p.samples, 400), 1e-10, p.seed);
              });
    add_equal("lift-projective",
              "circle-bundle lift into projective space matches the catalog entry", 1e-10,
              [](const CheckParams& p) {
                int k = qgeti(p, "k", 0), m = qgeti(p, "m", 1);
                double r = 1.0 - 2.0 / (k + m + 2);
                LagrangianSpec base = lagrangian(detail::lqp_id("S_k_m", k, m));
                std::string target =
                    (k == 0 && m == 1) ? "L_P_0_1" : detail::lqp_id("L_P_k_m", k, m);
                return set_equal(circle_bundle_lift(base, std::sqrt(1.0 - r), "Thetap"),
                                 lagrangian(target), std::min(p.samples, 400), 1e-10, p.seed);
              });
    add_equal("lift-diagonal", "unit lift of the polar equator gives the orbit torus", 1e-10,
              [](const CheckParams& p) {
                return set_equal(circle_bundle_lift(lagrangian("equator_x1"), 1.0, "ThetaDelta"),
                                 lagrangian("T_EP"), p.samples, 1e-10, p.seed);
              });
    add_equal("orbit-curve-quadric", "rotation orbit of the profile curve is the orbit torus",
              1e-10, [](const CheckParams& p) {
                return set_equal(orbit_spec(lagrangian("C"), circle_action("rho_EP")),
                                 lagrangian("T_EP"), std::min(p.samples, 300), 1e-10, p.seed);
              });
    add_equal("orbit-curve-projective",
              "projective rotation orbit of the planar curve is the two-torus", 1e-9,
              [](const CheckParams& p) {
                return set_equal(orbit_spec(lagrangian("C_P"), circle_action("rho_proj12")),
                                 lagrangian("L_P_0_1"), std::min(p.samples, 300), 1e-9, p.seed);
              });

    add("residual-pinned", "implicit torus residuals take their pinned values", 1e-12, "",
        [](const CheckParams&) {
          CheckOutcome o;
          LagrangianSpec tep = lagrangian("T_EP");
          double c = std::sqrt(3.0) / 2.0;
          RVec on(6), off(6);
          on << 0, -c, 0.5, 0, c, 0.5;
          off << 1, 0, 0, 1, 0, 0;
          o.metric = std::max(residual(tep, on), std::abs(residual(tep, off) - 1.5));
          return o;
        });

    add("lagrangian-isotropic", "catalog tori have isotropic full-rank tangent planes", 1e-6, "",
        [](const CheckParams& p) {
          CheckOutcome o;
          int n = std::min(p.samples, 40);
          LagrangianCheckReport r1 = lagrangian_check(lagrangian("T_EP"), omega_s2s2(), n);
          LagrangianCheckReport r2 =
              lagrangian_check(lagrangian("P_k_m?k=1&m=1&r=0.5"), dlambda(), n);
          o.metric = std::max(r1.max_omega, r2.max_omega);
          if (!r1.full_rank || !r2.full_rank) o.metric = std::max(o.metric, 1.0);
          return o;
        });

    add("roundtrip-maps", "catalog charts invert on their images", 1e-10, "",
        [](const CheckParams& p) {
          CheckOutcome o;
          Rng rng(p.seed);
          SmoothMap phi2 = map_Phi2(), psi = map_psi(), Psi = map_Psi(2);
          SmoothMap td = map_ThetaDelta(), tq = map_ThetaQ(2), tp = map_Thetap(2);
          SmoothMap h2 = map_h2();
          int n = std::min(p.samples, 200);
          for (int t = 0; t < n; ++t) {
            RVec vw = detail::sample_pair_s2s2(rng);
            o.metric = std::max(o.metric, (phi2.inverse(phi2.eval(vw)) - vw).norm());
            RVec z = detail::sample_scaled_gauss(2, 0.05, 1.3, rng);
            o.metric = std::max(o.metric, (psi.inverse(psi.eval(z)) - z).norm());
            RVec c = sample_cotangent(2, 0.1, 0.9, rng).flat();
            o.metric = std::max(o.metric, (Psi.inverse(Psi.eval(c)) - c).norm());
            RVec xy = detail::sample_tangent_disk_chart(0.1, 1.3, rng);
            o.metric = std::max(o.metric, (td.inverse(td.eval(xy)) - xy).norm());
            RVec a = detail::sample_pq_disk_chart(2, 1.2, rng);
            o.metric = std::max(o.metric, (tq.inverse(tq.eval(a)) - a).norm());
            RVec b = detail::sample_pq_disk_chart(2, 0.9, rng);
            o.metric = std::max(o.metric, (tp.inverse(tp.eval(b)) - b).norm());
            RVec w(2);
            w << rng.uniform(-1.0, 1.0), rng.uniform(0.1, 1.0);
            o.metric = std::max(o.metric, (h2.inverse(h2.eval(w)) - w).norm());
          }
          return o;
        });

    add("flow-group-law", "unit-speed geodesic flow is a flow and preserves its invariants",
        1e-12, "", [](const CheckParams& p) {
          CheckOutcome o;
          Rng rng(p.seed);
          for (int t = 0; t < p.samples; ++t) {
            CotangentPoint c = sample_cotangent(3, 0.1, 0.9, rng);
            double a = rng.uniform(-3, 3), b = rng.uniform(-3, 3);
            CotangentPoint one = geodesic_flow(a + b, c);
            CotangentPoint two = geodesic_flow(a, geodesic_flow(b, c));
            o.metric = std::max(o.metric, (one.flat() - two.flat()).norm());
            o.metric = std::max(o.metric, std::abs(one.p.norm() - c.p.norm()));
            o.metric = std::max(o.metric, std::abs(one.q.norm() - 1.0));
            o.metric = std::max(o.metric, std::abs(one.p.dot(one.q)));
          }
          return o;
        });

    add("action-conjugacy", "the two sphere-pair rotations are conjugate by the reflection",
        1e-12, "", [](const CheckParams& p) {
          CheckOutcome o;
          Rng rng(p.seed);
          Chart pair = chart_s2s2();
          SmoothMap inv = map_Q1Q2();
          for (int t = 0; t < p.samples; ++t) {
            RVec vw = detail::sample_pair_s2s2(rng);
            double th = rng.uniform(0, 2 * M_PI);
            o.metric = std::max(o.metric, pair.residual(act_rho_CS(th, vw)));
            o.metric = std::max(o.metric, pair.residual(act_rho_EP(th, vw)));
            RVec lhs = inv.eval(act_rho_EP(th, vw));
            RVec rhs = act_rho_CS(th, inv.eval(vw));
            o.metric = std::max(o.metric, (lhs - rhs).norm());
            o.metric = std::max(o.metric, (inv.eval(inv.eval(vw)) - vw).norm());
          }
          return o;
        });

    // ------------------------- observables and moment maps -----------------
    add("observable-sphere-split", "sphere-pair chart observables hold identically", 1e-12, "",
        [](const CheckParams& p) {
          CheckOutcome o;
          SmoothMap m = map_Phi2();
          Rng rng(p.seed);
          for (int t = 0; t < p.samples; ++t) {
            RVec x = detail::sample_pair_s2s2(rng);
            RVec v = x.head(3), w = x.tail(3);
            RVec pq = m.eval(x);
            RVec pp = pq.head(3), qq = pq.tail(3);
            o.metric = std::max(o.metric, std::abs(pp.norm() - 0.5 * (v + w).norm()));
            o.metric = std::max(o.metric, std::abs(cross3(pp, qq)[0] - 0.5 * (v + w)[0]));
            o.metric = std::max(o.metric,
                                std::abs((v - w).squaredNorm() * (v + w).squaredNorm() -
                                         4.0 * cross3(v, w).squaredNorm()));
          }
          return o;
        });

    add("observable-double-cover", "double cover observables hold identically", 1e-12, "",
        [](const CheckParams& p) {
          CheckOutcome o;
          SmoothMap m = map_phi1();
          Rng rng(p.seed);
          for (int t = 0; t < p.samples; ++t) {
            RVec xi = detail::sample_scaled_gauss(4, 0.2, 1.9, rng);
            RVec out = m.eval(xi);
            o.metric = std::max(o.metric, (m.eval(RVec(-xi)) - out).norm());
            complexd z1(xi[0], xi[1]), z2(xi[2], xi[3]);
            o.metric = std::max(o.metric, std::abs(out.head(3).norm() - xi.squaredNorm() / 4.0));
            o.metric = std::max(o.metric, std::abs(cross3(RVec(out.head(3)), RVec(out.tail(3)))[0] -
                                                   0.25 * (std::norm(z1) - std::norm(z2))));
          }
          return o;
        });

    add("observable-composition",
        "cotangent chart composed with the double cover has the pinned observables", 1e-10, "",
        [](const CheckParams& p) {
          CheckOutcome o;
          SmoothMap phi1 = map_phi1(), psip = map_PsiP(2);
          Rng rng(p.seed);
          for (int t = 0; t < p.samples; ++t) {
            RVec xi = detail::sample_scaled_gauss(4, 0.2, 1.9, rng);
            complexd z1(xi[0], xi[1]), z2(xi[2], xi[3]);
            CVec u = unflatten_c(psip.eval(phi1.eval(xi)));
            o.metric = std::max(o.metric, std::abs((std::conj(u[1]) * u[2]).imag() -
                                                   0.25 * (std::norm(z1) - std::norm(z2))));
            complexd s = (u.array() * u.array()).sum();
            o.metric = std::max(o.metric, std::abs(0.25 * std::sqrt(4.0 - std::norm(s)) -
                                                   0.125 * xi.squaredNorm()));
          }
          return o;
        });

    add("moment-quadric", "quadric moment map agrees with the cotangent one through the chart",
        1e-10, "", [](const CheckParams& p) {
          CheckOutcome o;
          SmoothMap m = map_Psi(2);
          Rng rng(p.seed);
          for (int t = 0; t < p.samples; ++t) {
            CotangentPoint c = sample_cotangent(2, 0.05, 0.95, rng);
            Mat muq = moment_mu_Q(m.eval(c.flat()));
            Mat mus = moment_Phi_R(c.flat());
            o.metric = std::max(o.metric, (muq - mus).norm());
            o.metric = std::max(o.metric, std::abs(moment_norm(mus) - c.p.norm()));
          }
          return o;
        });

    add("moment-projective", "unitary moment norm through the cotangent chart is the momentum",
        1e-10, "", [](const CheckParams& p) {
          CheckOutcome o;
          SmoothMap m = map_PsiP(2);
          Rng rng(p.seed);
          for (int t = 0; t < p.samples; ++t) {
            CotangentPoint c = sample_cotangent(2, 0.1, 0.9, rng);
            o.metric = std::max(
                o.metric, std::abs(moment_norm(moment_Phi_C(m.eval(c.flat()))) - c.p.norm()));
          }
          return o;
        });

    add("moment-norms", "moment map norm formulas and invariances hold identically", 1e-12, "",
        [](const CheckParams& p) {
          CheckOutcome o;
          Rng rng(p.seed);
          for (int t = 0; t < p.samples; ++t) {
            RVec rep = detail::sample_proj_rep(3, rng);
            CVec z = unflatten_c(rep);
            Mat A = moment_Phi_C(rep);
            o.metric = std::max(o.metric, (A + A.transpose()).norm());
            complexd s = (z.array() * z.array()).sum();
            o.metric =
                std::max(o.metric, std::abs(moment_norm(A) - 0.5 * std::sqrt(4.0 - std::norm(s))));
            RVec rep2 = flatten_c(CVec(z * std::polar(1.0, rng.uniform(0, 2 * M_PI))));
            o.metric = std::max(o.metric, (moment_Phi_C(rep2) - A).norm());
            CotangentPoint c = sample_cotangent(3, 0.1, 0.95, rng);
            Mat B = moment_Phi_R(c.flat());
            o.metric = std::max(o.metric, (B + B.transpose()).norm());
            o.metric = std::max(o.metric, std::abs(moment_norm(B) - c.p.norm()));
          }
          return o;
        });

    // ------------------------- areas ---------------------------------------
    add("area-profile", "quartic profile curve encloses pi (1 - alpha)", 1e-6, "alpha",
        [](const CheckParams& p) {
          CheckOutcome o;
          double alpha = qget(p, "alpha", 0.5);
          PlaneCurve q = [alpha](double s) {
            return symcheck::detail::quartic_curve(std::sqrt(1.0 - alpha), s);
          };
          o.value = std::abs(planar_area(q, standard_area_primitive()));
          o.expected = M_PI * (1.0 - alpha);
          o.metric = std::abs(o.value - o.expected);
          return o;
        });
    add("area-half-disk", "planar half-disk profile encloses pi/2", 1e-6, "",
        [](const CheckParams&) {
          CheckOutcome o;
          PlaneCurve gamma = [](double s) { return symcheck::detail::profile_disk(s); };
          o.value = std::abs(planar_area(gamma, standard_area_primitive()));
          o.expected = M_PI / 2.0;
          o.metric = std::abs(o.value - o.expected);
          return o;
        });
    add("area-scaled-curve", "rescaled quartic curve encloses pi/3", 1e-6, "",
        [](const CheckParams&) {
          CheckOutcome o;
          PlaneCurve c = [](double s) {
            return symcheck::detail::quartic_curve(std::sqrt(2.0 / 3.0), s) / std::sqrt(2.0);
          };
          o.value = std::abs(planar_area(c, standard_area_primitive()));
          o.expected = M_PI / 3.0;
          o.metric = std::abs(o.value - o.expected);
          return o;
        });
    add("area-disk-bundle", "weighted disk area matches 2 pi (1 - sqrt(1 - a^2))", 1e-6, "a",
        [](const CheckParams& p) {
          CheckOutcome o;
          double a = qget(p, "a", 0.6);
          auto diskmap = [a](complexd w) {
            RVec x(2);
            x << a * w.real(), a * w.imag();
            return x;
          };
          o.value = disk_integral(diskmap, omega_prime_disk()).value;
          o.expected = 2 * M_PI * (1.0 - std::sqrt(1.0 - a * a));
          o.metric = std::abs(o.value - o.expected);
          return o;
        });
    add("area-geodesic-orbit", "geodesic-orbit disk area is 2 pi r", 1e-6, "r",
        [](const CheckParams& p) {
          CheckOutcome o;
          int k = qgeti(p, "k", 0), m = qgeti(p, "m", 1);
          double r = qget(p, "r", 0.5);
          o.value = disk_area(disk("u1", {{"k", double(k)}, {"m", double(m)}, {"r", r}}));
          o.expected = 2 * M_PI * r;
          o.metric = std::abs(o.value - o.expected);
          return o;
        });
    add("area-vertical-disks", "vertical and conjugation-invariant disks have zero area", 1e-7,
        "", [](const CheckParams&) {
          CheckOutcome o;
          for (const std::string& id : {"u2?k=1&m=1", "u3?k=0&m=1", "v1", "v2"})
            o.metric = std::max(o.metric, std::abs(disk_area(disk(id))));
          return o;
        });
    add("area-fiber-quadric", "quadric-bundle fiber disk area is 2 pi (1 - r)", 1e-6, "r",
        [](const CheckParams& p) {
          CheckOutcome o;
          double r = qget(p, "r", 0.5);
          int k = qgeti(p, "k", 0), m = qgeti(p, "m", 1);
          o.value =
              disk_area(disk("fiber_ThetaQ", {{"k", double(k)}, {"m", double(m)}, {"r", r}}));
          o.expected = 2 * M_PI * (1.0 - r);
          o.metric = std::abs(o.value - o.expected);
          return o;
        });
    add("area-fiber-projective", "projective-bundle fiber disk area is pi (1 - r)", 1e-6, "r",
        [](const CheckParams& p) {
          CheckOutcome o;
          double r = qget(p, "r", 0.5);
          int k = qgeti(p, "k", 1), m = qgeti(p, "m", 1);
          o.value =
              disk_area(disk("fiber_Thetap", {{"k", double(k)}, {"m", double(m)}, {"r", r}}));
          o.expected = M_PI * (1.0 - r);
          o.metric = std::abs(o.value - o.expected);
          return o;
        });
    add("area-fiber-diagonal", "diagonal-bundle fiber disk area is pi rho^2", 1e-6, "rho",
        [](const CheckParams& p) {
          CheckOutcome o;
          double rho = qget(p, "rho", 1.0);
          o.value = disk_area(disk("fiber_ThetaDelta", {{"rho", rho}}));
          o.expected = M_PI * rho * rho;
          o.metric = std::abs(o.value - o.expected);
          return o;
        });
    add("area-cap", "profile cap disk has absolute area pi/2", 1e-6, "", [](const CheckParams&) {
      CheckOutcome o;
      o.value = std::abs(disk_area(disk("cap_gamma_prime")));
      o.expected = M_PI / 2.0;
      o.metric = std::abs(o.value - o.expected);
      return o;
    });
    add("area-real-locus", "real-locus half disks in the quadric have areas 2 pi and pi", 1e-6,
        "", [](const CheckParams&) {
          CheckOutcome o;
          double hemi = std::abs(disk_area(disk("hemisphere_Q?m=2")));
          double line = std::abs(disk_area(disk("line_half?k=1&m=1")));
          o.value = line;
          o.expected = M_PI;
          o.metric = std::max(std::abs(hemi - 2 * M_PI), std::abs(line - M_PI));
          return o;
        });
    add("boundary-disks", "catalog disk boundaries lie on their named Lagrangians", 1e-8, "",
        [](const CheckParams&) {
          CheckOutcome o;
          for (const std::string& id :
               {"u1?k=0&m=1&r=0.5", "u2?k=1&m=1", "u3?k=0&m=1", "v1", "v2",
                "fiber_ThetaQ?k=0&m=1&r=0.5", "fiber_Thetap?k=1&m=1&r=0.5",
                "fiber_ThetaDelta?rho=1", "cap_gamma_prime", "hemisphere_Q?m=2",
                "line_half?k=1&m=1"})
            o.metric = std::max(o.metric, boundary_residual(disk(id)));
          return o;
        });

    // ------------------------- Maslov indices ------------------------------
    add("maslov-frame-oracle", "frame-loop index oracle values", 0.0, "",
        [](const CheckParams&) {
          CheckOutcome o;
          LagrangianFrameLoop constant;
          Mat F(4, 2);
          F << 1, 0, 0, 1, 0, 0, 0, 0;
          for (int i = 0; i < 16; ++i) constant.frames.push_back(F);
          if (maslov_frame_loop(constant) != 0) o.metric += 1;
          LagrangianFrameLoop line;
          for (int i = 0; i < 64; ++i) {
            double th = 2 * M_PI * i / 64;
            Mat G(2, 1);
            G << std::cos(th), std::sin(th);
            line.frames.push_back(G);
          }
          if (maslov_frame_loop(line) != 2) o.metric += 1;
          LagrangianFrameLoop torus;
          std::vector<complexd> c = {complexd(0.5, 0), complexd(0.3, 0.2), complexd(0, 0.7)};
          for (int i = 0; i < 128; ++i) {
            double th = 2 * M_PI * i / 128;
            Mat T = Mat::Zero(6, 3);
            for (int j = 0; j < 3; ++j) {
              complexd zj = j == 0 ? std::abs(c[0]) * std::polar(1.0, th) : c[j];
              complexd v = complexd(0, 1) * zj;
              T(j, j) = v.real();
              T(3 + j, j) = v.imag();
            }
            torus.frames.push_back(T);
          }
          if (maslov_frame_loop(torus) != 2) o.metric += 1;
          return o;
        });
    add("maslov-geodesic", "geodesic-orbit disk indices are 2(k+m) and 0", 0.0, "",
        [](const CheckParams& p) {
          CheckOutcome o;
          int k = qgeti(p, "k", 0), m = qgeti(p, "m", 1);
          std::map<std::string, double> pv = {{"k", double(k)}, {"m", double(m)}, {"r", 0.5}};
          int mu1 = maslov_disk(disk("u1", pv), 256, 128);
          o.value = mu1;
          o.expected = 2 * (k + m);
          if (mu1 != 2 * (k + m)) o.metric += 1;
          int mu_vert = maslov_disk(disk(k == 0 ? "u3" : "u2", pv), 256, 128);
          if (mu_vert != 0) o.metric += 1;
          o.notes = "vertical index " + std::to_string(mu_vert);
          return o;
        });

    // ------------------------- monotonicity --------------------------------
    add("monotone-radius-quadric", "monotone radius over the quadric is 1 - 1/(k+m+1)", 1e-12,
        "", [](const CheckParams& p) {
          CheckOutcome o;
          int k = qgeti(p, "k", 0), m = qgeti(p, "m", 1);
          double line = 2.0 * std::abs(disk_area(disk("line_half?k=1&m=1")));
          Rational r = monotone_radius([](double t) { return 2 * M_PI * (1 - t); }, 2, line,
                                       2 * (k + m + 1));
          o.value = rational_value(r);
          o.expected = 1.0 - 1.0 / (k + m + 1);
          o.metric = std::abs(o.value - o.expected);
          return o;
        });
    add("monotone-radius-projective", "monotone radius in projective space is 1 - 2/(k+m+2)",
        1e-12, "", [](const CheckParams& p) {
          CheckOutcome o;
          int k = qgeti(p, "k", 0), m = qgeti(p, "m", 1);
          double line = 2.0 * detail::proj_line_half_area();
          Rational r = monotone_radius([](double t) { return M_PI * (1 - t); }, 2, line,
                                       2 * (k + m + 2));
          o.value = rational_value(r);
          o.expected = 1.0 - 2.0 / (k + m + 2);
          o.metric = std::abs(o.value - o.expected);
          return o;
        });
    add("minimal-maslov", "minimal Maslov number is k+m for k>0 and 2m for k=0", 0.0, "",
        [](const CheckParams& p) {
          CheckOutcome o;
          int k = qgeti(p, "k", 1), m = qgeti(p, "m", 2);
          std::vector<ClassLatticeEntry> entries = {{"u1", M_PI, 2LL * (k + m)}};
          if (k > 0) entries.push_back({"u2", 0.0, 0});
          if (m > 0) entries.push_back({"u3", 0.0, 0});
          long long got = minimal_maslov(entries, k > 0);
          o.value = got;
          o.expected = k > 0 ? k + m : 2 * m;
          if (got != static_cast<long long>(o.expected)) o.metric += 1;
          return o;
        });

    // ------------------------- displaceability -----------------------------
    add("displace-threshold", "split-domain criterion reproduces the dimension threshold", 0.0,
        "", [](const CheckParams&) {
          CheckOutcome o;
          for (int n = 2; n <= 8; ++n) {
            bool got = displaceability_criterion(2 * M_PI / (n + 1), M_PI, 2 * M_PI);
            if (got != (n >= 4)) o.metric += 1;
          }
          if (displaceability_criterion(0.1, M_PI, M_PI / 2)) o.metric += 1;
          return o;
        });
    add("holonomy-angles", "boundary holonomy angles take their pinned values", 1e-6, "",
        [](const CheckParams&) {
          CheckOutcome o;
          o.metric = std::max(o.metric,
                              detail::circ_dev(holonomy_angle(disk("u2?k=1&m=1"), 2 * M_PI), 0.0));
          o.metric = std::max(
              o.metric, detail::circ_dev(holonomy_angle(disk("hemisphere_Q?m=2"), 2 * M_PI), 0.0));
          o.metric = std::max(o.metric, detail::circ_dev(
                                            holonomy_angle(disk("line_half?k=1&m=1"), 2 * M_PI),
                                            M_PI));
          return o;
        });
    add("displace-quadric", "area-preserving isotopy certificate over the quadric", 1e-6, "",
        [](const CheckParams& p) {
          CheckOutcome o;
          int m = qgeti(p, "m", 2);
          IsotopyCertificate c = displacement_isotopy("L_Q_k_m?k=0&m=" + std::to_string(m));
          o.value = c.enclosed_area;
          o.expected = 2 * M_PI / (m + 1);
          o.metric = std::max(c.max_area_drift, std::abs(c.enclosed_area - o.expected));
          if (c.refused || !c.pass || c.min_separation <= 0.01) o.metric = std::max(o.metric, 1.0);
          o.notes = "steps " + std::to_string(c.steps) + ", separation " +
                    std::to_string(c.min_separation);
          return o;
        });
    add("displace-projective", "area-preserving isotopy certificate in projective space", 1e-6,
        "", [](const CheckParams& p) {
          CheckOutcome o;
          int k = qgeti(p, "k", 1), m = qgeti(p, "m", 2);
          IsotopyCertificate c = displacement_isotopy(detail::lqp_id("L_P_k_m", k, m));
          o.value = c.enclosed_area;
          o.expected = 2 * M_PI / (k + m + 2);
          o.metric = std::max(c.max_area_drift, std::abs(c.enclosed_area - o.expected));
          if (c.refused || !c.pass || c.min_separation <= 0.01) o.metric = std::max(o.metric, 1.0);
          o.notes = "steps " + std::to_string(c.steps) + ", separation " +
                    std::to_string(c.min_separation);
          return o;
        });
    add("displace-refusal", "isotopies at the area bound are refused", 0.0, "",
        [](const CheckParams&) {
          CheckOutcome o;
          for (const std::string& id : {"L_P_k_m?k=1&m=1", "L_P_k_m?k=0&m=2"}) {
            IsotopyCertificate c = displacement_isotopy(id, 4);
            if (!c.refused) o.metric += 1;
          }
          return o;
        });

    // ------------------------- Morse data ----------------------------------
    add("morse-critical", "product Morse function has 16 nondegenerate critical points", 1e-9,
        "", [](const CheckParams& p) {
          CheckOutcome o;
          int k = qgeti(p, "k", 0), m = qgeti(p, "m", 1);
          MorseReport rep = morse_critical_points(k, m);
          o.value = static_cast<double>(rep.points.size());
          o.expected = 16.0;
          if (rep.points.size() != 16) o.metric = std::max(o.metric, 1.0);
          for (const MorseCriticalPoint& c : rep.points) {
            o.metric = std::max(o.metric, c.grad_norm);
            if (c.index < 0 || c.index > 1 + k + m) o.metric = std::max(o.metric, 1.0);
          }
          return o;
        });

    // ------------------------- class lattice -------------------------------
    add("lattice-maslov", "lattice Maslov indices extend linearly from the generators", 0.0, "",
        [](const CheckParams&) {
          CheckOutcome o;
          if (maslov_of_class(line_class_bccd()) != 8) o.metric += 1;
          if (maslov_of_class(rel_class_bccd(1, 0, 0, 0)) != 4) o.metric += 1;
          if (maslov_of_class(rel_class_bccd(0, 1, 0, 0)) != 0) o.metric += 1;
          if (maslov_of_class(rel_class_bccd(0, 0, 0, 1)) != 2) o.metric += 1;
          for (int m = 2; m <= 4; ++m)
            if (maslov_of_class(rel_class_ld(m, 1, 0)) != 2 * (m + 2)) o.metric += 1;
          validate_divisor_table(divisor_table("L_P_1_1"));
          return o;
        });
    add("lattice-enumerate", "positive Maslov-2 classes are exactly the expected sets", 0.0, "",
        [](const CheckParams& p) {
          CheckOutcome o;
          int k = qgeti(p, "k", 1), m = qgeti(p, "m", 1);
          auto classes = enumerate_maslov2_positive("L_P_" + std::to_string(k) + "_" +
                                                    std::to_string(m));
          std::set<std::vector<long long>> got;
          for (const RelClass& A : classes) got.insert(A.c);
          std::set<std::vector<long long>> want;
          if (k == 1 && m == 1)
            want = {{0, 0, 0, 1}, {1, 0, 0, -1}, {1, -1, 0, -1}, {1, 0, -1, -1}, {1, -1, -1, -1}};
          else
            want = {{0, 1}};
          o.value = static_cast<double>(got.size());
          o.expected = static_cast<double>(want.size());
          if (got != want) o.metric += 1;
          return o;
        });
    add("lattice-parity", "half-class parity against the hyperplane pairing is 1", 0.0, "",
        [](const CheckParams&) {
          CheckOutcome o;
          o.value = n_parity_check();
          o.expected = 1.0;
          if (n_parity_check() != 1) o.metric += 1;
          return o;
        });

    // ------------------------- superpotential ------------------------------
    add("superpotential-gradient", "analytic logarithmic gradient matches finite differences",
        1e-6, "", [](const CheckParams& p) {
          CheckOutcome o;
          Rng rng(p.seed);
          int n = std::min(p.samples, 200);
          for (int t = 0; t < n; ++t) {
            SignVector s;
            for (int i = 0; i < 5; ++i) s.eps[i] = rng.uniform() < 0.5 ? -1 : 1;
            CharacterPoint q{std::polar(rng.uniform(0.5, 2.0), rng.uniform(0.0, 2 * M_PI)),
                             std::polar(rng.uniform(0.5, 2.0), rng.uniform(0.0, 2 * M_PI)),
                             std::polar(rng.uniform(0.5, 2.0), rng.uniform(0.0, 2 * M_PI))};
            auto g = superpotential_grad(s, q);
            const double h = 1e-6;
            for (int j = 0; j < 3; ++j) {
              auto shift = [&](double e) {
                CharacterPoint r = q;
                (j == 0 ? r.x : j == 1 ? r.y : r.z) *= std::exp(e);
                return superpotential_eval(s, r);
              };
              complexd fd = (shift(h) - shift(-h)) / (2 * h);
              o.metric = std::max(o.metric, std::abs(fd - g[j]));
            }
          }
          return o;
        });
    add("superpotential-critical",
        "closed-form critical points have vanishing gradient for all sign vectors", 1e-12, "",
        [](const CheckParams&) {
          CheckOutcome o;
          for (int mask = 0; mask < 32; ++mask) {
            SignVector s;
            for (int i = 0; i < 5; ++i) s.eps[i] = (mask >> i) & 1 ? -1 : 1;
            auto pts = critical_points(s);
            size_t want = s.eps[0] * s.eps[1] * s.eps[2] * s.eps[3] == 1 ? 4 : 8;
            if (pts.size() != want) o.metric = std::max(o.metric, 1.0);
            for (const CharacterPoint& q : pts) {
              auto g = superpotential_grad(s, q);
              o.metric =
                  std::max(o.metric, std::abs(g[0]) + std::abs(g[1]) + std::abs(g[2]));
            }
          }
          return o;
        });
    add("superpotential-rank-one", "the rank-one potential is certified critical-point-free",
        0.0, "", [](const CheckParams& p) {
          CheckOutcome o;
          if (!monomial_potential_critical_point_free(1, p.samples, p.seed)) o.metric += 1;
          if (!monomial_potential_critical_point_free(-1, p.samples, p.seed)) o.metric += 1;
          return o;
        });

    std::sort(reg.begin(), reg.end(),
              [](const CheckDescriptor& a, const CheckDescriptor& b) { return a.id < b.id; });
    return reg;
  }();
  return registry;
}

// ---------------------------------------------------------------------------
// Runner
// ---------------------------------------------------------------------------

namespace detail {

inline unsigned long long fnv1a(const std::string& s) {
  unsigned long long h = 1469598103934665603ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace detail

inline const CheckDescriptor& find_check(const std::string& base_id) {
  for (const CheckDescriptor& d : check_registry())
    if (d.id == base_id) return d;
  throw std::invalid_argument("unknown check id: " + base_id);
}

inline std::vector<std::string> check_ids() {
  std::vector<std::string> ids;
  for (const CheckDescriptor& d : check_registry()) ids.push_back(d.id);
  return ids;
}

// Runs one check; `full_id` may carry query parameters ("area-profile?alpha=0.25").
// The sample stream is seeded from the run seed and the check id, so reports
// are deterministic regardless of scheduling.
inline CheckReport run_check(const std::string& full_id, const CheckParams& base = {}) {
  auto [id, qp] = detail::parse_id(full_id);
  const CheckDescriptor& d = find_check(id);
  CheckParams p = base;
  for (const auto& [key, val] : qp) p.qp[key] = val;
  p.seed = base.seed ^ detail::fnv1a(full_id);
  CheckReport rep;
  rep.id = full_id;
  rep.tolerance = base.tol >= 0.0 ? base.tol : d.default_tol;
  rep.samples = p.samples;
  rep.seed = base.seed;
  auto t0 = std::chrono::steady_clock::now();
  try {
    CheckOutcome o = d.run(p);
    rep.metric = o.metric;
    rep.notes = o.notes;
    rep.status = o.metric <= rep.tolerance ? "pass" : "fail";
  } catch (const std::exception& e) {
    rep.status = "error";
    rep.metric = std::numeric_limits<double>::infinity();
    rep.notes = e.what();
  }
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                       .count();
  return rep;
}

// Runs the listed checks (all registered checks if the list is empty),
// optionally in a thread pool; reports come back sorted by id.
inline std::vector<CheckReport> run_checks(std::vector<std::string> ids,
                                           const CheckParams& base = {}, bool parallel = false) {
  if (ids.empty()) ids = check_ids();
  std::vector<CheckReport> reports(ids.size());
  if (parallel) {
    std::vector<std::future<CheckReport>> futs;
    for (const std::string& id : ids)
      futs.push_back(std::async(std::launch::async, [id, &base] { return run_check(id, base); }));
    for (size_t i = 0; i < futs.size(); ++i) reports[i] = futs[i].get();
  } else {
    for (size_t i = 0; i < ids.size(); ++i) reports[i] = run_check(ids[i], base);
  }
  std::sort(reports.begin(), reports.end(),
            [](const CheckReport& a, const CheckReport& b) { return a.id < b.id; });
  return reports;
}

// Sweeps one numeric parameter of a check, writing CSV rows
// parameter,value,expected,abs_error (header only for an empty range).
inline void sweep_check(const std::string& full_id, const std::string& param,
                        const std::vector<double>& values, std::ostream& os,
                        const CheckParams& base = {}) {
  auto [id, qp] = detail::parse_id(full_id);
  const CheckDescriptor& d = find_check(id);
  std::string key = param.empty() ? d.sweep_param : param;
  if (key.empty()) throw std::invalid_argument("check " + id + " has no sweep parameter");
  os << "parameter,value,expected,abs_error\n";
  for (double v : values) {
    CheckParams p = base;
    for (const auto& [k, val] : qp) p.qp[k] = val;
    p.qp[key] = v;
    p.seed = base.seed ^ detail::fnv1a(full_id);
    CheckOutcome o = d.run(p);
    os << v << "," << o.value << "," << o.expected << "," << std::abs(o.value - o.expected)
       << "\n";
  }
}

// ---------------------------------------------------------------------------
// JSON report serialization
// ---------------------------------------------------------------------------

inline constexpr const char* kVersion = "0.1.0";

inline nlohmann::json report_to_json(const CheckReport& r) {
  return nlohmann::json{{"id", r.id},           {"status", r.status},
                        {"metric", r.metric},   {"tolerance", r.tolerance},
                        {"samples", r.samples}, {"seed", r.seed},
                        {"elapsed_ms", r.elapsed_ms}, {"notes", r.notes}};
}

inline CheckReport report_from_json(const nlohmann::json& j) {
  CheckReport r;
  r.id = j.at("id").get<std::string>();
  r.status = j.at("status").get<std::string>();
  r.metric = j.at("metric").get<double>();
  r.tolerance = j.at("tolerance").get<double>();
  r.samples = j.at("samples").get<int>();
  r.seed = j.at("seed").get<unsigned long long>();
  r.elapsed_ms = j.at("elapsed_ms").get<double>();
  r.notes = j.at("notes").get<std::string>();
  return r;
}

inline nlohmann::json reports_to_json(const std::vector<CheckReport>& reports,
                                      unsigned long long run_seed) {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckReport& r : reports) checks.push_back(report_to_json(r));
  return nlohmann::json{{"run_seed", run_seed}, {"version", kVersion}, {"checks", checks}};
}

}  // namespace symcheck
