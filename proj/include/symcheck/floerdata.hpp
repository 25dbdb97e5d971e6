#pragma once

// Exact-arithmetic relative homology lattice for the circle-bundle Lagrangians
// in projective space: class bases, divisor intersection tables, enumeration
// of Maslov-2 classes under positivity of intersections, and the associated
// superpotential with its critical points.

#include <array>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "symcheck/invariants.hpp"

namespace symcheck {

// ---------------------------------------------------------------------------
// Class lattice
// ---------------------------------------------------------------------------

// A relative homology class in exact integer coordinates.  Two bases occur:
//   "BCCD": {B, C1, C2, D} for the 3-torus L_P_1_1 in CP^3
//   "LD":   {l, D} for L_P_0_m in CP^{m+1} (l the line class); m recorded
struct RelClass {
  std::string basis;
  std::vector<long long> c;
  int m = 0;  // only meaningful for the "LD" basis
};

inline RelClass rel_class_bccd(long long b, long long c1, long long c2, long long d) {
  return RelClass{"BCCD", {b, c1, c2, d}, 0};
}

inline RelClass rel_class_ld(int m, long long l, long long d) {
  if (m < 2) throw std::invalid_argument("rel_class_ld: requires m >= 2");
  return RelClass{"LD", {l, d}, m};
}

// the line class expanded in the {B, C1, C2, D} basis: l = 2B - C1 - C2
inline RelClass line_class_bccd() { return rel_class_bccd(2, -1, -1, 0); }

// Integer intersection numbers of the basis generators with a list of
// holomorphic divisors disjoint from the Lagrangian.
struct DivisorTable {
  std::vector<std::string> divisors;
  std::vector<std::string> generators;
  std::map<std::string, std::vector<long long>> rows;  // generator -> pairings
};

namespace detail {

inline std::pair<int, int> lp_id_km(const std::string& id) {
  // accepts "L_P_k_m"
  if (id.rfind("L_P_", 0) != 0) throw std::invalid_argument("unknown lagrangian id: " + id);
  std::string rest = id.substr(4);
  size_t us = rest.find('_');
  if (us == std::string::npos) throw std::invalid_argument("unknown lagrangian id: " + id);
  return {std::stoi(rest.substr(0, us)), std::stoi(rest.substr(us + 1))};
}

inline size_t divisor_index(const DivisorTable& t, const std::string& name) {
  for (size_t i = 0; i < t.divisors.size(); ++i)
    if (t.divisors[i] == name) return i;
  throw std::invalid_argument("divisor_table: no divisor " + name);
}

}  // namespace detail

// Intersection tables for the two lattice setups, keyed by Lagrangian id.
// For L_P_1_1: divisors are the quadric Q and the four hyperplanes
// z0 +- i z1, z2 +- i z3; the B row follows from l = 2B - C1 - C2.
// For L_P_0_m: divisors are Q and the hyperplane H = {z_m + i z_{m+1} = 0},
// which misses the fiber disk.
inline DivisorTable divisor_table(const std::string& lagrangian_id) {
  auto [k, m] = detail::lp_id_km(lagrangian_id);
  DivisorTable t;
  if (k == 1 && m == 1) {
    t.divisors = {"Q", "H0+", "H0-", "H2+", "H2-"};
    t.generators = {"l", "C1", "C2", "D", "B"};
    t.rows["l"] = {2, 1, 1, 1, 1};
    t.rows["C1"] = {0, 1, -1, 0, 0};
    t.rows["C2"] = {0, 0, 0, 1, -1};
    t.rows["D"] = {1, 0, 0, 0, 0};
    t.rows["B"] = {1, 1, 0, 1, 0};
    return t;
  }
  if (k == 0 && m >= 2) {
    t.divisors = {"Q", "H"};
    t.generators = {"l", "D"};
    t.rows["l"] = {2, 1};
    t.rows["D"] = {1, 0};
    return t;
  }
  throw std::invalid_argument("divisor_table: no lattice data for " + lagrangian_id);
}

// consistency of the derived B row with the basis relation l = 2B - C1 - C2
inline void validate_divisor_table(const DivisorTable& t) {
  if (t.rows.count("B") == 0) return;
  const auto& l = t.rows.at("l");
  const auto& b = t.rows.at("B");
  const auto& c1 = t.rows.at("C1");
  const auto& c2 = t.rows.at("C2");
  for (size_t i = 0; i < t.divisors.size(); ++i)
    if (l[i] != 2 * b[i] - c1[i] - c2[i])
      throw std::domain_error("divisor_table: B row inconsistent with the basis relation");
}

// Maslov index, extended linearly from the generators:
//   BCCD: mu(B) = 4, mu(C1) = mu(C2) = 0, mu(D) = 2  (so mu(l) = 8)
//   LD:   mu(l) = 2(m+2), mu(D) = 2
inline long long maslov_of_class(const RelClass& A) {
  if (A.basis == "BCCD") {
    if (A.c.size() != 4) throw std::invalid_argument("maslov_of_class: bad coefficient count");
    return 4 * A.c[0] + 2 * A.c[3];
  }
  if (A.basis == "LD") {
    if (A.c.size() != 2) throw std::invalid_argument("maslov_of_class: bad coefficient count");
    return 2 * (A.m + 2) * A.c[0] + 2 * A.c[1];
  }
  throw std::invalid_argument("maslov_of_class: unknown basis " + A.basis);
}

// monotone area = lambda * maslov / 2, exactly
inline Rational area_of_class(const RelClass& A, const Rational& lambda) {
  return detail::rat_mul(lambda, detail::rat(maslov_of_class(A), 2));
}

inline long long pairing(const DivisorTable& t, const RelClass& A, const std::string& divisor) {
  size_t j = detail::divisor_index(t, divisor);
  std::vector<std::string> gens;
  if (A.basis == "BCCD")
    gens = {"B", "C1", "C2", "D"};
  else if (A.basis == "LD")
    gens = {"l", "D"};
  else
    throw std::invalid_argument("pairing: unknown basis " + A.basis);
  long long total = 0;
  for (size_t i = 0; i < A.c.size(); ++i) total += A.c[i] * t.rows.at(gens[i])[j];
  return total;
}

// All classes of Maslov index two whose pairing with every listed divisor is
// nonnegative, by exact integer search.  The Maslov condition pins one
// coefficient; the positivity conditions bound the rest, so a modest box
// suffices (asserted: no solutions on the box boundary).
inline std::vector<RelClass> enumerate_maslov2_positive(const std::string& lagrangian_id) {
  auto [k, m] = detail::lp_id_km(lagrangian_id);
  DivisorTable t = divisor_table(lagrangian_id);
  std::vector<RelClass> out;
  const long long bound = 8;
  auto admissible = [&](const RelClass& A) {
    for (const std::string& v : t.divisors)
      if (pairing(t, A, v) < 0) return false;
    return true;
  };
  if (k == 1 && m == 1) {
    for (long long b = -bound; b <= bound; ++b)
      for (long long c1 = -bound; c1 <= bound; ++c1)
        for (long long c2 = -bound; c2 <= bound; ++c2) {
          long long d = 1 - 2 * b;  // mu(A) = 4b + 2d = 2
          RelClass A = rel_class_bccd(b, c1, c2, d);
          if (!admissible(A)) continue;
          if (std::abs(b) == bound || std::abs(c1) == bound || std::abs(c2) == bound)
            throw std::domain_error("enumerate_maslov2_positive: search box too small");
          out.push_back(A);
        }
    return out;
  }
  for (long long l = -bound; l <= bound; ++l) {
    long long d = 1 - (m + 2) * l;  // mu(A) = 2(m+2)l + 2d = 2
    RelClass A = rel_class_ld(m, l, d);
    if (!admissible(A)) continue;
    if (std::abs(l) == bound)
      throw std::domain_error("enumerate_maslov2_positive: search box too small");
    out.push_back(A);
  }
  return out;
}

// Parity of n in 2B = C1 + C2 + n l, paired against the hyperplane H0+:
// B.H0+ = (C1.H0+ + C2.H0+ + n l.H0+)/2 must be an integer with n in {0,1}.
inline int n_parity_check(const DivisorTable& t) {
  size_t j = detail::divisor_index(t, "H0+");
  long long lh = t.rows.at("l")[j];
  long long s = t.rows.at("C1")[j] + t.rows.at("C2")[j];
  std::vector<int> ok;
  for (int n = 0; n <= 1; ++n)
    if ((s + n * lh) % 2 == 0) ok.push_back(n);
  if (ok.size() != 1)
    throw std::domain_error("n_parity_check: pairing does not determine the parity");
  return ok[0];
}

inline int n_parity_check() { return n_parity_check(divisor_table("L_P_1_1")); }

// ---------------------------------------------------------------------------
// Superpotential
// ---------------------------------------------------------------------------

// disk-count signs, one per Maslov-2 class; unresolved orientation data, so
// every sign-dependent result is parametrized over all 32 choices
struct SignVector {
  std::array<int, 5> eps{1, 1, 1, 1, 1};
};

inline SignVector parse_signs(const std::string& s) {
  SignVector sv;
  size_t pos = 0;
  for (int i = 0; i < 5; ++i) {
    if (pos >= s.size()) throw std::invalid_argument("parse_signs: expected 5 entries");
    char c = s[pos];
    if (c != '+' && c != '-') throw std::invalid_argument("parse_signs: entries must be + or -");
    sv.eps[i] = c == '+' ? 1 : -1;
    ++pos;
    if (i < 4) {
      if (pos >= s.size() || s[pos] != ',')
        throw std::invalid_argument("parse_signs: entries must be comma separated");
      ++pos;
    }
  }
  if (pos != s.size()) throw std::invalid_argument("parse_signs: trailing characters");
  return sv;
}

inline std::string format_signs(const SignVector& sv) {
  std::string s;
  for (int i = 0; i < 5; ++i) {
    s += sv.eps[i] > 0 ? '+' : '-';
    if (i < 4) s += ',';
  }
  return s;
}

// a character of the first homology in the coordinates
// (x, y, z) = (value on the half class, on the first vertical cycle, on the
// fiber boundary); all coordinates nonzero
struct CharacterPoint {
  complexd x, y, z;
};

namespace detail {

inline void check_nonzero(const CharacterPoint& p) {
  if (p.x == complexd(0) || p.y == complexd(0) || p.z == complexd(0))
    throw std::domain_error("superpotential: zero coordinate");
}

// the five weighted monomials of the potential
inline std::array<complexd, 5> potential_terms(const SignVector& s, const CharacterPoint& p) {
  return {static_cast<double>(s.eps[0]) * p.x / p.z,
          static_cast<double>(s.eps[1]) * p.x / (p.y * p.z),
          static_cast<double>(s.eps[2]) * p.y / (p.x * p.z),
          static_cast<double>(s.eps[3]) / (p.x * p.z),
          static_cast<double>(s.eps[4]) * p.z};
}

}  // namespace detail

// W(x,y,z) = (1/z)(e1 x + e2 x/y + e3 y/x + e4/x) + e5 z
inline complexd superpotential_eval(const SignVector& s, const CharacterPoint& p) {
  detail::check_nonzero(p);
  auto t = detail::potential_terms(s, p);
  return t[0] + t[1] + t[2] + t[3] + t[4];
}

// logarithmic gradient (x dW/dx, y dW/dy, z dW/dz)
inline std::array<complexd, 3> superpotential_grad(const SignVector& s, const CharacterPoint& p) {
  detail::check_nonzero(p);
  auto t = detail::potential_terms(s, p);
  return {t[0] + t[1] - t[2] - t[3], -t[1] + t[2], -t[0] - t[1] - t[2] - t[3] + t[4]};
}

namespace detail {

// Newton step for the logarithmic gradient in logarithmic coordinates; the
// Jacobian entries are again signed sums of the monomials
inline CharacterPoint newton_polish(const SignVector& s, CharacterPoint p, int iters = 20) {
  for (int it = 0; it < iters; ++it) {
    auto g = superpotential_grad(s, p);
    double gn = std::abs(g[0]) + std::abs(g[1]) + std::abs(g[2]);
    if (gn < 1e-14) break;
    auto t = potential_terms(s, p);
    complexd a = t[0], b = t[1], c = t[2], e = t[3], f = t[4];
    Eigen::Matrix3cd J;
    J << a + b + c + e, -b - c, -a - b + c + e,  //
        -b - c, b + c, b - c,                    //
        -a - b + c + e, b - c, a + b + c + e + f;
    Eigen::Vector3cd rhs;
    rhs << -g[0], -g[1], -g[2];
    Eigen::Vector3cd step = J.fullPivLu().solve(rhs);
    double sn = step.norm();
    if (sn > 1.0) step *= 1.0 / sn;  // damping
    p.x *= std::exp(step(0));
    p.y *= std::exp(step(1));
    p.z *= std::exp(step(2));
  }
  return p;
}

}  // namespace detail

// Closed-form critical points, Newton polished: x^2 = e1 e4,
// y^2 = e1 e2 e3 e4 with y != -e1 e2, z^2 = 2 e4 e5 (y + e1 e2)/(x y).
// Always nonempty; 4 points when e1 e2 e3 e4 = 1, 8 when it is -1.
inline std::vector<CharacterPoint> critical_points(const SignVector& s) {
  auto roots = [](complexd w) {
    complexd r = std::sqrt(w);
    return std::array<complexd, 2>{r, -r};
  };
  std::vector<CharacterPoint> out;
  complexd e12(static_cast<double>(s.eps[0] * s.eps[1]), 0.0);
  for (complexd x : roots(complexd(s.eps[0] * s.eps[3], 0.0)))
    for (complexd y : roots(complexd(s.eps[0] * s.eps[1] * s.eps[2] * s.eps[3], 0.0))) {
      if (std::abs(y + e12) < 1e-12) continue;  // degenerate branch, z = 0
      complexd z2 = 2.0 * static_cast<double>(s.eps[3] * s.eps[4]) * (y + e12) / (x * y);
      for (complexd z : roots(z2)) out.push_back(detail::newton_polish(s, {x, y, z}));
    }
  return out;
}

// The rank-one potential W(t_l, t_D) = sign * t_D of the L_P_0_m lattice has
// logarithmic gradient (0, sign * t_D), of modulus |t_D| > 0: certified
// critical-point-free, structurally and on a sample sweep over annuli.
inline bool monomial_potential_critical_point_free(int sign, int samples = 256,
                                                   unsigned long long seed = 7) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("monomial_potential_critical_point_free: sign must be +-1");
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    double rho = std::exp(2.0 * rng.uniform() - 1.0);
    complexd td = std::polar(rho, 2 * M_PI * rng.uniform());
    complexd g_l = 0.0, g_d = static_cast<double>(sign) * td;
    if (std::abs(g_l) + std::abs(g_d) < 1e-12) return false;
    if (std::abs(std::abs(g_d) - std::abs(td)) > 1e-12) return false;
  }
  return true;
}

}  // namespace symcheck
