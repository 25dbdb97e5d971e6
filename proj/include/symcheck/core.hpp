// Ambient linear algebra, quaternions, constrained point types and
// deterministic sampling for the verification suite.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace symcheck {

using RVec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using complexd = std::complex<double>;

inline constexpr double tol_point = 1e-10;

inline RVec rvec3(double a, double b, double c) {
  RVec v(3);
  v << a, b, c;
  return v;
}

// ---------------------------------------------------------------------------
// Deterministic splittable RNG.
//
// Streams are derived as seed = hash(root_seed, stream_id, index) so that
// independent checks get independent, reproducible streams regardless of
// evaluation order or threading.
// ---------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t& s) {
  s += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a;
  std::uint64_t h = splitmix64(s);
  h ^= b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  std::uint64_t t = h;
  return splitmix64(t);
}

inline std::uint64_t hash_string(std::string_view sv) {
  // FNV-1a
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : sv) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {
    // decorrelate trivially related seeds
    splitmix64(state_);
  }
  Rng(std::uint64_t root_seed, std::string_view stream_id, std::uint64_t index)
      : Rng(hash_combine(hash_combine(root_seed, hash_string(stream_id)), index)) {}

  std::uint64_t next_u64() { return splitmix64(state_); }

  // uniform in [0, 1)
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  RVec gaussian_vec(int n) {
    RVec v(n);
    for (int i = 0; i < n; ++i) v[i] = gaussian();
    return v;
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// ---------------------------------------------------------------------------
// Quaternions
// ---------------------------------------------------------------------------

struct Quat {
  double w = 0, x = 0, y = 0, z = 0;

  Quat() = default;
  Quat(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

  // H = C + Cj with z1 = w + x i, z2 = y + z i, i.e. q = z1 + z2 j.
  static Quat from_complex_pair(complexd z1, complexd z2) {
    return Quat(z1.real(), z1.imag(), z2.real(), z2.imag());
  }

  static Quat i() { return Quat(0, 1, 0, 0); }
  static Quat j() { return Quat(0, 0, 1, 0); }
  static Quat k() { return Quat(0, 0, 0, 1); }

  Quat conj() const { return Quat(w, -x, -y, -z); }
  double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }

  Quat operator*(const Quat& o) const {
    return Quat(w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w);
  }
  Quat operator+(const Quat& o) const { return Quat(w + o.w, x + o.x, y + o.y, z + o.z); }
  Quat operator-(const Quat& o) const { return Quat(w - o.w, x - o.x, y - o.y, z - o.z); }
  Quat operator*(double s) const { return Quat(w * s, x * s, y * s, z * s); }

  RVec imag() const { return rvec3(x, y, z); }
};

// Imaginary part of xi^* a xi for pure-imaginary a.  Throws if a has a real
// part; the real part of the product must vanish (checked).
inline RVec quat_sandwich(const Quat& xi, const Quat& a) {
  if (std::abs(a.w) > tol_point)
    throw std::invalid_argument("quat_sandwich: a must be pure imaginary");
  Quat r = xi.conj() * a * xi;
  if (std::abs(r.w) > 1e-9 * std::max(1.0, xi.norm2()))
    throw std::runtime_error("quat_sandwich: nonvanishing real part");
  return r.imag();
}

// ---------------------------------------------------------------------------
// Point types.  Constructors project onto the constraint set so stored
// residuals are at machine-precision level, far below tol_point.
// ---------------------------------------------------------------------------

struct SpherePoint {
  RVec q;
  explicit SpherePoint(RVec q_) : q(std::move(q_)) {
    double n = q.norm();
    if (n < 1e-12) throw std::invalid_argument("SpherePoint: zero vector");
    q /= n;
  }
  int n() const { return static_cast<int>(q.size()) - 1; }
};

struct CotangentPoint {
  RVec p, q;
  CotangentPoint(RVec p_, RVec q_, std::optional<double> radius_bound = std::nullopt)
      : p(std::move(p_)), q(std::move(q_)) {
    if (p.size() != q.size()) throw std::invalid_argument("CotangentPoint: size mismatch");
    double n = q.norm();
    if (n < 1e-12) throw std::invalid_argument("CotangentPoint: degenerate q");
    q /= n;
    p -= p.dot(q) * q;
    if (radius_bound && p.norm() >= *radius_bound)
      throw std::invalid_argument("CotangentPoint: |p| exceeds radius bound");
  }
  int n() const { return static_cast<int>(q.size()) - 1; }

  RVec flat() const {
    RVec v(2 * p.size());
    v << p, q;
    return v;
  }
  static CotangentPoint unflat(const RVec& v) {
    int h = static_cast<int>(v.size()) / 2;
    return CotangentPoint(v.head(h), v.tail(h));
  }
};

// Point of T*S^n / {(p,q) ~ (-p,-q)}.  Canonical representative: the
// lexicographically larger of the two sign choices on the concatenated
// vector (p, q).
struct ProjCotangentPoint {
  CotangentPoint rep;
  explicit ProjCotangentPoint(CotangentPoint c) : rep(canonical(std::move(c))) {}

  static CotangentPoint canonical(CotangentPoint c) {
    RVec v = c.flat();
    for (int i = 0; i < v.size(); ++i) {
      if (v[i] > 0) return c;
      if (v[i] < 0) return CotangentPoint(-c.p, -c.q);
    }
    return c;
  }
};

// Representative of a point of CP^n(sqrt 2): complex vector with |z|^2 = 2,
// considered up to global phase.
struct ProjPoint {
  CVec rep;
  explicit ProjPoint(CVec z) : rep(std::move(z)) {
    double n = rep.norm();
    if (n < 1e-12) throw std::invalid_argument("ProjPoint: zero vector");
    rep *= std::sqrt(2.0) / n;
  }
  int n() const { return static_cast<int>(rep.size()) - 1; }
};

// Phase-invariant metric on projective classes; zero iff [A] = [B].
inline double proj_dist(const ProjPoint& A, const ProjPoint& B) {
  complexd ip = (A.rep.conjugate().array() * B.rep.array()).sum();
  return std::sqrt(std::max(0.0, 2.0 - std::abs(ip)));
}

// Representative with the largest-modulus coordinate made real nonnegative.
inline ProjPoint canonicalize_proj(const ProjPoint& A) {
  int best = 0;
  double bm = 0;
  for (int i = 0; i < A.rep.size(); ++i) {
    double m = std::abs(A.rep[i]);
    if (m > bm) {
      bm = m;
      best = i;
    }
  }
  complexd ph = A.rep[best] / bm;
  return ProjPoint(CVec(A.rep / ph));
}

struct QuadricPoint {
  ProjPoint base;
  explicit QuadricPoint(ProjPoint b) : base(std::move(b)) {
    complexd s = (base.rep.array() * base.rep.array()).sum();
    if (std::abs(s) > 1e-8)
      throw std::invalid_argument("QuadricPoint: sum of squares not zero");
  }
};

// ---------------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------------

inline SpherePoint sample_sphere(int n, Rng& rng) {
  for (int tries = 0; tries < 64; ++tries) {
    RVec v = rng.gaussian_vec(n + 1);
    if (v.norm() > 1e-6) return SpherePoint(v);
  }
  throw std::runtime_error("sample_sphere: degenerate draws");
}

inline CotangentPoint sample_cotangent(int n, double r_min, double r_max, Rng& rng) {
  SpherePoint q = sample_sphere(n, rng);
  for (int tries = 0; tries < 64; ++tries) {
    RVec p = rng.gaussian_vec(n + 1);
    p -= p.dot(q.q) * q.q;
    double pn = p.norm();
    if (pn < 1e-6) continue;
    double r = rng.uniform(r_min, r_max);
    return CotangentPoint(p * (r / pn), q.q);
  }
  throw std::runtime_error("sample_cotangent: degenerate draws");
}

inline Mat sample_ortho(int n, Rng& rng) {
  Mat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.gaussian();
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix the sign gauge so the distribution is Haar and the result deterministic
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) *= -1;
  return q;
}

inline Mat sample_so(int n, Rng& rng) {
  Mat q = sample_ortho(n, rng);
  if (q.determinant() < 0) q.col(0) *= -1;
  return q;
}

inline ProjPoint sample_proj(int n, Rng& rng) {
  RVec re = rng.gaussian_vec(n + 1), im = rng.gaussian_vec(n + 1);
  CVec z(n + 1);
  for (int i = 0; i <= n; ++i) z[i] = complexd(re[i], im[i]);
  return ProjPoint(z);
}

}  // namespace symcheck
