#include "qcl/sampler.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "qcl/errors.hpp"
#include "qcl/exact_volume.hpp"
#include "qcl/mc_oracle.hpp"
#include "qcl/parallel.hpp"

namespace qcl {

std::string_view to_string(SamplerMode m) {
  return m == SamplerMode::paper_literal ? "paper" : "layered";
}

std::string_view to_string(GlobalMode m) {
  return m == GlobalMode::uniform_af ? "uniform-af" : "density-af";
}

SamplerMode parse_sampler_mode(std::string_view s) {
  if (s == "paper") return SamplerMode::paper_literal;
  if (s == "layered") return SamplerMode::layered_exact;
  throw UsageError("unknown sampler mode '" + std::string(s) + "'");
}

GlobalMode parse_global_mode(std::string_view s) {
  if (s == "uniform-af") return GlobalMode::uniform_af;
  if (s == "density-af") return GlobalMode::density_af;
  throw UsageError("unknown global mode '" + std::string(s) + "'");
}

std::vector<double> uniform_in_ball(int dim, double radius, RngStream& rng) {
  if (dim < 1 || dim > 4) throw DomainError("uniform_in_ball: dim must be in 1..4");
  if (!(radius >= 0.0)) throw DomainError("uniform_in_ball: negative radius");
  std::vector<double> x(static_cast<std::size_t>(dim), 0.0);
  if (radius == 0.0) return x;
  for (;;) {
    double r2 = 0.0;
    for (double& v : x) {
      v = rng.uniform(-1.0, 1.0);
      r2 += v * v;
    }
    if (r2 <= 1.0) break;
  }
  for (double& v : x) v *= radius;
  return x;
}

namespace {

using linalg::Matrix;
using linalg::Vector;

template <class T>
constexpr std::size_t kFieldDim = linalg::is_complex_v<T> ? 2 : 1;

template <class T>
cplx to_cplx(const T& x) {
  if constexpr (linalg::is_complex_v<T>) return x;
  else return {x, 0.0};
}

/// Uniform direction on the unit sphere of R^dim.
std::vector<double> unit_direction(int dim, RngStream& rng) {
  for (;;) {
    auto x = uniform_in_ball(dim, 1.0, rng);
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    if (r2 > 1e-12) {
      const double inv = 1.0 / std::sqrt(r2);
      for (double& v : x) v *= inv;
      return x;
    }
  }
}

/// Vector in T^N of Euclidean length `length` along a uniform direction.
template <class T, std::size_t N>
Vector<T, N> random_vector(double length, RngStream& rng) {
  const auto dir = unit_direction(static_cast<int>(N * kFieldDim<T>), rng);
  Vector<T, N> v{};
  for (std::size_t i = 0; i < N; ++i) {
    if constexpr (linalg::is_complex_v<T>) v[i] = length * cplx(dir[2 * i], dir[2 * i + 1]);
    else v[i] = length * dir[i];
  }
  return v;
}

/// Uniform point of the ball of radius `radius` in T^N.
template <class T, std::size_t N>
Vector<T, N> ball_vector(double radius, RngStream& rng) {
  const auto x = uniform_in_ball(static_cast<int>(N * kFieldDim<T>), radius, rng);
  Vector<T, N> v{};
  for (std::size_t i = 0; i < N; ++i) {
    if constexpr (linalg::is_complex_v<T>) v[i] = cplx(x[2 * i], x[2 * i + 1]);
    else v[i] = x[i];
  }
  return v;
}

/// k-th smallest of n uniforms, i.e. Beta(k, n + 1 - k).
double order_statistic(int k, int n, RngStream& rng) {
  std::array<double, 8> u{};
  for (int i = 0; i < n; ++i) u[static_cast<std::size_t>(i)] = rng.uniform();
  std::sort(u.begin(), u.begin() + n);
  return u[static_cast<std::size_t>(k - 1)];
}

/// Uniform point of {x in T^3 : x^* A^{-1} x < mu, x_j = fixed_j for j not free}.
/// With w = A^{-1/2} x / sqrt(mu) the section is the unit ball cut by the
/// affine plane fixed + M, M = A^{-1/2} span{e_j : j free}. z is the foot of
/// the perpendicular from the origin to that plane; the section is the disk
/// of radius sqrt(1 - |z|^2) around z inside z + M.
template <class T, std::size_t Free>
Vector<T, 3> sample_ellipse_section(const Matrix<T, 3>& A, const std::array<std::size_t, Free>& free,
                                    const Vector<T, 3>& fixed, double mu, RngStream& rng) {
  const Matrix<T, 3> root = linalg::sqrtm_psd(A);
  const Matrix<T, 3> inv_root = linalg::inv_sqrtm_pd(A);
  std::array<Vector<T, 3>, Free> basis{};
  for (std::size_t i = 0; i < Free; ++i) {
    Vector<T, 3> col{};
    for (std::size_t r = 0; r < 3; ++r) col[r] = inv_root(r, free[i]);
    for (std::size_t j = 0; j < i; ++j) {
      const T proj = linalg::inner(basis[j], col);
      for (std::size_t r = 0; r < 3; ++r) col[r] -= proj * basis[j][r];
    }
    const double len = std::sqrt(linalg::norm2(col));
    for (auto& x : col) x /= len;
    basis[i] = col;
  }
  const double scale = std::sqrt(mu);
  Vector<T, 3> z = inv_root * fixed;
  for (auto& x : z) x /= scale;
  for (std::size_t j = 0; j < Free; ++j) {
    const T proj = linalg::inner(basis[j], z);
    for (std::size_t r = 0; r < 3; ++r) z[r] -= proj * basis[j][r];
  }
  const double rest = 1.0 - linalg::norm2(z);
  if (!(rest > 0.0)) throw DiagnosticError("empty ellipse section in the last layer");
  const auto t = ball_vector<T, Free>(std::sqrt(rest), rng);
  Vector<T, 3> w = z;
  for (std::size_t j = 0; j < Free; ++j)
    for (std::size_t r = 0; r < 3; ++r) w[r] += t[j] * basis[j][r];
  Vector<T, 3> x = root * w;
  for (auto& v : x) v *= scale;
  for (std::size_t r = 0; r < 3; ++r) {
    bool is_free = false;
    for (std::size_t j = 0; j < Free; ++j) is_free = is_free || free[j] == r;
    if (!is_free) x[r] = fixed[r];
  }
  return x;
}

template <class T>
Matrix<T, 3> bordered(const Matrix<T, 2>& a2, const Vector<T, 2>& col, double corner) {
  Matrix<T, 3> a3;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) a3(i, j) = a2(i, j);
    a3(i, 2) = col[i];
    a3(2, i) = linalg::conj(col[i]);
  }
  a3(2, 2) = corner;
  return a3;
}

// General channels, A-form
//   [ a    c    b    d  ]
//   [ c*   f    e*   g  ]
//   [ b*   e    1-a  -c ]
//   [ d*   g*   -c*  1-f]
// Integrating the fiber indicator over (d, g), then (b, e*), leaves
//   c        ~ ((1-a)(1-f) - |c|^2)^k (af - |c|^2)^k,  k = 1 real, 2 complex,
//   (b, e*)  = sqrt(A_2) w,  w ~ (1-a - |w|^2)^{k/2} on the ball of radius sqrt(1-a),
//   (d, g)   uniform on the ellipse section det(A) > 0.
template <class T>
ChannelParams layered_general(SpaceKind kind, double a, double f, RngStream& rng,
                              LayeredDiagnostics& diag) {
  constexpr bool cx = linalg::is_complex_v<T>;
  const double p = (1.0 - a) * (1.0 - f);
  const double r = a * f;
  const double c_max = std::sqrt(std::min(p, r));
  T c{};
  for (std::uint64_t it = 0;; ++it) {
    if (it == kLayerIterationCap) throw DiagnosticError("layered sampler: layer-1 cap exceeded");
    c = ball_vector<T, 1>(c_max, rng)[0];
    const double s = linalg::abs2(c);
    double ratio = (p - s) * (r - s) / (p * r);
    if (cx) ratio *= ratio;
    ++diag.layer1_proposals;
    if (rng.uniform() < ratio) break;
  }
  ++diag.layer1_accepted;
  Matrix<T, 2> a2;
  a2(0, 0) = a;
  a2(0, 1) = c;
  a2(1, 0) = linalg::conj(c);
  a2(1, 1) = f;

  // Radial part s = |w|^2 / (1-a): density (1-s)^{1/2} (R^2) or s(1-s) (R^4).
  const double s = cx ? order_statistic(2, 3, rng) : 1.0 - std::pow(rng.uniform(), 2.0 / 3.0);
  const auto w = random_vector<T, 2>(std::sqrt((1.0 - a) * s), rng);
  const Vector<T, 2> x2 = linalg::sqrtm_psd(a2) * w;
  const T b = x2[0];
  const T e = linalg::conj(x2[1]);

  const Matrix<T, 3> a3 = bordered(a2, x2, 1.0 - a);
  const Vector<T, 3> fixed{T{}, T{}, -c};
  const auto x3 = sample_ellipse_section<T, 2>(a3, {0, 1}, fixed, 1.0 - f, rng);
  return ChannelParams{kind, a, f, to_cplx(b), to_cplx(c), to_cplx(x3[0]), to_cplx(e),
                       to_cplx(x3[1])};
}

// Unital channels, A-form
//   [ 1-a   e    b*   -c ]
//   [ e*   1-a   c*   -b ]
//   [ b     c    a     d ]
//   [ -c*  -b*   d*    a ]
// With y = (b*, c*) and q = y^* A_2^{-1} y, the last-column condition leaves
// a d-section of measure ~ (a - q)^k, k = 1 real, 2 complex (the two
// quadratic forms of the section coincide for this reordering). Hence
//   e ~ det(A_2)^{k/2} on |e| < 1-a,
//   y = sqrt(A_2) w, w ~ (a - |w|^2)^k on the ball of radius sqrt(a),
//   d uniform on its section.
template <class T>
ChannelParams layered_unital(SpaceKind kind, double a, RngStream& rng, LayeredDiagnostics& diag) {
  ++diag.layer1_proposals;
  ++diag.layer1_accepted;
  constexpr bool cx = linalg::is_complex_v<T>;
  const double r = 1.0 - a;
  T e{};
  if constexpr (cx) {
    // |e|^2 / r^2 has density (1 - s) on [0, 1].
    const double s = 1.0 - std::sqrt(rng.uniform());
    e = random_vector<T, 1>(r * std::sqrt(s), rng)[0];
  } else {
    // Semicircle law: first coordinate of a uniform point of the disk.
    e = r * uniform_in_ball(2, 1.0, rng)[0];
  }
  Matrix<T, 2> a2;
  a2(0, 0) = r;
  a2(0, 1) = e;
  a2(1, 0) = linalg::conj(e);
  a2(1, 1) = r;

  // s = |w|^2 / a: density (1 - s) on R^2, s (1 - s)^2 on R^4.
  const double s = cx ? order_statistic(2, 4, rng) : 1.0 - std::sqrt(rng.uniform());
  const auto w = random_vector<T, 2>(std::sqrt(a * s), rng);
  const Vector<T, 2> y = linalg::sqrtm_psd(a2) * w;
  const T b = linalg::conj(y[0]);
  const T c = linalg::conj(y[1]);

  const Matrix<T, 3> a3 = bordered(a2, y, a);
  const Vector<T, 3> fixed{-c, -b, T{}};
  const auto x3 = sample_ellipse_section<T, 1>(a3, {2}, fixed, a, rng);
  return ChannelParams::unital(kind, a, to_cplx(b), to_cplx(c), to_cplx(x3[2]), to_cplx(e));
}

void require_positive_fiber(SpaceKind k, double a, std::optional<double> f) {
  if (fiber_volume(k, a, f) <= 0.0)
    throw DomainError("fiber over a=" + format_double(a) +
                      (f ? ", f=" + format_double(*f) : std::string()) + " has zero volume");
}

}  // namespace

ChannelParams sample_fiber_literal(double a, double f, RngStream& rng, LiteralDiagnostics* diag,
                                   Step3Radius radius) {
  require_positive_fiber(SpaceKind::general_real, a, f);
  LiteralDiagnostics local;
  LiteralDiagnostics& d = diag ? *diag : local;
  const double bound = std::sqrt(a * f);
  for (std::uint64_t it = 0; it < kLayerIterationCap; ++it) {
    // Step 2
    const double x1 = rng.uniform(-bound, bound);
    Matrix<double, 2> a2;
    a2(0, 0) = a;
    a2(0, 1) = x1;
    a2(1, 0) = x1;
    a2(1, 1) = f;
    // Step 3
    const double r3 = radius == Step3Radius::sqrt_f ? f : 1.0 - a;
    const auto y2 = uniform_in_ball(2, std::sqrt(r3), rng);
    const Vector<double, 2> x2 = linalg::sqrtm_psd(a2) * Vector<double, 2>{y2[0], y2[1]};
    const Matrix<double, 3> a3 = bordered(a2, x2, 1.0 - a);
    if (!is_pd(a3, 0.0)) {
      ++d.indefinite_a3;
      continue;
    }
    // Step 4: P projects onto span{sqrt(A_3) e_3}.
    const Matrix<double, 3> root = linalg::sqrtm_psd(a3);
    const Matrix<double, 3> inv_root = linalg::inv_sqrtm_pd(a3);
    Vector<double, 3> p{root(0, 2), root(1, 2), root(2, 2)};
    const double plen = std::sqrt(linalg::norm2(p));
    for (double& v : p) v /= plen;
    const Vector<double, 3> q{inv_root(0, 2), inv_root(1, 2), inv_root(2, 2)};
    const double coef = -x1 / std::sqrt(1.0 - f) * linalg::inner(p, q);
    Vector<double, 3> z{coef * p[0], coef * p[1], coef * p[2]};
    // Step 5
    const double z2 = linalg::norm2(z);
    if (z2 > 1.0) {
      ++d.step5_rejections;
      continue;
    }
    // Step 6
    std::array<Vector<double, 3>, 2> basis{};
    for (std::size_t i = 0; i < 2; ++i) {
      Vector<double, 3> col{inv_root(0, i), inv_root(1, i), inv_root(2, i)};
      for (std::size_t j = 0; j < i; ++j) {
        const double proj = linalg::inner(basis[j], col);
        for (std::size_t r = 0; r < 3; ++r) col[r] -= proj * basis[j][r];
      }
      const double len = std::sqrt(linalg::norm2(col));
      for (double& v : col) v /= len;
      basis[i] = col;
    }
    const auto y3 = uniform_in_ball(2, std::sqrt(1.0 - z2), rng);
    for (std::size_t r = 0; r < 3; ++r) z[r] += y3[0] * basis[0][r] + y3[1] * basis[1][r];
    const Vector<double, 3> x3 = root * z;
    const double scale = std::sqrt(1.0 - f);
    // Step 7: back from the A-form to Q.
    return ChannelParams{SpaceKind::general_real, a, f, x2[0], x1, scale * x3[0], x2[1],
                         scale * x3[1]};
  }
  throw DiagnosticError("literal sampler: iteration cap exceeded");
}

ChannelParams sample_fiber(SpaceKind k, double a, std::optional<double> f, RngStream& rng,
                           LayeredDiagnostics* diag) {
  require_positive_fiber(k, a, f);
  LayeredDiagnostics local;
  LayeredDiagnostics& d = diag ? *diag : local;
  switch (k) {
    case SpaceKind::general_real: return layered_general<double>(k, a, *f, rng, d);
    case SpaceKind::general_complex: return layered_general<cplx>(k, a, *f, rng, d);
    case SpaceKind::unital_real: return layered_unital<double>(k, a, rng, d);
    case SpaceKind::unital_complex: return layered_unital<cplx>(k, a, rng, d);
  }
  throw UsageError("unknown space kind");
}

ChannelParams sample_global(SpaceKind k, GlobalMode gmode, SamplerMode smode, RngStream& rng) {
  if (smode == SamplerMode::paper_literal && k != SpaceKind::general_real)
    throw UsageError("the literal sampler is only defined for general-real channels");
  const bool unital = is_unital(k);
  const double envelope = 1.01 * fiber_volume_grid_max(k);
  for (std::uint64_t it = 0; it < kLayerIterationCap; ++it) {
    const double a = rng.uniform();
    const std::optional<double> f =
        unital ? std::nullopt : std::optional<double>(rng.uniform());
    const double v = fiber_volume(k, a, f);
    if (v <= 0.0) continue;
    if (gmode == GlobalMode::density_af && !(rng.uniform() * envelope < v)) continue;
    if (smode == SamplerMode::paper_literal) return sample_fiber_literal(a, *f, rng);
    return sample_fiber(k, a, f, rng);
  }
  throw DiagnosticError("sample_global: classical-channel draw cap exceeded");
}

std::vector<ChannelParams> sample_fiber_batch(SpaceKind k, double a, std::optional<double> f,
                                              std::size_t n, std::uint64_t seed,
                                              SamplerMode smode, Step3Radius radius) {
  if (smode == SamplerMode::paper_literal && k != SpaceKind::general_real)
    throw UsageError("the literal sampler is only defined for general-real channels");
  require_positive_fiber(k, a, f);
  std::vector<ChannelParams> out(n);
  const RngStream master(seed);
  parallel_for(n, [&](std::size_t i) {
    RngStream rng = master.substream(i);
    out[i] = smode == SamplerMode::paper_literal
                 ? sample_fiber_literal(a, *f, rng, nullptr, radius)
                 : sample_fiber(k, a, f, rng);
  });
  return out;
}

std::vector<ChannelParams> sample_global_batch(SpaceKind k, GlobalMode gmode, SamplerMode smode,
                                               std::size_t n, std::uint64_t seed) {
  std::vector<ChannelParams> out(n);
  const RngStream master(seed);
  (void)fiber_volume_grid_max(k);  // build the envelope cache before fanning out
  parallel_for(n, [&](std::size_t i) {
    RngStream rng = master.substream(i);
    out[i] = sample_global(k, gmode, smode, rng);
  });
  return out;
}

}  // namespace qcl
