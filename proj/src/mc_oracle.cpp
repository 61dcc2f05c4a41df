#include "qcl/mc_oracle.hpp"

#include <atomic>
#include <cmath>
#include <vector>

#include "qcl/errors.hpp"
#include "qcl/exact_volume.hpp"
#include "qcl/parallel.hpp"

namespace qcl {

namespace {

double scalar_measure(SpaceKind k, double r) {
  const double side = 2.0 * r;
  return is_complex(k) ? side * side : side;
}

bool strictly_inside(SpaceKind k, const cplx& z, double r) {
  if (is_complex(k)) return std::abs(z.real()) < r && std::abs(z.imag()) < r;
  return std::abs(z.real()) < r && z.imag() == 0.0;
}

cplx draw_scalar(SpaceKind k, double r, RngStream& rng) {
  if (is_complex(k)) {
    const double re = rng.uniform(-r, r);
    return {re, rng.uniform(-r, r)};
  }
  return {rng.uniform(-r, r), 0.0};
}

void check_fiber_args(SpaceKind k, double a, std::optional<double> f) {
  // fiber_volume performs the usage and range checks.
  (void)fiber_volume(k, a, f);
}

template <class T>
linalg::Matrix<T, 4> choi_entries(const ChannelParams& p) {
  auto s = [](const cplx& z) -> T {
    if constexpr (linalg::is_complex_v<T>) return z;
    else return z.real();
  };
  const bool unital = is_unital(p.kind);
  const double f = unital ? 1.0 - p.a : p.f;
  const T b = s(p.b), c = s(p.c), d = s(p.d), e = s(p.e), g = unital ? -s(p.b) : s(p.g);
  using linalg::conj;
  linalg::Matrix<T, 4> m;
  m(0, 0) = p.a;      m(0, 1) = b;         m(0, 2) = c;       m(0, 3) = d;
  m(1, 0) = conj(b);  m(1, 1) = 1.0 - p.a; m(1, 2) = e;       m(1, 3) = -c;
  m(2, 0) = conj(c);  m(2, 1) = conj(e);   m(2, 2) = f;       m(2, 3) = g;
  m(3, 0) = conj(d);  m(3, 1) = -conj(c);  m(3, 2) = conj(g); m(3, 3) = 1.0 - f;
  return m;
}

VolumeEstimate hit_or_miss(const ParamBox& box, std::uint64_t n, std::uint64_t seed) {
  if (n < 10'000) throw DomainError("Monte-Carlo volume estimates need n >= 10^4 samples");
  const RngStream master(seed);
  std::atomic<std::uint64_t> hits{0};
  parallel_for_chunks(n, [&](std::size_t begin, std::size_t end) {
    std::uint64_t local = 0;
    for (std::size_t i = begin; i < end; ++i) {
      RngStream rng = master.substream(i);
      if (params_psd(draw_in_box(box, rng))) ++local;
    }
    hits += local;
  });
  const double scale = box.measure() * embedding_factor(box.kind);
  const double p = static_cast<double>(hits.load()) / static_cast<double>(n);
  VolumeEstimate out;
  out.n = n;
  out.hits = hits.load();
  out.mean = scale * p;
  out.std_error = scale * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  return out;
}

}  // namespace

double ParamBox::measure() const {
  double m = scalar_measure(kind, b) * scalar_measure(kind, c) * scalar_measure(kind, d) *
             scalar_measure(kind, e);
  if (!is_unital(kind)) m *= scalar_measure(kind, g);
  if (!fiber) {
    m *= a.length();
    if (!is_unital(kind)) m *= f.length();
  }
  return m;
}

bool ParamBox::strictly_contains(const ChannelParams& p) const {
  if (fiber) {
    if (p.a != a.lo) return false;
    if (!is_unital(kind) && p.f != f.lo) return false;
  } else {
    if (!(p.a > a.lo && p.a < a.hi)) return false;
    if (!is_unital(kind) && !(p.f > f.lo && p.f < f.hi)) return false;
  }
  if (!strictly_inside(kind, p.b, b) || !strictly_inside(kind, p.c, c) ||
      !strictly_inside(kind, p.d, d) || !strictly_inside(kind, p.e, e))
    return false;
  return is_unital(kind) || strictly_inside(kind, p.g, g);
}

ParamBox param_box(SpaceKind k) {
  ParamBox box;
  box.kind = k;
  box.b = 0.5;  // |b|^2 <= a(1-a) <= 1/4
  box.c = 0.5;  // |c|^2 <= min(af, (1-a)(1-f)) <= 1/4
  box.d = 1.0;  // |d|^2 <= a(1-f)
  box.e = 1.0;  // |e|^2 <= (1-a)f
  box.g = is_unital(k) ? 0.0 : 0.5;
  return box;
}

ParamBox fiber_box(SpaceKind k, double a, std::optional<double> f) {
  check_fiber_args(k, a, f);
  ParamBox box;
  box.kind = k;
  box.fiber = true;
  box.a = {a, a};
  if (is_unital(k)) {
    box.f = {1.0 - a, 1.0 - a};
    box.b = std::sqrt(a * (1.0 - a));
    box.c = box.b;
    box.d = a;
    box.e = 1.0 - a;
    return box;
  }
  const double ff = *f;
  box.f = {ff, ff};
  box.b = std::sqrt(a * (1.0 - a));
  box.c = std::sqrt(std::min(a * ff, (1.0 - a) * (1.0 - ff)));
  box.d = std::sqrt(a * (1.0 - ff));
  box.e = std::sqrt((1.0 - a) * ff);
  box.g = std::sqrt(ff * (1.0 - ff));
  return box;
}

double embedding_factor(SpaceKind k) { return is_complex(k) ? 128.0 : 16.0; }

ChannelParams draw_in_box(const ParamBox& box, RngStream& rng) {
  ChannelParams p;
  p.kind = box.kind;
  const bool unital = is_unital(box.kind);
  p.a = box.fiber ? box.a.lo : rng.uniform(box.a.lo, box.a.hi);
  if (unital) p.f = 1.0 - p.a;
  else p.f = box.fiber ? box.f.lo : rng.uniform(box.f.lo, box.f.hi);
  p.b = draw_scalar(box.kind, box.b, rng);
  p.c = draw_scalar(box.kind, box.c, rng);
  p.d = draw_scalar(box.kind, box.d, rng);
  p.e = draw_scalar(box.kind, box.e, rng);
  p.g = unital ? -p.b : draw_scalar(box.kind, box.g, rng);
  return p;
}

bool params_psd(const ChannelParams& p) {
  if (is_complex(p.kind)) return is_psd(choi_entries<cplx>(p));
  return is_psd(choi_entries<double>(p));
}

VolumeEstimate estimate_total_volume(SpaceKind k, std::uint64_t n, std::uint64_t seed) {
  return hit_or_miss(param_box(k), n, seed);
}

VolumeEstimate estimate_fiber_volume(SpaceKind k, double a, std::optional<double> f,
                                     std::uint64_t n, std::uint64_t seed) {
  return hit_or_miss(fiber_box(k, a, f), n, seed);
}

ChannelParams oracle_sample_fiber(SpaceKind k, double a, std::optional<double> f,
                                  RngStream& rng) {
  if (fiber_volume(k, a, f) <= 0.0)
    throw DomainError("oracle_sample_fiber: the fiber has zero volume");
  const ParamBox box = fiber_box(k, a, f);
  for (std::uint64_t it = 0; it < kOracleIterationCap; ++it) {
    ChannelParams p = draw_in_box(box, rng);
    if (params_psd(p)) return p;
  }
  throw DiagnosticError("oracle_sample_fiber: no valid channel within " +
                        std::to_string(kOracleIterationCap) + " draws (a=" +
                        format_double(a) + ")");
}

ChannelParams oracle_sample_fiber(SpaceKind k, double a, std::optional<double> f,
                                  std::uint64_t seed) {
  RngStream rng(seed);
  return oracle_sample_fiber(k, a, f, rng);
}

}  // namespace qcl
