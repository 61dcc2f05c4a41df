#pragma once

// Brute-force rejection estimators of channel volumes and an exactly uniform
// (slow) fiber sampler. These are the ground truth the fast sampler and the
// closed forms are checked against.

#include <cstdint>
#include <optional>

#include "qcl/channel.hpp"
#include "qcl/rng.hpp"

namespace qcl {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

/// Axis-aligned box around the valid parameter set. Scalars b..g are boxed by
/// a radius r: the interval [-r, r] for real kinds, the square [-r, r]^2 for
/// complex kinds. For unital kinds f and g are not coordinates.
struct ParamBox {
  SpaceKind kind = SpaceKind::general_real;
  bool fiber = false;  // a (and f) fixed at a.lo (f.lo)
  Interval a{0.0, 1.0};
  Interval f{0.0, 1.0};
  double b = 0.0, c = 0.0, d = 0.0, e = 0.0, g = 0.0;

  /// Lebesgue measure of the box in its free coordinates.
  double measure() const;
  /// True when every coordinate of p lies strictly inside the box.
  bool strictly_contains(const ChannelParams& p) const;
};

ParamBox param_box(SpaceKind k);
/// Box for the fiber over (a, f): radii from the 2x2 principal minors at the
/// fixed diagonal, e.g. |b|^2 <= a(1-a), |d|^2 <= a(1-f).
ParamBox fiber_box(SpaceKind k, double a, std::optional<double> f = std::nullopt);

/// Ratio between the Lebesgue measure of the free parameters and the induced
/// Euclidean measure on the matrix-entry space: 2^4 for real, 2^7 for complex.
double embedding_factor(SpaceKind k);

struct VolumeEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n = 0;
  std::uint64_t hits = 0;
};

/// Uniform point of the box. Sample i of every estimator below is drawn from
/// RngStream(seed).substream(i).
ChannelParams draw_in_box(const ParamBox& box, RngStream& rng);

/// True when the Choi matrix built from p (no range validation) is PSD.
bool params_psd(const ChannelParams& p);

/// Hit-or-miss estimate over param_box(k). Requires n >= 10^4.
VolumeEstimate estimate_total_volume(SpaceKind k, std::uint64_t n, std::uint64_t seed);

/// Hit-or-miss estimate of fiber_volume(k, a, f) over fiber_box(k, a, f).
/// The fiber density is taken with respect to da (df), so the scale is the
/// full embedding factor; the fixed diagonal coordinates contribute no
/// separate factor.
VolumeEstimate estimate_fiber_volume(SpaceKind k, double a, std::optional<double> f,
                                     std::uint64_t n, std::uint64_t seed);

inline constexpr std::uint64_t kOracleIterationCap = 10'000'000;

/// Exactly uniform point of the fiber by rejection from fiber_box. Throws
/// DomainError for zero-volume fibers and DiagnosticError past the cap.
ChannelParams oracle_sample_fiber(SpaceKind k, double a, std::optional<double> f,
                                  RngStream& rng);
ChannelParams oracle_sample_fiber(SpaceKind k, double a, std::optional<double> f,
                                  std::uint64_t seed);

}  // namespace qcl
