#pragma once

// Empirical distribution tools and the contraction-coefficient experiments.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qcl/channel.hpp"
#include "qcl/sampler.hpp"

namespace qcl {

class EmpiricalCdf {
 public:
  /// Throws UsageError on an empty sample.
  explicit EmpiricalCdf(std::vector<double> samples);

  /// #{values <= x} / n.
  double operator()(double x) const;
  const std::vector<double>& values() const { return values_; }
  std::size_t n() const { return values_.size(); }

 private:
  std::vector<double> values_;
};

EmpiricalCdf ecdf(std::vector<double> samples);

/// Pointwise band on the distinct sample values.
struct ConfidenceBand {
  std::vector<double> x;
  std::vector<double> F;
  std::vector<double> lower;
  std::vector<double> upper;
  double alpha = 0.0;
};

/// Standard normal quantile, p in (0,1). Rational approximation refined by
/// one Halley step on erfc; relative error below 1e-13 in the tails used here.
double normal_quantile(double p);

/// F +- z_{1-alpha/2} sqrt(F(1-F)/n), clipped to [0,1]. Requires n >= 2.
ConfidenceBand greenwood_band(const EmpiricalCdf& cdf, double alpha);

/// Center of the tallest bin of a `bins`-bin histogram on [min, max] after a
/// centered moving average of odd width `window` (truncated at the edges).
/// Ties go to the smaller center. A constant sample returns its value.
double mode_estimate(const std::vector<double>& samples, std::size_t bins = 50,
                     std::size_t window = 5);

/// min(|2a-1|, min(samples)).
double infimum_estimate(const std::vector<double>& samples, double a);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic Q_KS p-value.
KsResult ks_two_sample(std::vector<double> x, std::vector<double> y);

struct ProfileRow {
  double a = 0.0;
  bool empty = false;  // endpoints a = 0, 1 carry no statistics
  double inf_est = 0.0;
  double mode_est = 0.0;
  double mean_est = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
};

/// Tolerance of the hard check |2a-1| <= eta <= 1 (|a-f| for general kinds).
inline constexpr double kEtaCheckTolerance = 1e-10;

/// Coefficients of n fiber samples, sample i from RngStream(seed).substream(i).
std::vector<double> fiber_etas(SpaceKind k, double a, std::optional<double> f, std::size_t n,
                               std::uint64_t seed);

/// Rows for a = i/grid, i = 0..grid. Point i draws from the layered sampler
/// seeded with RngStream(seed).substream(i).key().
std::vector<ProfileRow> eta_profile(SpaceKind k, std::size_t grid, std::size_t n_per_point,
                                    double alpha, std::uint64_t seed);

std::pair<EmpiricalCdf, ConfidenceBand> eta_cdf_experiment(SpaceKind k, std::size_t n,
                                                           double alpha, std::uint64_t seed,
                                                           GlobalMode gmode);

/// `comment` is written verbatim after "# " on the first line.
void write_ecdf_csv(std::ostream& os, const ConfidenceBand& band, const std::string& comment);
void write_profile_csv(std::ostream& os, const std::vector<ProfileRow>& rows,
                       const std::string& comment);

}  // namespace qcl
