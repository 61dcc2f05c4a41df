#include "qcl/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "qcl/contraction.hpp"
#include "qcl/errors.hpp"
#include "qcl/rng.hpp"

namespace qcl {

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : values_(std::move(samples)) {
  if (values_.empty()) throw UsageError("empirical CDF of an empty sample");
  std::sort(values_.begin(), values_.end());
}

double EmpiricalCdf::operator()(double x) const {
  const auto it = std::upper_bound(values_.begin(), values_.end(), x);
  return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
}

EmpiricalCdf ecdf(std::vector<double> samples) { return EmpiricalCdf(std::move(samples)); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("normal_quantile: p must lie in (0,1)");
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (p < p_low || p > 1.0 - p_low) {
    const double q = std::sqrt(-2.0 * std::log(p < p_low ? p : 1.0 - p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    if (p > 1.0 - p_low) x = -x;
  } else {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  // Halley step on Phi(x) - p; the upper tail is refined through the
  // complement to avoid cancellation.
  const double sqrt_2pi = std::sqrt(2.0 * M_PI);
  const double err = p > 0.5 ? (1.0 - p) - 0.5 * std::erfc(x / std::sqrt(2.0))
                             : 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = err * sqrt_2pi * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

ConfidenceBand greenwood_band(const EmpiricalCdf& cdf, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
  if (cdf.n() < 2) throw UsageError("confidence band needs at least two samples");
  const double z = normal_quantile(1.0 - 0.5 * alpha);
  const double n = static_cast<double>(cdf.n());
  const auto& v = cdf.values();
  ConfidenceBand band;
  band.alpha = alpha;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i + 1 < v.size() && v[i + 1] == v[i]) continue;  // last copy of a tie carries F
    const double F = static_cast<double>(i + 1) / n;
    const double half = z * std::sqrt(F * (1.0 - F) / n);
    band.x.push_back(v[i]);
    band.F.push_back(F);
    band.lower.push_back(std::clamp(F - half, 0.0, 1.0));
    band.upper.push_back(std::clamp(F + half, 0.0, 1.0));
  }
  return band;
}

double mode_estimate(const std::vector<double>& samples, std::size_t bins, std::size_t window) {
  if (samples.empty()) throw UsageError("mode of an empty sample");
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  const double lo = *lo_it, hi = *hi_it;
  if (lo == hi) return lo;
  if (samples.size() < 50) throw UsageError("mode estimate needs at least 50 samples");
  if (bins < 10) throw UsageError("mode estimate needs at least 10 bins");
  if (window % 2 == 0) throw UsageError("smoothing window must be odd");
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<double> count(bins, 0.0);
  for (double x : samples) {
    auto i = static_cast<std::size_t>((x - lo) / width);
    count[std::min(i, bins - 1)] += 1.0;
  }
  const std::size_t half = window / 2;
  std::size_t best = 0;
  double best_value = -1.0;
  for (std::size_t i = 0; i < bins; ++i) {
    const std::size_t from = i >= half ? i - half : 0;
    const std::size_t to = std::min(bins - 1, i + half);
    double sum = 0.0;
    for (std::size_t j = from; j <= to; ++j) sum += count[j];
    const double smoothed = sum / static_cast<double>(to - from + 1);
    if (smoothed > best_value) {
      best_value = smoothed;
      best = i;
    }
  }
  return lo + (static_cast<double>(best) + 0.5) * width;
}

double infimum_estimate(const std::vector<double>& samples, double a) {
  if (samples.empty()) throw UsageError("infimum of an empty sample");
  return std::min(std::abs(2.0 * a - 1.0), *std::min_element(samples.begin(), samples.end()));
}

namespace {

double kolmogorov_q(double lambda) {
  if (lambda < 1e-3) return 1.0;
  double sum = 0.0, sign = 1.0, prev = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = sign * std::exp(-2.0 * j * j * lambda * lambda);
    sum += term;
    if (std::abs(term) <= 1e-10 * prev || std::abs(term) <= 1e-14 * sum) return std::clamp(2.0 * sum, 0.0, 1.0);
    sign = -sign;
    prev = std::abs(term);
  }
  return 1.0;  // series failed to converge: lambda is tiny
}

}  // namespace

KsResult ks_two_sample(std::vector<double> x, std::vector<double> y) {
  if (x.empty() || y.empty()) throw UsageError("KS test needs two nonempty samples");
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size()), ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double dmax = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= t) ++i;
    while (j < y.size() && y[j] <= t) ++j;
    dmax = std::max(dmax, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  const double ne = std::sqrt(nx * ny / (nx + ny));
  return {dmax, kolmogorov_q((ne + 0.12 + 0.11 / ne) * dmax)};
}

namespace {

void check_eta_range(double eta, double lower) {
  if (!(eta >= lower - kEtaCheckTolerance && eta <= 1.0 + kEtaCheckTolerance))
    throw DiagnosticError("contraction coefficient " + format_double(eta) +
                          " outside [" + format_double(lower) + ", 1]");
}

}  // namespace

std::vector<double> fiber_etas(SpaceKind k, double a, std::optional<double> f, std::size_t n,
                               std::uint64_t seed) {
  const auto channels = sample_fiber_batch(k, a, f, n, seed);
  std::vector<double> etas(n);
  for (std::size_t i = 0; i < n; ++i) {
    etas[i] = eta_of(channels[i]);
    check_eta_range(etas[i], std::abs(channels[i].a - channels[i].f));
  }
  return etas;
}

std::vector<ProfileRow> eta_profile(SpaceKind k, std::size_t grid, std::size_t n_per_point,
                                    double alpha, std::uint64_t seed) {
  if (!is_unital(k)) throw UsageError("the eta profile is defined over unital kinds");
  if (grid < 2) throw UsageError("profile grid must have at least 2 intervals");
  if (n_per_point < 50) throw UsageError("profile needs at least 50 samples per point");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
  const double z = normal_quantile(1.0 - 0.5 * alpha);
  const RngStream master(seed);
  std::vector<ProfileRow> rows(grid + 1);
  for (std::size_t i = 0; i <= grid; ++i) {
    ProfileRow& row = rows[i];
    row.a = static_cast<double>(i) / static_cast<double>(grid);
    if (i == 0 || i == grid) {
      row.empty = true;
      continue;
    }
    const auto etas = fiber_etas(k, row.a, std::nullopt, n_per_point, master.substream(i).key());
    const double n = static_cast<double>(etas.size());
    const double mean = std::accumulate(etas.begin(), etas.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : etas) ss += (x - mean) * (x - mean);
    const double half = z * std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    row.inf_est = infimum_estimate(etas, row.a);
    row.mode_est = mode_estimate(etas);
    row.mean_est = mean;
    row.ci_lo = mean - half;
    row.ci_hi = mean + half;
  }
  return rows;
}

std::pair<EmpiricalCdf, ConfidenceBand> eta_cdf_experiment(SpaceKind k, std::size_t n,
                                                           double alpha, std::uint64_t seed,
                                                           GlobalMode gmode) {
  if (n < 100) throw UsageError("the CDF experiment needs n >= 100");
  const auto channels = sample_global_batch(k, gmode, SamplerMode::layered_exact, n, seed);
  std::vector<double> etas(n);
  for (std::size_t i = 0; i < n; ++i) {
    etas[i] = eta_of(channels[i]);
    check_eta_range(etas[i], std::abs(channels[i].a - channels[i].f));
  }
  EmpiricalCdf cdf(std::move(etas));
  ConfidenceBand band = greenwood_band(cdf, alpha);
  return {std::move(cdf), std::move(band)};
}

void write_ecdf_csv(std::ostream& os, const ConfidenceBand& band, const std::string& comment) {
  os << "# " << comment << '\n' << "x,F,lo,hi\n";
  for (std::size_t i = 0; i < band.x.size(); ++i)
    os << format_double(band.x[i]) << ',' << format_double(band.F[i]) << ','
       << format_double(band.lower[i]) << ',' << format_double(band.upper[i]) << '\n';
}

void write_profile_csv(std::ostream& os, const std::vector<ProfileRow>& rows,
                       const std::string& comment) {
  os << "# " << comment << '\n' << "a,inf,mode,mean,ci_lo,ci_hi\n";
  for (const ProfileRow& r : rows) {
    os << format_double(r.a);
    if (r.empty) {
      os << ",,,,,\n";
      continue;
    }
    for (double v : {r.inf_est, r.mode_est, r.mean_est, r.ci_lo, r.ci_hi}) os << ',' << format_double(v);
    os << '\n';
  }
}

}  // namespace qcl
