#pragma once

#include <algorithm>
#include <cmath>

namespace qcl {

namespace detail {
template <class T, std::size_t N>
double minor_scale(const linalg::Matrix<T, N>& m) {
  const double s = std::max(1.0, linalg::max_abs_entry(m));
  return s * s * s * s;
}
}  // namespace detail

template <class T, std::size_t N>
bool is_psd(const linalg::Matrix<T, N>& m, double tol) {
  const double thresh = tol * detail::minor_scale(m);
  bool degenerate = false;
  for (std::size_t k = 1; k <= N; ++k) {
    const double mk = linalg::leading_minor(m, k);
    if (mk < -thresh) return false;
    if (mk <= thresh) degenerate = true;
  }
  if (!degenerate) return true;
  for (unsigned mask = 1; mask < (1u << N); ++mask)
    if (linalg::principal_minor(m, mask) < -thresh) return false;
  return true;
}

template <class T, std::size_t N>
bool is_pd(const linalg::Matrix<T, N>& m, double tol) {
  const double thresh = tol * detail::minor_scale(m);
  for (std::size_t k = 1; k <= N; ++k)
    if (!(linalg::leading_minor(m, k) > thresh)) return false;
  return true;
}

}  // namespace qcl
