#pragma once

// Fixed-size dense matrices over double or std::complex<double>, sized for
// qubit channel work (N <= 4). Everything is header-only and constexpr-sized.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <type_traits>
#include <utility>

namespace qcl {

using cplx = std::complex<double>;

namespace linalg {

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};
template <class T>
inline constexpr bool is_complex_v = is_complex<T>::value;

inline double conj(double x) { return x; }
inline cplx conj(const cplx& z) { return std::conj(z); }
inline double real(double x) { return x; }
inline double real(const cplx& z) { return z.real(); }
inline double imag(double) { return 0.0; }
inline double imag(const cplx& z) { return z.imag(); }
inline double abs2(double x) { return x * x; }
inline double abs2(const cplx& z) { return std::norm(z); }

template <class T, std::size_t N>
using Vector = std::array<T, N>;

template <class T, std::size_t N>
struct Matrix {
  std::array<T, N * N> data{};

  static constexpr std::size_t size() { return N; }

  T& operator()(std::size_t i, std::size_t j) { return data[i * N + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data[i * N + j]; }

  static Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix diagonal(const std::array<double, N>& d) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = T(d[i]);
    return m;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

template <class T, std::size_t N>
Matrix<T, N> operator*(const Matrix<T, N>& x, const Matrix<T, N>& y) {
  Matrix<T, N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k) {
      const T xik = x(i, k);
      for (std::size_t j = 0; j < N; ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}

template <class T, std::size_t N>
Vector<T, N> operator*(const Matrix<T, N>& m, const Vector<T, N>& v) {
  Vector<T, N> r{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r[i] += m(i, j) * v[j];
  return r;
}

template <class T, std::size_t N>
Matrix<T, N> operator+(Matrix<T, N> x, const Matrix<T, N>& y) {
  for (std::size_t i = 0; i < N * N; ++i) x.data[i] += y.data[i];
  return x;
}

template <class T, std::size_t N>
Matrix<T, N> operator-(Matrix<T, N> x, const Matrix<T, N>& y) {
  for (std::size_t i = 0; i < N * N; ++i) x.data[i] -= y.data[i];
  return x;
}

template <class T, std::size_t N, class S>
Matrix<T, N> scaled(Matrix<T, N> x, S s) {
  for (auto& v : x.data) v *= s;
  return x;
}

template <class T, std::size_t N>
Matrix<T, N> adjoint(const Matrix<T, N>& m) {
  Matrix<T, N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r(i, j) = conj(m(j, i));
  return r;
}

template <class T, std::size_t N>
bool is_self_adjoint(const Matrix<T, N>& m) {
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i; j < N; ++j)
      if (m(i, j) != conj(m(j, i))) return false;
  return true;
}

/// Upper-left K x K block.
template <std::size_t K, class T, std::size_t N>
Matrix<T, K> leading(const Matrix<T, N>& m) {
  static_assert(K <= N);
  Matrix<T, K> r;
  for (std::size_t i = 0; i < K; ++i)
    for (std::size_t j = 0; j < K; ++j) r(i, j) = m(i, j);
  return r;
}

template <class T, std::size_t N>
T trace(const Matrix<T, N>& m) {
  T t{};
  for (std::size_t i = 0; i < N; ++i) t += m(i, i);
  return t;
}

template <class T, std::size_t N>
double max_abs_entry(const Matrix<T, N>& m) {
  double r = 0.0;
  for (const auto& v : m.data) r = std::max(r, std::abs(v));
  return r;
}

/// <u, v> = sum conj(u_i) v_i.
template <class T, std::size_t N>
T inner(const Vector<T, N>& u, const Vector<T, N>& v) {
  T s{};
  for (std::size_t i = 0; i < N; ++i) s += conj(u[i]) * v[i];
  return s;
}

template <class T, std::size_t N>
double norm2(const Vector<T, N>& v) {
  double s = 0.0;
  for (const auto& x : v) s += abs2(x);
  return s;
}

/// Determinant by Gaussian elimination with partial pivoting.
template <class T, std::size_t N>
T determinant(Matrix<T, N> m) {
  T det(1);
  for (std::size_t col = 0; col < N; ++col) {
    std::size_t piv = col;
    double best = std::abs(m(col, col));
    for (std::size_t r = col + 1; r < N; ++r) {
      if (std::abs(m(r, col)) > best) {
        best = std::abs(m(r, col));
        piv = r;
      }
    }
    if (best == 0.0) return T(0);
    if (piv != col) {
      for (std::size_t j = 0; j < N; ++j) std::swap(m(col, j), m(piv, j));
      det = -det;
    }
    const T p = m(col, col);
    det *= p;
    for (std::size_t r = col + 1; r < N; ++r) {
      const T factor = m(r, col) / p;
      if (factor == T(0)) continue;
      for (std::size_t j = col; j < N; ++j) m(r, j) -= factor * m(col, j);
    }
  }
  return det;
}

/// Real part of the determinant of the leading k x k block, k = 1..N.
template <class T, std::size_t N>
double leading_minor(const Matrix<T, N>& m, std::size_t k) {
  switch (k) {
    case 1: return real(m(0, 0));
    case 2: return real(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
    default: break;
  }
  if constexpr (N >= 3) {
    if (k == 3) return real(determinant(leading<3>(m)));
  }
  if constexpr (N >= 4) {
    if (k == 4) return real(determinant(leading<4>(m)));
  }
  return real(determinant(m));
}

/// Determinant of the principal submatrix selected by the bit mask.
template <class T, std::size_t N>
double principal_minor(const Matrix<T, N>& m, unsigned mask) {
  std::array<std::size_t, N> idx{};
  std::size_t k = 0;
  for (std::size_t i = 0; i < N; ++i)
    if (mask & (1u << i)) idx[k++] = i;
  switch (k) {
    case 0: return 1.0;
    case 1: return real(m(idx[0], idx[0]));
    case 2:
      return real(m(idx[0], idx[0]) * m(idx[1], idx[1]) - m(idx[0], idx[1]) * m(idx[1], idx[0]));
    case 3: {
      Matrix<T, 3> s;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) s(i, j) = m(idx[i], idx[j]);
      return real(determinant(s));
    }
    default:
      if constexpr (N >= 4) {
        Matrix<T, 4> s;
        for (std::size_t i = 0; i < 4; ++i)
          for (std::size_t j = 0; j < 4; ++j) s(i, j) = m(idx[i], idx[j]);
        return real(determinant(s));
      }
      return real(determinant(m));
  }
}

template <class T, std::size_t N>
Matrix<T, N> inverse(const Matrix<T, N>& m) {
  // Gauss-Jordan with partial pivoting.
  Matrix<T, N> a = m;
  Matrix<T, N> inv = Matrix<T, N>::identity();
  for (std::size_t col = 0; col < N; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < N; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    for (std::size_t j = 0; j < N; ++j) {
      std::swap(a(col, j), a(piv, j));
      std::swap(inv(col, j), inv(piv, j));
    }
    const T p = a(col, col);
    for (std::size_t j = 0; j < N; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t r = 0; r < N; ++r) {
      if (r == col) continue;
      const T factor = a(r, col);
      if (factor == T(0)) continue;
      for (std::size_t j = 0; j < N; ++j) {
        a(r, j) -= factor * a(col, j);
        inv(r, j) -= factor * inv(col, j);
      }
    }
  }
  return inv;
}

template <class T, std::size_t N>
struct EigenDecomposition {
  std::array<double, N> values{};  // ascending
  Matrix<T, N> vectors;            // columns are eigenvectors
};

/// Cyclic Jacobi eigensolver for self-adjoint matrices. Complex off-diagonal
/// entries are first rotated onto the real axis by a diagonal phase, then a
/// real Givens rotation annihilates them.
template <class T, std::size_t N>
EigenDecomposition<T, N> eigh(Matrix<T, N> a) {
  Matrix<T, N> v = Matrix<T, N>::identity();
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    double diag = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      diag += abs2(a(i, i));
      for (std::size_t j = i + 1; j < N; ++j) off += abs2(a(i, j));
    }
    if (off <= 1e-32 * diag || off == 0.0) break;
    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        const T phase = a(p, q) / mag;  // a_pq = mag * phase
        const double app = real(a(p, p));
        const double aqq = real(a(q, q));
        const double theta = 0.5 * (aqq - app) / mag;
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // J = diag(.., 1 @p, conj(phase) @q, ..) * Givens(c, s)
        const T jpp = T(c), jpq = T(s);
        const T jqp = -s * conj(phase), jqq = c * conj(phase);
        // a <- a * J (columns p, q)
        for (std::size_t k = 0; k < N; ++k) {
          const T akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
          const T vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
        // a <- J^* * a (rows p, q)
        for (std::size_t k = 0; k < N; ++k) {
          const T apk = a(p, k), aqk = a(q, k);
          a(p, k) = conj(jpp) * apk + conj(jqp) * aqk;
          a(q, k) = conj(jpq) * apk + conj(jqq) * aqk;
        }
        a(p, q) = T(0);
        a(q, p) = T(0);
        a(p, p) = T(real(a(p, p)));
        a(q, q) = T(real(a(q, q)));
      }
    }
  }
  std::array<std::size_t, N> order{};
  for (std::size_t i = 0; i < N; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return real(a(x, x)) < real(a(y, y)); });
  EigenDecomposition<T, N> out;
  for (std::size_t i = 0; i < N; ++i) {
    out.values[i] = real(a(order[i], order[i]));
    for (std::size_t k = 0; k < N; ++k) out.vectors(k, i) = v(k, order[i]);
  }
  return out;
}

/// f(M) = V diag(fn(lambda)) V^* for a self-adjoint M.
template <class T, std::size_t N, class Fn>
Matrix<T, N> spectral_apply(const Matrix<T, N>& m, Fn fn) {
  const auto ed = eigh(m);
  Matrix<T, N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      T s{};
      for (std::size_t k = 0; k < N; ++k)
        s += ed.vectors(i, k) * fn(ed.values[k]) * conj(ed.vectors(j, k));
      r(i, j) = s;
    }
  return r;
}

/// Principal square root of a positive semidefinite matrix (negative
/// rounding-level eigenvalues are clamped to zero).
template <class T, std::size_t N>
Matrix<T, N> sqrtm_psd(const Matrix<T, N>& m) {
  return spectral_apply(m, [](double l) { return std::sqrt(std::max(l, 0.0)); });
}

/// Inverse principal square root of a positive definite matrix.
template <class T, std::size_t N>
Matrix<T, N> inv_sqrtm_pd(const Matrix<T, N>& m) {
  return spectral_apply(m, [](double l) { return 1.0 / std::sqrt(l); });
}

}  // namespace linalg
}  // namespace qcl
