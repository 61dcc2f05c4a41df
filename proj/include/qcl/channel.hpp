#pragma once

// Qubit channels in Choi form.
//
// A channel Q acts on a 2x2 matrix rho by
//   rho -> rho11 Q11 + rho12 Q12 + rho21 Q21 + rho22 Q22
// where Qij are the 2x2 blocks of its 4x4 Choi matrix. General channels are
// parametrized by a, f in [0,1] and scalars b, c, d, e, g:
//
//   [ a     b     c     d   ]
//   [ b*   1-a    e    -c   ]
//   [ c*    e*    f     g   ]
//   [ d*   -c*    g*   1-f  ]
//
// Unital channels additionally satisfy Q11 + Q22 = I, i.e. f = 1-a, g = -b.

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include "qcl/linalg.hpp"

namespace qcl {

enum class SpaceKind { general_real, general_complex, unital_real, unital_complex };

inline constexpr std::array<SpaceKind, 4> kAllSpaceKinds = {
    SpaceKind::general_real, SpaceKind::general_complex, SpaceKind::unital_real,
    SpaceKind::unital_complex};

constexpr bool is_unital(SpaceKind k) {
  return k == SpaceKind::unital_real || k == SpaceKind::unital_complex;
}
constexpr bool is_complex(SpaceKind k) {
  return k == SpaceKind::general_complex || k == SpaceKind::unital_complex;
}

std::string_view to_string(SpaceKind k);
/// Accepts "general-real", "general-complex", "unital-real", "unital-complex".
SpaceKind parse_space_kind(std::string_view name);

using Mat2 = linalg::Matrix<cplx, 2>;
using Mat4 = linalg::Matrix<cplx, 4>;
using RealMat3 = linalg::Matrix<double, 3>;

/// Free parameters of a channel. For unital kinds f and g are not free; they
/// are kept equal to 1-a and -b.
struct ChannelParams {
  SpaceKind kind = SpaceKind::general_real;
  double a = 0.0;
  double f = 0.0;
  cplx b, c, d, e, g;

  static ChannelParams general(SpaceKind kind, double a, double f, cplx b, cplx c, cplx d,
                               cplx e, cplx g);
  static ChannelParams unital(SpaceKind kind, double a, cplx b, cplx c, cplx d, cplx e);

  friend bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

/// Self-adjoint 4x4 Choi matrix tagged with the space it belongs to.
class ChoiMatrix {
 public:
  /// Throws ShapeError unless `m` is exactly self-adjoint (and real for real kinds).
  static ChoiMatrix from_entries(SpaceKind kind, const Mat4& m);

  SpaceKind kind() const { return kind_; }
  const Mat4& matrix() const { return m_; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  /// Block Q_{ij}, i, j in {0, 1}.
  Mat2 block(std::size_t i, std::size_t j) const;

  friend bool operator==(const ChoiMatrix&, const ChoiMatrix&) = default;

 private:
  ChoiMatrix(SpaceKind kind, const Mat4& m) : kind_(kind), m_(m) {}
  SpaceKind kind_;
  Mat4 m_;
};

/// The reordered matrix A = U^* Q U used for leading-minor positivity tests.
struct AForm {
  SpaceKind kind;
  Mat4 m;
};

struct ClassicalChannel {
  double a = 0.0;
  double f = 0.0;
  /// Row-stochastic matrix with rows (a, 1-a) and (f, 1-f).
  std::array<std::array<double, 2>, 2> transition() const {
    return {{{a, 1.0 - a}, {f, 1.0 - f}}};
  }
};

/// Bloch-ball action Q((I + x.sigma)/2) = (I + (v + T x).sigma)/2.
struct PauliAffineMap {
  std::array<double, 3> v{};
  RealMat3 T;
};

ChoiMatrix params_to_choi(const ChannelParams& p);
ChoiMatrix params_to_choi(const ChannelParams& p, SpaceKind k);
ChannelParams choi_to_params(const ChoiMatrix& q, SpaceKind k);
AForm reorder_to_A(const ChoiMatrix& q, SpaceKind k);

inline constexpr double kPsdTolerance = 1e-10;

/// Positive semidefiniteness via principal minors with tolerance
/// tol * max(1, max|entry|)^4. Nondegenerate inputs are decided by the leading
/// minors alone; if one of them is within tolerance of zero every principal
/// minor is checked.
template <class T, std::size_t N>
bool is_psd(const linalg::Matrix<T, N>& m, double tol = kPsdTolerance);
/// All leading principal minors > tol * scale.
template <class T, std::size_t N>
bool is_pd(const linalg::Matrix<T, N>& m, double tol = kPsdTolerance);

bool is_psd(const ChoiMatrix& q, double tol = kPsdTolerance);

Mat2 apply_channel(const ChoiMatrix& q, const Mat2& rho);
ClassicalChannel underlying_classical(const ChoiMatrix& q);

/// Closed-form T from the channel parameters, v = Bloch vector of Q(I/2).
PauliAffineMap pauli_rep(const ChoiMatrix& q);
/// T and v extracted numerically from the images of I and the Pauli matrices.
PauliAffineMap pauli_rep_from_action(const ChoiMatrix& q);

/// Bloch vector of a 2x2 self-adjoint matrix: x_i = Tr(sigma_i m).
std::array<double, 3> bloch_vector(const Mat2& m);
/// (I + x.sigma) / 2.
Mat2 state_from_bloch(const std::array<double, 3>& x);

// Channel CSV record: kind,a,f,b_re,b_im,c_re,c_im,d_re,d_im,e_re,e_im,g_re,g_im
std::string channel_csv_header();
std::string format_channel_row(const ChannelParams& p);
/// Parses the 13 leading fields of a channel record; extra fields are ignored.
ChannelParams parse_channel_row(std::string_view line);

/// Formats with 17 significant digits (round-trips every double).
std::string format_double(double x);

}  // namespace qcl

#include "qcl/detail/psd_impl.hpp"
