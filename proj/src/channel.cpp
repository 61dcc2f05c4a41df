#include "qcl/channel.hpp"

#include <cstdlib>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "qcl/errors.hpp"

namespace qcl {

std::string_view to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::general_real: return "general-real";
    case SpaceKind::general_complex: return "general-complex";
    case SpaceKind::unital_real: return "unital-real";
    case SpaceKind::unital_complex: return "unital-complex";
  }
  return "unknown";
}

SpaceKind parse_space_kind(std::string_view name) {
  for (SpaceKind k : kAllSpaceKinds)
    if (to_string(k) == name) return k;
  throw UsageError("unknown space kind '" + std::string(name) + "'");
}

ChannelParams ChannelParams::general(SpaceKind kind, double a, double f, cplx b, cplx c,
                                     cplx d, cplx e, cplx g) {
  if (is_unital(kind)) throw UsageError("ChannelParams::general called with a unital kind");
  return ChannelParams{kind, a, f, b, c, d, e, g};
}

ChannelParams ChannelParams::unital(SpaceKind kind, double a, cplx b, cplx c, cplx d,
                                    cplx e) {
  if (!is_unital(kind)) throw UsageError("ChannelParams::unital called with a general kind");
  return ChannelParams{kind, a, 1.0 - a, b, c, d, e, -b};
}

namespace {

void require_unit_interval(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0))
    throw DomainError(std::string(name) + " must lie in [0,1], got " + format_double(x));
}

bool has_imaginary(const Mat4& m) {
  for (const auto& z : m.data)
    if (z.imag() != 0.0) return true;
  return false;
}

}  // namespace

ChoiMatrix ChoiMatrix::from_entries(SpaceKind kind, const Mat4& m) {
  if (!linalg::is_self_adjoint(m)) throw ShapeError("Choi matrix is not self-adjoint");
  if (!is_complex(kind) && has_imaginary(m))
    throw ShapeError("real-kind Choi matrix has imaginary entries");
  return ChoiMatrix(kind, m);
}

Mat2 ChoiMatrix::block(std::size_t i, std::size_t j) const {
  Mat2 r;
  for (std::size_t r0 = 0; r0 < 2; ++r0)
    for (std::size_t c0 = 0; c0 < 2; ++c0) r(r0, c0) = m_(2 * i + r0, 2 * j + c0);
  return r;
}

ChoiMatrix params_to_choi(const ChannelParams& p) { return params_to_choi(p, p.kind); }

ChoiMatrix params_to_choi(const ChannelParams& p, SpaceKind k) {
  require_unit_interval(p.a, "a");
  const bool unital = is_unital(k);
  const double f = unital ? 1.0 - p.a : p.f;
  const cplx g = unital ? -p.b : p.g;
  if (!unital) require_unit_interval(f, "f");
  if (!is_complex(k)) {
    for (const cplx* z : {&p.b, &p.c, &p.d, &p.e, &p.g})
      if (z->imag() != 0.0) throw DomainError("real-kind channel has a complex parameter");
  }
  using std::conj;
  Mat4 m;
  m(0, 0) = p.a;        m(0, 1) = p.b;          m(0, 2) = p.c;   m(0, 3) = p.d;
  m(1, 0) = conj(p.b);  m(1, 1) = 1.0 - p.a;    m(1, 2) = p.e;   m(1, 3) = -p.c;
  m(2, 0) = conj(p.c);  m(2, 1) = conj(p.e);    m(2, 2) = f;     m(2, 3) = g;
  m(3, 0) = conj(p.d);  m(3, 1) = -conj(p.c);   m(3, 2) = conj(g); m(3, 3) = 1.0 - f;
  return ChoiMatrix::from_entries(k, m);
}

ChannelParams choi_to_params(const ChoiMatrix& q, SpaceKind k) {
  constexpr double tol = 1e-12;
  const Mat4& m = q.matrix();
  auto close = [](cplx x, cplx y) { return std::abs(x - y) <= tol; };
  const double a = m(0, 0).real();
  const double f = m(2, 2).real();
  if (!close(m(1, 1), 1.0 - a)) throw ShapeError("Q22 != 1 - Q11 (trace of Q11 must be 1)");
  if (!close(m(3, 3), 1.0 - f)) throw ShapeError("Q44 != 1 - Q33 (trace of Q22 must be 1)");
  if (!close(m(1, 3), -m(0, 2))) throw ShapeError("Q24 != -Q13 (Q12 must be traceless)");
  if (!is_complex(k) && has_imaginary(m)) throw ShapeError("real kind with complex entries");
  if (is_unital(k)) {
    if (!close(m(2, 2), 1.0 - a) || !close(m(2, 3), -m(0, 1)))
      throw ShapeError("matrix is not unital (Q11 + Q22 != I)");
    return ChannelParams::unital(k, a, m(0, 1), m(0, 2), m(0, 3), m(1, 2));
  }
  return ChannelParams{k, a, f, m(0, 1), m(0, 2), m(0, 3), m(1, 2), m(2, 3)};
}

AForm reorder_to_A(const ChoiMatrix& q, SpaceKind k) {
  // A(i,j) = Q(perm[i], perm[j]) for the permutation matrix U with U e_i = e_perm[i].
  static constexpr std::array<std::size_t, 4> general_perm = {0, 2, 1, 3};
  static constexpr std::array<std::size_t, 4> unital_perm = {1, 2, 0, 3};
  const auto& perm = is_unital(k) ? unital_perm : general_perm;
  AForm out{k, {}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out.m(i, j) = q(perm[i], perm[j]);
  return out;
}

bool is_psd(const ChoiMatrix& q, double tol) {
  if (!is_complex(q.kind())) {
    linalg::Matrix<double, 4> r;
    for (std::size_t i = 0; i < 16; ++i) r.data[i] = q.matrix().data[i].real();
    return is_psd(r, tol);
  }
  return is_psd(q.matrix(), tol);
}

Mat2 apply_channel(const ChoiMatrix& q, const Mat2& rho) {
  Mat2 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) out = out + linalg::scaled(q.block(i, j), rho(i, j));
  return out;
}

ClassicalChannel underlying_classical(const ChoiMatrix& q) {
  return ClassicalChannel{q(0, 0).real(), q(2, 2).real()};
}

std::array<double, 3> bloch_vector(const Mat2& m) {
  return {2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real()};
}

Mat2 state_from_bloch(const std::array<double, 3>& x) {
  Mat2 r;
  r(0, 0) = 0.5 * (1.0 + x[2]);
  r(1, 1) = 0.5 * (1.0 - x[2]);
  r(0, 1) = 0.5 * cplx(x[0], -x[1]);
  r(1, 0) = 0.5 * cplx(x[0], x[1]);
  return r;
}

namespace {

std::array<double, 3> offset_vector(const ChoiMatrix& q) {
  // Q(I/2) = (Q11 + Q22) / 2
  return bloch_vector(linalg::scaled(q.block(0, 0) + q.block(1, 1), 0.5));
}

}  // namespace

PauliAffineMap pauli_rep(const ChoiMatrix& q) {
  const double a = q(0, 0).real();
  const double f = q(2, 2).real();
  const cplx b = q(0, 1), c = q(0, 2), d = q(0, 3), e = q(1, 2), g = q(2, 3);
  PauliAffineMap out;
  out.v = offset_vector(q);
  RealMat3& T = out.T;
  T(0, 0) = (d + e).real();  T(0, 1) = (d + e).imag();  T(0, 2) = (b - g).real();
  T(1, 0) = -(d - e).imag(); T(1, 1) = (d - e).real();  T(1, 2) = -(b - g).imag();
  T(2, 0) = 2.0 * c.real();  T(2, 1) = 2.0 * c.imag();  T(2, 2) = a - f;
  return out;
}

PauliAffineMap pauli_rep_from_action(const ChoiMatrix& q) {
  PauliAffineMap out;
  out.v = offset_vector(q);
  // Column j of T is the Bloch vector of Q(sigma_j) / 2.
  const std::array<Mat2, 3> paulis = [] {
    std::array<Mat2, 3> s;
    s[0](0, 1) = 1.0;  s[0](1, 0) = 1.0;
    s[1](0, 1) = cplx(0, -1);  s[1](1, 0) = cplx(0, 1);
    s[2](0, 0) = 1.0;  s[2](1, 1) = -1.0;
    return s;
  }();
  for (std::size_t j = 0; j < 3; ++j) {
    const auto col = bloch_vector(linalg::scaled(apply_channel(q, paulis[j]), 0.5));
    for (std::size_t i = 0; i < 3; ++i) out.T(i, j) = col[i];
  }
  return out;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string channel_csv_header() {
  return "kind,a,f,b_re,b_im,c_re,c_im,d_re,d_im,e_re,e_im,g_re,g_im";
}

std::string format_channel_row(const ChannelParams& p) {
  const bool unital = is_unital(p.kind);
  const double f = unital ? 1.0 - p.a : p.f;
  const cplx g = unital ? -p.b : p.g;
  std::string s(to_string(p.kind));
  auto put = [&s](double x) {
    s += ',';
    s += format_double(x);
  };
  put(p.a);
  put(f);
  for (const cplx& z : {p.b, p.c, p.d, p.e, g}) {
    put(z.real());
    put(z.imag());
  }
  return s;
}

ChannelParams parse_channel_row(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (fields.size() < 13) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? line.npos
                                                                         : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (fields.size() < 13) throw ShapeError("channel record needs 13 fields");
  std::array<double, 12> v{};
  for (std::size_t i = 0; i < 12; ++i) {
    const std::string field(fields[i + 1]);
    char* end = nullptr;
    v[i] = std::strtod(field.c_str(), &end);
    if (field.empty() || end != field.c_str() + field.size())
      throw ShapeError("malformed number '" + field + "' in channel record");
  }
  ChannelParams p;
  p.kind = parse_space_kind(fields[0]);
  p.a = v[0];
  p.f = v[1];
  p.b = {v[2], v[3]};
  p.c = {v[4], v[5]};
  p.d = {v[6], v[7]};
  p.e = {v[8], v[9]};
  p.g = {v[10], v[11]};
  return p;
}

}  // namespace qcl
