#include "qcl/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcl/errors.hpp"

namespace qcl {

EtaValue eta_tr(const ChoiMatrix& q) {
  const RealMat3 t = pauli_rep(q).T;
  const RealMat3 gram = linalg::adjoint(t) * t;
  const auto eig = linalg::eigh(gram);
  linalg::Vector<double, 3> top{eig.vectors(0, 2), eig.vectors(1, 2), eig.vectors(2, 2)};
  const double len = std::sqrt(linalg::norm2(top));
  for (double& x : top) x /= len;
  return EtaValue{std::sqrt(linalg::norm2(t * top))};
}

double eta_of(const ChannelParams& p) { return eta_tr(params_to_choi(p)).value; }

namespace {

void require_unit(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0))
    throw DomainError(std::string(name) + " must lie in [0,1], got " + format_double(x));
}

}  // namespace

double classical_dobrushin(double a, double f) {
  require_unit(a, "a");
  require_unit(f, "f");
  return std::abs(a - f);
}

EtaBounds eta_bounds(double a, double f) {
  require_unit(a, "a");
  require_unit(f, "f");
  return {std::abs(a - f), std::sqrt((1.0 - a) * f) + std::sqrt(a * (1.0 - f))};
}

EtaBounds eta_bounds(SpaceKind k, double a, std::optional<double> f) {
  if (!is_unital(k)) {
    if (!f) throw UsageError("f is required for general kinds");
    return eta_bounds(a, *f);
  }
  if (f) throw UsageError("f is not a parameter of unital kinds");
  require_unit(a, "a");
  return {std::abs(2.0 * a - 1.0), 1.0};
}

ChoiMatrix construct_channel_with_eta(double a, double f, double x) {
  const EtaBounds bounds = eta_bounds(a, f);
  if (!(x > bounds.lower && x < bounds.upper))
    throw DomainError("x=" + format_double(x) + " is outside the open interval (" +
                      format_double(bounds.lower) + ", " + format_double(bounds.upper) + ")");
  const double e = std::min(std::sqrt((1.0 - a) * f), x);
  const double d = x - e;
  return params_to_choi(ChannelParams::general(SpaceKind::general_real, a, f, 0.0, 0.0, d, e, 0.0));
}

}  // namespace qcl
