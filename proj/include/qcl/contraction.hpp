#pragma once

// Trace-distance contraction coefficient of qubit channels.
//
// For a channel with Bloch action x -> v + T x the coefficient is the operator
// norm of T. T always contains a - f in its (3,3) slot, so |a - f| is a lower
// bound on every fiber.

#include <optional>

#include "qcl/channel.hpp"

namespace qcl {

struct EtaValue {
  double value = 0.0;
};

/// Largest singular value of T: eigensolve of T^T T, then sigma = |T v| for the
/// top eigenvector v.
EtaValue eta_tr(const ChoiMatrix& q);
/// Shorthand for eta_tr(params_to_choi(p)).value.
double eta_of(const ChannelParams& p);

/// |a - f|, the total-variation contraction of rows (a, 1-a), (f, 1-f).
double classical_dobrushin(double a, double f);

struct EtaBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// (|a-f|, sqrt((1-a)f) + sqrt(a(1-f))).
EtaBounds eta_bounds(double a, double f);
/// Same, with f = 1-a implied for unital kinds; the unital upper bound is
/// exactly 1.
EtaBounds eta_bounds(SpaceKind k, double a, std::optional<double> f = std::nullopt);

/// Real channel with b = c = g = 0, e = min(sqrt((1-a)f), x), d = x - e, whose
/// coefficient is x. x must lie in the open interval of eta_bounds(a, f).
ChoiMatrix construct_channel_with_eta(double a, double f, double x);

}  // namespace qcl
