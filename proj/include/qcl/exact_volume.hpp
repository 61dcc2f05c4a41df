#pragma once

// Closed-form Lebesgue volumes of the four qubit-channel bodies and their
// densities over the underlying classical channel (a, f).

#include <optional>

#include "qcl/channel.hpp"

namespace qcl {

/// Gamma function. Arguments with 2x integral use the exact recursions
/// Gamma(n) = (n-1)! and Gamma(n + 1/2) = (2n-1)!!/2^n sqrt(pi).
double gamma_function(double x);

/// Surface F_{n-1} = n pi^{n/2} / Gamma(n/2 + 1) of the unit sphere in R^n.
double sphere_surface(int n);

/// G_{a,b} = int_0^1 x^a (1 - x^2)^b dx for a, b > -1.
double g_integral(double a, double b);

double total_volume(SpaceKind k);

/// Volume density over the classical channel. `f` is required for general
/// kinds and must be absent for unital kinds (UsageError otherwise).
double fiber_volume(SpaceKind k, double a, std::optional<double> f = std::nullopt);

/// Largest value of fiber_volume over a uniform grid of 2048 points per
/// axis (endpoints included). Cached after the first call.
double fiber_volume_grid_max(SpaceKind k);

}  // namespace qcl
