#pragma once

// Random channels distributed uniformly with respect to the Lebesgue measure.
//
// Two fiber samplers are provided for general real channels:
//   * paper_literal  - the seven-step rejection scheme, kept verbatim so its
//                      output can be compared against the rejection oracle;
//   * layered_exact  - the A-form of the Choi matrix is filled in column by
//                      column, each column drawn from the conditional density
//                      obtained by integrating out the later columns. This is
//                      exactly uniform on the fiber and covers all four kinds.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qcl/channel.hpp"
#include "qcl/rng.hpp"

namespace qcl {

enum class SamplerMode { paper_literal, layered_exact };
enum class GlobalMode { uniform_af, density_af };

std::string_view to_string(SamplerMode m);
std::string_view to_string(GlobalMode m);
/// "paper" | "layered"
SamplerMode parse_sampler_mode(std::string_view s);
/// "uniform-af" | "density-af"
GlobalMode parse_global_mode(std::string_view s);

inline constexpr std::uint64_t kLayerIterationCap = 1'000'000;

/// Uniform point of the closed ball of the given radius in R^dim, dim in 1..4,
/// by rejection from the enclosing cube.
std::vector<double> uniform_in_ball(int dim, double radius, RngStream& rng);

/// Radius of the Step 3 disk of the literal scheme. The printed value is
/// sqrt(f); sqrt(1-a) is the radius of the ellipse the draw is mapped into.
enum class Step3Radius { sqrt_f, sqrt_one_minus_a };

/// Event counters for the literal scheme.
struct LiteralDiagnostics {
  std::uint64_t step5_rejections = 0;  // ||z|| > 1, restarted at Step 2
  std::uint64_t indefinite_a3 = 0;     // Step 3 produced a non-positive A_3
};

/// Seven-step scheme for general-real channels over (a, f). Step 3 draws y_2
/// from the disk of radius sqrt(f); when that leaves A_3 indefinite the draw
/// is counted in `diag` and the scheme restarts at Step 2. The basis [e1, e2]
/// of Step 6 is taken as an orthonormal basis of sqrt(A_3)^{-1} span{e1, e2}.
ChannelParams sample_fiber_literal(double a, double f, RngStream& rng,
                                   LiteralDiagnostics* diag = nullptr,
                                   Step3Radius radius = Step3Radius::sqrt_f);

/// Proposal counts of the layer-1 rejection step (general kinds; unital
/// kinds draw layer 1 directly and count every draw as accepted).
struct LayeredDiagnostics {
  std::uint64_t layer1_proposals = 0;
  std::uint64_t layer1_accepted = 0;
};

/// Exactly uniform channel over the classical channel (a, f) (or a, for
/// unital kinds). Throws DomainError on zero-volume fibers.
ChannelParams sample_fiber(SpaceKind k, double a, std::optional<double> f, RngStream& rng,
                           LayeredDiagnostics* diag = nullptr);

/// Whole-space sample. uniform_af draws the classical channel uniformly;
/// density_af draws it with density fiber_volume / total_volume, which with
/// layered_exact is uniform on the whole body. paper_literal is only
/// available for general-real.
ChannelParams sample_global(SpaceKind k, GlobalMode gmode, SamplerMode smode, RngStream& rng);

/// n fiber samples; sample i uses RngStream(seed).substream(i).
std::vector<ChannelParams> sample_fiber_batch(SpaceKind k, double a, std::optional<double> f,
                                              std::size_t n, std::uint64_t seed,
                                              SamplerMode smode = SamplerMode::layered_exact,
                                              Step3Radius radius = Step3Radius::sqrt_f);
/// n whole-space samples; sample i uses RngStream(seed).substream(i).
std::vector<ChannelParams> sample_global_batch(SpaceKind k, GlobalMode gmode, SamplerMode smode,
                                               std::size_t n, std::uint64_t seed);

}  // namespace qcl
