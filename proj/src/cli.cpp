#include "qcl/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "qcl/channel.hpp"
#include "qcl/contraction.hpp"
#include "qcl/errors.hpp"
#include "qcl/exact_volume.hpp"
#include "qcl/mc_oracle.hpp"
#include "qcl/sampler.hpp"
#include "qcl/stats.hpp"

namespace qcl {

namespace {

struct Flags {
  std::string space;
  double a = 0.0;
  double f = 0.0;
  double x = 0.0;
  std::uint64_t n = 0;
  std::uint64_t seed = 1;
  double alpha = 5e-5;
  std::uint64_t grid = 100;
  std::string mode = "layered";
  std::string global = "density-af";
  std::string out;
  CLI::Option* a_opt = nullptr;
  CLI::Option* f_opt = nullptr;
  CLI::Option* x_opt = nullptr;
  CLI::Option* n_opt = nullptr;

  bool has_a() const { return a_opt && a_opt->count() > 0; }
  bool has_f() const { return f_opt && f_opt->count() > 0; }
  bool has_x() const { return x_opt && x_opt->count() > 0; }
  std::optional<double> opt_f() const { return has_f() ? std::optional<double>(f) : std::nullopt; }
};

const std::vector<std::string> kSpaceNames = {"general-real", "general-complex", "unital-real",
                                              "unital-complex"};

void add_space(CLI::App* app, Flags& fl, const std::string& def) {
  fl.space = def;
  app->add_option("--space", fl.space, "channel space")->check(CLI::IsMember(kSpaceNames));
}
void add_af(CLI::App* app, Flags& fl) {
  fl.a_opt = app->add_option("--a", fl.a, "classical channel entry a");
  fl.f_opt = app->add_option("--f", fl.f, "classical channel entry f (general kinds)");
}
void add_n(CLI::App* app, Flags& fl, std::uint64_t def) {
  fl.n = def;
  fl.n_opt = app->add_option("-n,--samples", fl.n, "sample count");
}
void add_seed(CLI::App* app, Flags& fl) { app->add_option("--seed", fl.seed, "64-bit seed"); }
void add_out(CLI::App* app, Flags& fl) { app->add_option("--out", fl.out, "output path"); }

/// Validates the (a, f) presence rules of `kind`; a is optional when
/// `a_optional`.
void check_af(const Flags& fl, SpaceKind kind, bool a_optional) {
  if (is_unital(kind) && fl.has_f()) throw UsageError("--f is not a parameter of unital spaces");
  if (!fl.has_a()) {
    if (fl.has_f()) throw UsageError("--f requires --a");
    if (!a_optional) throw UsageError("--a is required");
    return;
  }
  if (!is_unital(kind) && !fl.has_f()) throw UsageError("--f is required with --a for general spaces");
  if (!(fl.a >= 0.0 && fl.a <= 1.0)) throw DomainError("--a must lie in [0,1]");
  if (fl.has_f() && !(fl.f >= 0.0 && fl.f <= 1.0)) throw DomainError("--f must lie in [0,1]");
}

std::string af_flags(const Flags& fl) {
  std::string s;
  if (fl.has_a()) s += " --a " + format_double(fl.a);
  if (fl.has_f()) s += " --f " + format_double(fl.f);
  return s;
}

/// Runs `body` into a buffer, then writes it to --out (or `out` when absent);
/// nothing is written when `body` throws.
template <class Body>
void with_output(const Flags& fl, std::ostream& out, Body&& body) {
  std::ostringstream buffer;
  body(buffer);
  if (fl.out.empty()) {
    out << buffer.str();
    return;
  }
  std::ofstream file(fl.out, std::ios::binary);
  if (!file) throw DiagnosticError("cannot open '" + fl.out + "' for writing");
  file << buffer.str();
  if (!file) throw DiagnosticError("failed writing '" + fl.out + "'");
}

void cmd_volume(const std::string& which, const Flags& fl, std::ostream& out) {
  const SpaceKind kind = parse_space_kind(fl.space);
  check_af(fl, kind, true);
  const bool fiber = fl.has_a();
  const double exact = fiber ? fiber_volume(kind, fl.a, fl.opt_f()) : total_volume(kind);
  with_output(fl, out, [&](std::ostream& os) {
    os << "space=" << fl.space << '\n';
    if (fiber) {
      os << "a=" << format_double(fl.a) << '\n';
      if (fl.has_f()) os << "f=" << format_double(fl.f) << '\n';
    }
    os << (fiber ? "fiber_volume=" : "total_volume=") << format_double(exact) << '\n';
    if (which == "exact") return;
    const VolumeEstimate est = fiber ? estimate_fiber_volume(kind, fl.a, fl.opt_f(), fl.n, fl.seed)
                                     : estimate_total_volume(kind, fl.n, fl.seed);
    os << "n=" << est.n << '\n'
       << "seed=" << fl.seed << '\n'
       << "hits=" << est.hits << '\n'
       << "estimate=" << format_double(est.mean) << '\n'
       << "std_error=" << format_double(est.std_error) << '\n'
       << "z=" << format_double(est.std_error > 0 ? (est.mean - exact) / est.std_error : 0.0)
       << '\n';
  });
}

void cmd_sample(const Flags& fl, std::ostream& out) {
  const SpaceKind kind = parse_space_kind(fl.space);
  const SamplerMode smode = parse_sampler_mode(fl.mode);
  const GlobalMode gmode = parse_global_mode(fl.global);
  check_af(fl, kind, true);
  if (smode == SamplerMode::paper_literal && kind != SpaceKind::general_real)
    throw UsageError("--mode paper is only available for general-real");
  const auto channels =
      fl.has_a() ? sample_fiber_batch(kind, fl.a, fl.opt_f(), fl.n, fl.seed, smode)
                 : sample_global_batch(kind, gmode, smode, fl.n, fl.seed);
  std::string comment = std::string("qcl ") + kToolVersion + " sample --space " + fl.space +
                        af_flags(fl) + " -n " + std::to_string(fl.n) + " --seed " +
                        std::to_string(fl.seed) + " --mode " + fl.mode;
  if (!fl.has_a()) comment += " --global " + fl.global;
  with_output(fl, out, [&](std::ostream& os) {
    os << "# " << comment << '\n' << channel_csv_header() << ",eta\n";
    for (const ChannelParams& p : channels)
      os << format_channel_row(p) << ',' << format_double(eta_of(p)) << '\n';
  });
}

void cmd_eta_cdf(const Flags& fl, std::ostream& out) {
  const SpaceKind kind = parse_space_kind(fl.space);
  const GlobalMode gmode = parse_global_mode(fl.global);
  if (fl.n < 100) throw UsageError("-n must be at least 100");
  if (!(fl.alpha > 0.0 && fl.alpha < 1.0)) throw DomainError("--alpha must lie in (0,1)");
  const auto [cdf, band] = eta_cdf_experiment(kind, fl.n, fl.alpha, fl.seed, gmode);
  const std::string comment = std::string("qcl ") + kToolVersion + " eta cdf --space " +
                              fl.space + " -n " + std::to_string(fl.n) + " --alpha " +
                              format_double(fl.alpha) + " --seed " + std::to_string(fl.seed) +
                              " --global " + fl.global;
  with_output(fl, out, [&](std::ostream& os) { write_ecdf_csv(os, band, comment); });
}

void cmd_eta_profile(const Flags& fl, std::ostream& out) {
  const SpaceKind kind = parse_space_kind(fl.space);
  if (!is_unital(kind)) throw UsageError("eta profile needs a unital --space");
  if (fl.grid < 2) throw UsageError("--grid must be at least 2");
  if (fl.n < 50) throw UsageError("-n must be at least 50");
  if (!(fl.alpha > 0.0 && fl.alpha < 1.0)) throw DomainError("--alpha must lie in (0,1)");
  const auto rows = eta_profile(kind, fl.grid, fl.n, fl.alpha, fl.seed);
  const std::string comment = std::string("qcl ") + kToolVersion + " eta profile --space " +
                              fl.space + " --grid " + std::to_string(fl.grid) + " -n " +
                              std::to_string(fl.n) + " --alpha " + format_double(fl.alpha) +
                              " --seed " + std::to_string(fl.seed);
  with_output(fl, out, [&](std::ostream& os) { write_profile_csv(os, rows, comment); });
}

void cmd_eta_bounds(const Flags& fl, std::ostream& out) {
  const SpaceKind kind = parse_space_kind(fl.space);
  check_af(fl, kind, false);
  const EtaBounds b = eta_bounds(kind, fl.a, fl.opt_f());
  std::optional<ChoiMatrix> q;
  if (fl.has_x()) {
    const double f = is_unital(kind) ? 1.0 - fl.a : fl.f;
    q = construct_channel_with_eta(fl.a, f, fl.x);
  }
  with_output(fl, out, [&](std::ostream& os) {
    os << "space=" << fl.space << '\n' << "a=" << format_double(fl.a) << '\n';
    if (fl.has_f()) os << "f=" << format_double(fl.f) << '\n';
    os << "lower=" << format_double(b.lower) << '\n' << "upper=" << format_double(b.upper) << '\n';
    if (!q) return;
    const ChannelParams p = choi_to_params(*q, SpaceKind::general_real);
    os << "x=" << format_double(fl.x) << '\n'
       << "channel=" << format_channel_row(p) << '\n'
       << "eta=" << format_double(eta_tr(*q).value) << '\n'
       << "psd=" << (is_psd(*q) ? "true" : "false") << '\n';
  });
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Volumes, uniform sampling and contraction coefficients of qubit channels", "qcl"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  // One flag set per leaf command so option handles stay distinct.
  Flags vol_exact_fl, vol_mc_fl, sample_fl, cdf_fl, prof_fl, bnd_fl;

  CLI::App* volume = app.add_subcommand("volume", "exact or Monte-Carlo channel-space volumes");
  volume->require_subcommand(1);
  CLI::App* vol_exact = volume->add_subcommand("exact", "closed-form total or fiber volume");
  CLI::App* vol_mc = volume->add_subcommand("mc", "hit-or-miss volume estimate");
  for (auto [sub, fl] : {std::pair{vol_exact, &vol_exact_fl}, std::pair{vol_mc, &vol_mc_fl}}) {
    add_space(sub, *fl, "general-real");
    add_af(sub, *fl);
    add_out(sub, *fl);
  }
  add_n(vol_mc, vol_mc_fl, 1'000'000);
  add_seed(vol_mc, vol_mc_fl);

  CLI::App* sample = app.add_subcommand("sample", "uniform random channels as CSV");
  add_space(sample, sample_fl, "general-real");
  add_af(sample, sample_fl);
  add_n(sample, sample_fl, 1000);
  add_seed(sample, sample_fl);
  sample->add_option("--mode", sample_fl.mode, "fiber sampler")->check(CLI::IsMember({"paper", "layered"}));
  sample->add_option("--global", sample_fl.global, "classical-channel marginal")
      ->check(CLI::IsMember({"uniform-af", "density-af"}));
  add_out(sample, sample_fl);

  CLI::App* eta = app.add_subcommand("eta", "contraction-coefficient experiments");
  eta->require_subcommand(1);
  CLI::App* eta_cdf = eta->add_subcommand("cdf", "empirical CDF with confidence band");
  add_space(eta_cdf, cdf_fl, "general-real");
  add_n(eta_cdf, cdf_fl, 10'000);
  add_seed(eta_cdf, cdf_fl);
  eta_cdf->add_option("--alpha", cdf_fl.alpha, "significance of the band");
  eta_cdf->add_option("--global", cdf_fl.global, "classical-channel marginal")
      ->check(CLI::IsMember({"uniform-af", "density-af"}));
  add_out(eta_cdf, cdf_fl);
  CLI::App* eta_prof = eta->add_subcommand("profile", "inf/mode/mean of eta over unital fibers");
  add_space(eta_prof, prof_fl, "unital-real");
  add_n(eta_prof, prof_fl, 1000);
  add_seed(eta_prof, prof_fl);
  eta_prof->add_option("--grid", prof_fl.grid, "number of intervals of [0,1]");
  eta_prof->add_option("--alpha", prof_fl.alpha, "significance of the mean interval");
  add_out(eta_prof, prof_fl);
  CLI::App* eta_bnd = eta->add_subcommand("bounds", "supremum interval and extremal channel");
  add_space(eta_bnd, bnd_fl, "general-real");
  add_af(eta_bnd, bnd_fl);
  bnd_fl.x_opt = eta_bnd->add_option("--x", bnd_fl.x, "requested coefficient");
  add_out(eta_bnd, bnd_fl);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "qcl: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*vol_exact) cmd_volume("exact", vol_exact_fl, out);
    else if (*vol_mc) cmd_volume("mc", vol_mc_fl, out);
    else if (*sample) cmd_sample(sample_fl, out);
    else if (*eta_cdf) cmd_eta_cdf(cdf_fl, out);
    else if (*eta_prof) cmd_eta_profile(prof_fl, out);
    else if (*eta_bnd) cmd_eta_bounds(bnd_fl, out);
    return 0;
  } catch (const UsageError& e) {
    err << "qcl: usage error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "qcl: domain error: " << e.what() << '\n';
    return 2;
  } catch (const ShapeError& e) {
    err << "qcl: shape error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "qcl: error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace qcl
