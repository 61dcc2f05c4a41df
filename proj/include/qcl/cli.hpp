#pragma once

// Command-line front end. Kept in the library so tests can drive it in-process.
//
//   qcl volume exact|mc --space K [--a A] [--f F] [-n N] [--seed S]
//   qcl sample --space K [--a A] [--f F] [-n N] [--seed S] [--mode M] [--global G] [--out P]
//   qcl eta cdf|profile|bounds ...
//
// Exit codes: 0 success, 1 runtime diagnostic, 2 usage or domain error.

#include <iosfwd>
#include <string>
#include <vector>

namespace qcl {

inline constexpr const char* kToolVersion = "1.0.0";

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcl
