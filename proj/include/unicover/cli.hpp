#pragma once

// Command-line frontend. Exit codes: 0 success or verified cover, 1 malformed
// input or refused request, 2 verification failed, 3 verification
// inconclusive, 4 internal error.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "unicover/io.hpp"

namespace unicover {

/// args excludes the program name; "-" as input reads from `in`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

/// Random simplicial cones with entries uniform in [-max_entry, max_entry],
/// rejection-sampled to full dimension. Item i depends only on (seed, i).
std::vector<IntVector> ensemble_cone(std::uint64_t seed, std::size_t item, std::size_t d, long max_entry);

/// Cover and verify every ensemble cone, folding results in item order.
EnsembleSummary run_ensemble(std::size_t d, std::size_t count, long max_entry, std::uint64_t seed, std::size_t jobs);

}  // namespace unicover
