#pragma once

// Seeded random states for the verification suites. Each trial draws from
// its own engine seeded by (seed, stream, trial), so results do not depend
// on the order in which trials run.

#include <cstdint>
#include <random>

#include "toda/spectral.hpp"
#include "toda/tridiag.hpp"

namespace toda::cli {

std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial);

struct PoleRange {
  double lo = -3.0;
  double hi = 3.0;
  double min_gap = 0.05;
  /// Resample until every |z_k| is at least this.
  double min_abs = 0.0;
};

/// Sorted uniform poles with the gaps of `range`, flat simplex residues.
SpectralData random_rat_n_prime(std::mt19937_64& rng, std::size_t n, const PoleRange& range = {});

/// As above with the residues scaled by a factor in [0.5, 2], so q0 != 1.
SpectralData random_rat_n(std::mt19937_64& rng, std::size_t n, const PoleRange& range = {});

/// v uniform in [-3, 3], c uniform in [0.1, 3].
JacobiMatrix random_jacobi(std::mt19937_64& rng, std::size_t n);

}  // namespace toda::cli
