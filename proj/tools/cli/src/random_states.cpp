#include "toda/cli/random_states.hpp"

#include <algorithm>
#include <cmath>

#include "toda/errors.hpp"

namespace toda::cli {

std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

namespace {

std::vector<double> sample_poles(std::mt19937_64& rng, std::size_t n, const PoleRange& range) {
  std::uniform_real_distribution<double> uni(range.lo, range.hi);
  std::vector<double> z(n);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    for (double& x : z) x = uni(rng);
    std::sort(z.begin(), z.end());
    bool ok = true;
    for (std::size_t k = 1; ok && k < n; ++k) ok = z[k] - z[k - 1] >= range.min_gap;
    for (std::size_t k = 0; ok && k < n; ++k) ok = std::abs(z[k]) >= range.min_abs;
    if (ok) return z;
  }
  raise(ErrorCode::InvalidInput, "pole range too narrow for the requested gap");
}

}  // namespace

SpectralData random_rat_n_prime(std::mt19937_64& rng, std::size_t n, const PoleRange& range) {
  SpectralData s;
  s.z = sample_poles(rng, n, range);
  // Normalized unit exponentials are uniform on the simplex.
  std::exponential_distribution<double> expo(1.0);
  s.rho.resize(n);
  double total = 0.0;
  for (double& r : s.rho) {
    r = expo(rng) + 1e-12;
    total += r;
  }
  for (double& r : s.rho) r /= total;
  return s;
}

SpectralData random_rat_n(std::mt19937_64& rng, std::size_t n, const PoleRange& range) {
  SpectralData s = random_rat_n_prime(rng, n, range);
  const double scale = std::uniform_real_distribution<double>(0.5, 2.0)(rng);
  for (double& r : s.rho) r *= scale;
  return s;
}

JacobiMatrix random_jacobi(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> dv(-3.0, 3.0);
  std::uniform_real_distribution<double> dc(0.1, 3.0);
  std::vector<double> v(n);
  std::vector<double> c(n - 1);
  for (double& x : v) x = dv(rng);
  for (double& x : c) x = dc(rng);
  return JacobiMatrix(std::move(v), std::move(c));
}

}  // namespace toda::cli
