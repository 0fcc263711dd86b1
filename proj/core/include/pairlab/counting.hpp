#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "pairlab/constants.hpp"
#include "pairlab/csv.hpp"
#include "pairlab/sieve.hpp"

namespace pairlab {

// All counting functions take real x and count over n <= floor(x). The
// primes p (or q) being enumerated must lie within the sieve limit; the
// partner values p + 2r, q^2 ± 2r, f(p) may lie beyond it and are then
// tested with Miller-Rabin.
//
// Multiplicity: in θ*_2r and π*_2r a prime q contributes once for each
// prime among {q^2 - 2r, q^2 + 2r}; q^2 - 2r < 2 never counts.

/// m(q): number of primes among q^2 - 2r (when >= 2) and q^2 + 2r.
unsigned star_multiplicity(const Sieve& sieve, std::uint64_t q, std::uint64_t r);

/// Chebyshev ψ(x) = Σ_{n<=x} Λ(n).
double chebyshev_psi(const Sieve& sieve, double x);

/// #{p <= x : p, p + 2r both prime}.
std::uint64_t pi_2r(const Sieve& sieve, double x, std::uint64_t r);

/// Σ_{n<=x} Λ(n) Λ(n + 2r).
double psi_2r(const Sieve& sieve, double x, std::uint64_t r);

/// Σ log^2 p over primes p <= x with p + 2r prime.
double theta_2r(const Sieve& sieve, double x, std::uint64_t r);

/// Σ m(q) log^2 q over primes q <= x.
double theta_star_2r(const Sieve& sieve, double x, std::uint64_t r);

/// #{p <= x : f(p) >= 2 and f(p) prime}.
std::uint64_t pi_f(const Sieve& sieve, double x, const QuadraticSpec& f);

/// pi_f(x, n^2 - 2r) + pi_f(x, n^2 + 2r).
std::uint64_t pi_star_2r(const Sieve& sieve, double x, std::uint64_t r);

/// e_2r(x) = π_2r(x) - 2 C_2r li_2(x), for x >= 2.
double remainder_e2r(const Sieve& sieve, double x, std::uint64_t r);

/// ψ_2r(x) - θ_2r(x) - 2 θ*_2r(√x), for x >= 4.
double psi_decomposition_check(const Sieve& sieve, double x, std::uint64_t r);

enum class CountKind { pi_2r, psi_2r, theta_2r, theta_star_2r, pi_f, pi_star_2r };

std::string to_string(CountKind kind);

/// Exact values of one counting function along an ascending grid.
struct PairCountSeries {
  CountKind kind = CountKind::pi_2r;
  std::uint64_t r = 0;                  // half-gap; unused for pi_f
  std::optional<QuadraticSpec> f;       // set for pi_f only
  std::vector<double> grid;
  std::vector<double> values;

  bool integer_valued() const noexcept {
    return kind == CountKind::pi_2r || kind == CountKind::pi_f || kind == CountKind::pi_star_2r;
  }
};

/// Evaluates the series in one sweep over the grid. `param` is r, except
/// for CountKind::pi_f where `f` is used.
PairCountSeries pair_count_series(const Sieve& sieve, CountKind kind, std::uint64_t r, std::span<const double> grid,
                                  std::optional<QuadraticSpec> f = std::nullopt);

/// Header comments (function, r or f, multiplicity convention), then
/// x,value[,normalized]. `normalization` must be empty or match the grid.
Table series_table(const PairCountSeries& series, std::span<const double> normalization = {},
                   std::string_view normalization_label = "");
void write_series_csv(std::ostream& out, const PairCountSeries& series, std::span<const double> normalization = {},
                      std::string_view normalization_label = "");

}  // namespace pairlab
