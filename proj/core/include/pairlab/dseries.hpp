#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>

#include "pairlab/csv.hpp"
#include "pairlab/numeric.hpp"
#include "pairlab/sieve.hpp"

namespace pairlab {

/// Denominator of the D_2r terms: n^s (n+2r)^s, or n^{2s}.
enum class Denominator { pair, square };

/// Partial sum of a Dirichlet-type series up to N.
struct TruncatedSeries {
  Complex s;
  std::uint64_t r = 0;
  std::uint64_t N = 0;
  Complex value;
  double tail_bound = 0.0;       // bound on |sum over n > N|; +inf when none is available
  bool unreliable_tail = false;  // set outside the region where the tail bound holds

  std::string flags() const { return unreliable_tail ? "unreliable_tail" : ""; }
};

/// ∫_N^∞ log^2 t · t^{-a} dt for a > 1 and N >= e^{2/a}.
double log_squared_tail(double N, double a);

/// Σ_{n<=N} Λ(n)Λ(n+2r) / (n^s (n+2r)^s). r = 0 gives Σ Λ(n)^2 n^{-2s}.
/// Requires Re s > 1/2 and N + 2r within the sieve.
TruncatedSeries d_2r(const Sieve& sieve, Complex s, std::uint64_t r, std::uint64_t N,
                     Denominator denominator = Denominator::pair);

/// Σ log^2 p · p^{-2s} over primes p <= N with p + 2r prime. Re s > 1/4;
/// for Re s <= 1/2 the tail bound is +inf and the result is flagged.
TruncatedSeries d0_pair(const Sieve& sieve, Complex s, std::uint64_t r, std::uint64_t N);

/// Σ m(q) log^2 q · q^{-4s} over primes q <= N. Re s > 1/4, N >= 2.
TruncatedSeries d_star(const Sieve& sieve, Complex s, std::uint64_t r, std::uint64_t N);

/// d_2r(s) - 2 C_2r / (2s - 1).
Complex g_2r(const Sieve& sieve, Complex s, std::uint64_t r, std::uint64_t N);

/// d_2r(s) - d0_pair(s) - 2 d_star(s) with the star sum cut at √N,
/// summed together so that it can be evaluated for Re s > 1/6 where the
/// three series diverge separately. No tail bound is reported.
TruncatedSeries lemma_remainder(const Sieve& sieve, Complex s, std::uint64_t r, std::uint64_t N);

/// Columns: sigma, tau, r, N, value_re, value_im, tail_bound, flags.
Table series_scan_table(std::string_view series_name, std::span<const TruncatedSeries> rows);
void write_series_scan_csv(std::ostream& out, std::string_view series_name, std::span<const TruncatedSeries> rows);

}  // namespace pairlab
