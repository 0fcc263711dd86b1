#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "pairlab/csv.hpp"
#include "pairlab/numeric.hpp"
#include "pairlab/sieve.hpp"

namespace pairlab {

/// Ordinates γ_k of the nontrivial zeta zeros ρ_k = 1/2 + iγ_k.
///
/// Only the positive ordinates are stored; every zero sum pairs ρ with
/// conj(ρ), so truncation at K keeps the partial sums symmetric and real.
struct ZeroList {
  std::vector<double> gammas;
  std::string source;
  std::uint64_t checksum = 0;  // FNV-1a of the file bytes
  bool rh_assumed = true;      // Re ρ = 1/2 for every stored zero

  std::size_t size() const noexcept { return gammas.size(); }
  Complex rho(std::size_t k) const { return {0.5, gammas.at(k)}; }

  /// Builds from in-memory ordinates with the same validation as load.
  static ZeroList from_values(std::vector<double> gammas, std::string source = "memory");
};

/// Reads a plain-text file with one positive decimal per line (blank
/// lines and '#' comments skipped) and keeps the first `max_count`.
/// Throws ParseError (with line number), DataError on ordering or range
/// violations, DataError for a file with no values.
ZeroList load_zeros(const std::filesystem::path& path, std::size_t max_count = SIZE_MAX);

/// Σ_{k<K} 2 Re(x^ρ_k / ρ_k).
double zero_power_sum(double x, const ZeroList& zeros, std::size_t count);

/// Truncated von Mangoldt formula
/// x - Σ_ρ x^ρ/ρ - log 2π - (1/2) log(1 - x^-2).
double psi_explicit(double x, const ZeroList& zeros, std::size_t count);

/// 2 C_2r x - 4 C_2r Σ_ρ x^ρ/ρ.
double psi2r_explicit(double x, std::uint64_t r, const ZeroList& zeros, std::size_t count);

/// 2 C_2r x - 4 C*_2r √x - 4 C_2r Σ_ρ x^ρ/ρ, with C*_2r supplied.
double theta2r_explicit(double x, std::uint64_t r, double c_star, const ZeroList& zeros, std::size_t count);

/// Zero contribution -4 C_2r Σ_{k<K} 2 Re(ρ_k li_2(x^ρ_k)).
double pi2r_zero_term(double x, std::uint64_t r, const ZeroList& zeros, std::size_t count);

/// 2 C_2r li_2(x) - C*_2r li_2(√x) + pi2r_zero_term.
double pi2r_explicit(double x, std::uint64_t r, double c_star, const ZeroList& zeros, std::size_t count);

/// li(x) - (1/2) li(√x) - Σ_{k<K} 2 Re(Ei(ρ_k log x) - Ei(ρ_k log 2)).
double pi_riemann_approx(double x, const ZeroList& zeros, std::size_t count);

/// Imaginary residue left after conjugate pairing of the ρ li_2(x^ρ)
/// terms; zero up to rounding.
double pi2r_imaginary_residue(double x, const ZeroList& zeros, std::size_t count);

struct RemainderRow {
  double x = 0.0;
  std::uint64_t pairs = 0;
  double e2r = 0.0;             // π_2r(x) - 2 C_2r li_2(x)
  double normalized = 0.0;      // e2r log^2 x / √x
  double zero_term = 0.0;       // pi2r_zero_term(x, r, K)
  double predicted = 0.0;       // -C*_2r li_2(√x) + zero_term
};

/// li_2 values shared between scans over the same grid.
class Li2Cache {
 public:
  double operator()(double x);
  std::size_t hits() const noexcept { return hits_; }
  std::size_t misses() const noexcept { return misses_; }

 private:
  std::map<double, double> values_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

/// Remainder e_2r(x) along a grid next to the zero-sum prediction.
std::vector<RemainderRow> remainder_scan(const Sieve& sieve, std::uint64_t r, double c_star,
                                         std::span<const double> grid, const ZeroList& zeros, std::size_t count,
                                         Li2Cache& cache);

/// Columns: x, pi_2r, e_2r, e_2r_log2x_over_sqrtx, zero_term, predicted_e_2r.
Table remainder_table(std::uint64_t r, std::size_t count, const ZeroList& zeros, std::span<const RemainderRow> rows);

void write_remainder_csv(std::ostream& out, std::uint64_t r, std::size_t count, const ZeroList& zeros,
                         std::span<const RemainderRow> rows);

}  // namespace pairlab
