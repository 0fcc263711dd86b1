#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pairlab/errors.hpp"

namespace pairlab {

enum class ConvergenceMode { absolute, character_averaged };

/// A truncated Euler product. `cutoff` is the largest prime bound used.
struct EulerProduct {
  double value = 0.0;
  std::uint64_t cutoff = 0;
  double error_estimate = 0.0;
  ConvergenceMode mode = ConvergenceMode::absolute;
};

/// f(n) = n^2 + c with c != 0. Only this quadratic family is supported.
class QuadraticSpec {
 public:
  explicit QuadraticSpec(std::int64_t c);

  /// Parses "n^2-2", "n^2 + 4", "n**2-10". Any other shape is rejected
  /// with DomainError.
  static QuadraticSpec parse(std::string_view text);

  /// f_{2r}(n) = n^2 - 2r and f_{-2r}(n) = n^2 + 2r.
  static QuadraticSpec minus_gap(std::uint64_t r) { return QuadraticSpec(-2 * static_cast<std::int64_t>(r)); }
  static QuadraticSpec plus_gap(std::uint64_t r) { return QuadraticSpec(2 * static_cast<std::int64_t>(r)); }

  std::int64_t c() const noexcept { return c_; }

  /// True iff -c is a perfect square, i.e. f factors over the integers.
  bool reducible() const noexcept;

  /// f(n) reduced mod m, in [0, m).
  std::uint64_t value_mod(std::uint64_t n, std::uint64_t m) const noexcept;

  std::string to_string() const;

  friend bool operator==(const QuadraticSpec&, const QuadraticSpec&) = default;

 private:
  std::int64_t c_;
};

/// Jacobi symbol (a/n) for odd n >= 1, binary reciprocity algorithm.
int jacobi(std::int64_t a, std::uint64_t n);

/// N_f(p) = #{1 <= n <= p : n f(n) ≡ 0 (mod p)}.
std::uint64_t nf_p_enumerate(const QuadraticSpec& f, std::uint64_t p);
std::uint64_t nf_p_formula(const QuadraticSpec& f, std::uint64_t p);
/// Enumeration below 1000, residue formula above.
std::uint64_t nf_p(const QuadraticSpec& f, std::uint64_t p);

/// For f = n^2 - 2r and odd p not dividing 2r: N_f(p) - 2 == (2r/p).
/// Throws DomainError when p | 2r, p is even, or f is not of that form.
bool legendre_check(const QuadraticSpec& f, std::uint64_t p);

/// Π_{2<p<=cutoff} (1 - 1/(p-1)^2) with an integral tail bound.
EulerProduct twin_prime_constant(std::uint64_t cutoff);

/// C_2 to about 1e-9, computed once per process and shared.
double twin_prime_constant_shared();

/// C_2r = C_2 Π_{p|r, p>2} (p-1)/(p-2), with the shared C_2.
double c_2r(std::uint64_t r);
/// Same, with C_2 truncated at `cutoff`.
double c_2r(std::uint64_t r, std::uint64_t cutoff);

/// C_2r / C_2 for r = 1..m (index 0 holds r = 1).
std::vector<double> singular_series_factors(std::uint64_t m);

/// S_m = Σ_{r<=m} C_2r.
double hl_partial_sum(std::uint64_t m);

inline constexpr unsigned kDefaultAveragingWindow = 16;
inline constexpr std::uint64_t kDefaultProductCutoff = 1'000'000;

/// Bateman-Horn constant C(f) = Π_p (1-1/p)^-2 (1 - N_f(p)/p).
///
/// The partial products converge only conditionally, so the log partial
/// sums are sampled at `window` checkpoints spaced geometrically over the
/// last decade below `cutoff` and averaged. error_estimate is half the
/// spread of the sampled products. Reducible f gives exactly 0, as does
/// any vanishing factor (N_f(p) = p).
EulerProduct bateman_horn_constant(const QuadraticSpec& f, std::uint64_t cutoff = kDefaultProductCutoff,
                                   unsigned window = kDefaultAveragingWindow);
/// Same, over a caller-supplied ascending prime list covering `cutoff`.
EulerProduct bateman_horn_constant(const QuadraticSpec& f, std::span<const std::uint64_t> primes,
                                   std::uint64_t cutoff, unsigned window = kDefaultAveragingWindow);

struct CStarConstant {
  std::uint64_t r = 0;
  double value = 0.0;    // (C(f_2r) + C(f_-2r)) / 4
  EulerProduct minus;    // C(n^2 - 2r)
  EulerProduct plus;     // C(n^2 + 2r)
};

CStarConstant c_star_2r(std::uint64_t r, std::uint64_t cutoff = kDefaultProductCutoff,
                        unsigned window = kDefaultAveragingWindow);

/// C*_2r for r = 1..rmax, sharing one prime table.
std::vector<CStarConstant> c_star_table(std::uint64_t rmax, std::uint64_t cutoff = kDefaultProductCutoff,
                                        unsigned window = kDefaultAveragingWindow);

}  // namespace pairlab
