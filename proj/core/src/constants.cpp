#include "pairlab/constants.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "pairlab/logint.hpp"
#include "pairlab/numeric.hpp"
#include "pairlab/sieve.hpp"

namespace pairlab {
namespace {

// Partial summation with π(t) < 1.25506 t / log t bounds Σ_{p>P} 1/(p-1)^2.
double twin_tail_bound(std::uint64_t cutoff) {
  const auto p = static_cast<double>(cutoff);
  return 2.52 / ((p - 1.0) * std::log(p));
}

std::vector<std::uint64_t> odd_prime_factors(std::uint64_t r) {
  std::vector<std::uint64_t> out;
  while (r % 2 == 0) r /= 2;
  for (std::uint64_t p = 3; p * p <= r; p += 2) {
    if (r % p != 0) continue;
    out.push_back(p);
    while (r % p == 0) r /= p;
  }
  if (r > 1) out.push_back(r);
  return out;
}

std::vector<std::uint64_t> checkpoints(std::uint64_t cutoff, unsigned window) {
  std::vector<std::uint64_t> out;
  out.reserve(window);
  for (unsigned j = 0; j < window; ++j) {
    const double at = static_cast<double>(cutoff) * std::pow(10.0, -static_cast<double>(j) / window);
    out.push_back(std::max<std::uint64_t>(2, static_cast<std::uint64_t>(at)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

QuadraticSpec::QuadraticSpec(std::int64_t c) : c_(c) {
  if (c == 0) throw DomainError("quadratic n^2 + c requires c != 0");
  if (c > (std::int64_t{1} << 62) || c < -(std::int64_t{1} << 62)) {
    throw CapacityError("quadratic constant out of range");
  }
}

QuadraticSpec QuadraticSpec::parse(std::string_view text) {
  std::string s;
  for (const char ch : text) {
    if (ch != ' ' && ch != '\t') s.push_back(ch);
  }
  std::string_view rest(s);
  if (rest.starts_with("n^2")) {
    rest.remove_prefix(3);
  } else if (rest.starts_with("n**2")) {
    rest.remove_prefix(4);
  } else {
    throw DomainError("only quadratics of the form n^2+c are supported, got '" + std::string(text) + "'");
  }
  if (rest.empty() || (rest[0] != '+' && rest[0] != '-')) {
    throw DomainError("only quadratics of the form n^2+c are supported, got '" + std::string(text) + "'");
  }
  const bool negative = rest[0] == '-';
  rest.remove_prefix(1);
  std::int64_t magnitude = 0;
  const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), magnitude);
  if (ec != std::errc() || ptr != rest.data() + rest.size() || magnitude <= 0) {
    throw DomainError("only quadratics of the form n^2+c are supported, got '" + std::string(text) + "'");
  }
  return QuadraticSpec(negative ? -magnitude : magnitude);
}

bool QuadraticSpec::reducible() const noexcept {
  if (c_ > 0) return false;
  const auto m = static_cast<std::uint64_t>(-c_);
  const std::uint64_t root = integer_root(m, 2);
  return root * root == m;
}

std::uint64_t QuadraticSpec::value_mod(std::uint64_t n, std::uint64_t m) const noexcept {
  const auto mm = static_cast<__int128>(m);
  __int128 v = static_cast<__int128>(n % m) * static_cast<__int128>(n % m) + c_;
  v %= mm;
  if (v < 0) v += mm;
  return static_cast<std::uint64_t>(v);
}

std::string QuadraticSpec::to_string() const {
  return c_ < 0 ? "n^2-" + std::to_string(-c_) : "n^2+" + std::to_string(c_);
}

int jacobi(std::int64_t a, std::uint64_t n) {
  if (n == 0 || n % 2 == 0) throw DomainError("jacobi symbol requires odd n >= 1");
  std::int64_t reduced = a % static_cast<std::int64_t>(n);
  if (reduced < 0) reduced += static_cast<std::int64_t>(n);
  auto x = static_cast<std::uint64_t>(reduced);
  int sign = 1;
  while (x != 0) {
    const int twos = std::countr_zero(x);
    x >>= twos;
    // (2/n) = -1 iff n ≡ 3, 5 (mod 8).
    if ((twos & 1) != 0 && (n % 8 == 3 || n % 8 == 5)) sign = -sign;
    if (x % 4 == 3 && n % 4 == 3) sign = -sign;
    std::swap(x, n);
    x %= n;
  }
  return n == 1 ? sign : 0;
}

std::uint64_t nf_p_enumerate(const QuadraticSpec& f, std::uint64_t p) {
  std::uint64_t count = 0;
  for (std::uint64_t n = 1; n <= p; ++n) {
    if (n % p == 0 || f.value_mod(n, p) == 0) ++count;
  }
  return count;
}

std::uint64_t nf_p_formula(const QuadraticSpec& f, std::uint64_t p) {
  if (p == 2) return nf_p_enumerate(f, p);
  const std::int64_t c_mod = f.c() % static_cast<std::int64_t>(p);
  // n ≡ 0 always counts; when p | c it is also the only root of n^2 ≡ -c.
  if (c_mod == 0) return 1;
  return static_cast<std::uint64_t>(2 + jacobi(-f.c(), p));
}

std::uint64_t nf_p(const QuadraticSpec& f, std::uint64_t p) {
  return p < 1000 ? nf_p_enumerate(f, p) : nf_p_formula(f, p);
}

bool legendre_check(const QuadraticSpec& f, std::uint64_t p) {
  if (f.c() >= 0 || f.c() % 2 != 0) throw DomainError("legendre_check expects f(n) = n^2 - 2r");
  if (p % 2 == 0) throw DomainError("legendre_check expects an odd prime");
  const auto two_r = static_cast<std::uint64_t>(-f.c());
  if (two_r % p == 0) throw DomainError("legendre_check requires p not dividing 2r");
  const auto n = static_cast<std::int64_t>(nf_p(f, p));
  return n - 2 == jacobi(static_cast<std::int64_t>(two_r), p);
}

EulerProduct twin_prime_constant(std::uint64_t cutoff) {
  if (cutoff < 3) throw DomainError("twin_prime_constant requires cutoff >= 3");
  Sieve sieve(cutoff);
  CompensatedSum<double> log_sum;
  sieve.for_each_prime(3, cutoff, [&](std::uint64_t p) {
    const double q = static_cast<double>(p - 1);
    log_sum += std::log1p(-1.0 / (q * q));
  });
  EulerProduct out;
  out.value = std::exp(log_sum.value());
  out.cutoff = cutoff;
  out.error_estimate = out.value * -std::expm1(-twin_tail_bound(cutoff));
  out.mode = ConvergenceMode::absolute;
  return out;
}

double twin_prime_constant_shared() {
  static const double value = [] {
    // Truncate at 2^24 and add the density estimate ∫_P^∞ dt/(t^2 log t)
    // = E_1(log P) for the missing tail.
    constexpr std::uint64_t cutoff = std::uint64_t{1} << 24;
    const EulerProduct partial = twin_prime_constant(cutoff);
    const double e1 = -ei(Complex(-std::log(static_cast<double>(cutoff)), 0.0)).real();
    return partial.value * std::exp(-e1);
  }();
  return value;
}

double c_2r(std::uint64_t r) {
  if (r == 0) throw DomainError("c_2r requires r >= 1");
  double value = twin_prime_constant_shared();
  for (const auto p : odd_prime_factors(r)) value *= static_cast<double>(p - 1) / static_cast<double>(p - 2);
  return value;
}

double c_2r(std::uint64_t r, std::uint64_t cutoff) {
  if (r == 0) throw DomainError("c_2r requires r >= 1");
  double value = twin_prime_constant(cutoff).value;
  for (const auto p : odd_prime_factors(r)) value *= static_cast<double>(p - 1) / static_cast<double>(p - 2);
  return value;
}

std::vector<double> singular_series_factors(std::uint64_t m) {
  std::vector<double> factors(m, 1.0);
  if (m < 3) return factors;
  Sieve sieve(m);
  sieve.for_each_prime(3, m, [&](std::uint64_t p) {
    const double f = static_cast<double>(p - 1) / static_cast<double>(p - 2);
    for (std::uint64_t r = p; r <= m; r += p) factors[r - 1] *= f;
  });
  return factors;
}

double hl_partial_sum(std::uint64_t m) {
  if (m == 0) throw DomainError("hl_partial_sum requires m >= 1");
  CompensatedSum<double> sum;
  for (const double f : singular_series_factors(m)) sum += f;
  return twin_prime_constant_shared() * sum.value();
}

EulerProduct bateman_horn_constant(const QuadraticSpec& f, std::span<const std::uint64_t> primes,
                                   std::uint64_t cutoff, unsigned window) {
  if (cutoff < 2) throw DomainError("bateman_horn_constant requires cutoff >= 2");
  if (window == 0) throw DomainError("averaging window must be positive");
  EulerProduct out;
  out.cutoff = cutoff;
  out.mode = ConvergenceMode::character_averaged;
  if (f.reducible()) return out;
  if (primes.empty()) throw CapacityError("empty prime table for Euler product");

  const auto marks = checkpoints(cutoff, window);
  std::vector<double> samples;
  samples.reserve(marks.size());
  std::size_t next = 0;
  CompensatedSum<double> log_sum;
  for (const std::uint64_t p : primes) {
    if (p > cutoff) break;
    while (next < marks.size() && marks[next] < p) {
      samples.push_back(log_sum.value());
      ++next;
    }
    const std::uint64_t n = nf_p(f, p);
    if (n == p) return out;
    const double inv = 1.0 / static_cast<double>(p);
    log_sum += -2.0 * std::log1p(-inv) + std::log1p(-static_cast<double>(n) * inv);
  }
  while (samples.size() < marks.size()) samples.push_back(log_sum.value());

  CompensatedSum<double> mean;
  for (const double s : samples) mean += s;
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  out.value = std::exp(mean.value() / static_cast<double>(samples.size()));
  out.error_estimate = 0.5 * (std::exp(*hi) - std::exp(*lo));
  return out;
}

EulerProduct bateman_horn_constant(const QuadraticSpec& f, std::uint64_t cutoff, unsigned window) {
  if (f.reducible()) {
    EulerProduct out;
    out.cutoff = cutoff;
    out.mode = ConvergenceMode::character_averaged;
    return out;
  }
  const auto primes = primes_up_to(cutoff);
  return bateman_horn_constant(f, primes, cutoff, window);
}

std::vector<CStarConstant> c_star_table(std::uint64_t rmax, std::uint64_t cutoff, unsigned window) {
  const auto primes = primes_up_to(cutoff);
  std::vector<CStarConstant> out;
  out.reserve(rmax);
  for (std::uint64_t r = 1; r <= rmax; ++r) {
    CStarConstant c;
    c.r = r;
    c.minus = bateman_horn_constant(QuadraticSpec::minus_gap(r), primes, cutoff, window);
    c.plus = bateman_horn_constant(QuadraticSpec::plus_gap(r), primes, cutoff, window);
    c.value = (c.minus.value + c.plus.value) / 4.0;
    out.push_back(c);
  }
  return out;
}

CStarConstant c_star_2r(std::uint64_t r, std::uint64_t cutoff, unsigned window) {
  if (r == 0) throw DomainError("c_star_2r requires r >= 1");
  const auto primes = primes_up_to(cutoff);
  CStarConstant c;
  c.r = r;
  c.minus = bateman_horn_constant(QuadraticSpec::minus_gap(r), primes, cutoff, window);
  c.plus = bateman_horn_constant(QuadraticSpec::plus_gap(r), primes, cutoff, window);
  c.value = (c.minus.value + c.plus.value) / 4.0;
  return c;
}

}  // namespace pairlab
