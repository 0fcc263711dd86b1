#include "pairlab/counting.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <type_traits>

#include "pairlab/csv.hpp"
#include "pairlab/logint.hpp"
#include "pairlab/numeric.hpp"

namespace pairlab {
namespace {

std::uint64_t floor_arg(double x, const char* name) {
  if (!std::isfinite(x) || x < 0.0) throw DomainError(std::string(name) + " requires finite x >= 0");
  if (x >= 9.2e18) throw CapacityError(std::string(name) + ": x exceeds 2^63");
  return static_cast<std::uint64_t>(std::floor(x));
}

void check_gap(std::uint64_t r, const char* name) {
  if (r == 0) throw DomainError(std::string(name) + " requires r >= 1");
  if (r > (std::uint64_t{1} << 60)) throw CapacityError(std::string(name) + ": r too large");
}

// Splits [a, b] into blocks aligned with the sieve segments, evaluates
// them (in parallel when the sieve was configured with threads), and
// combines the partial results in block order.
template <class T, class Fn>
T reduce_blocks(const Sieve& sieve, std::uint64_t a, std::uint64_t b, Fn&& fn) {
  if (a > b) return T{};
  sieve.require_within(b);
  const std::uint64_t block = sieve.options().segment_size;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
  for (std::uint64_t lo = a; lo <= b;) {
    const std::uint64_t hi = std::min(b, (lo / block + 1) * block - 1);
    ranges.emplace_back(lo, hi);
    if (hi == b) break;
    lo = hi + 1;
  }
  std::vector<T> partial(ranges.size());
  const unsigned workers =
      std::max(1U, std::min<unsigned>(sieve.options().threads, static_cast<unsigned>(ranges.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < ranges.size(); ++i) partial[i] = fn(ranges[i].first, ranges[i].second);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < ranges.size(); i = next++) partial[i] = fn(ranges[i].first, ranges[i].second);
      });
    }
  }
  if constexpr (std::is_integral_v<T>) {
    T total{};
    for (const T v : partial) total += v;
    return total;
  } else {
    CompensatedSum<T> total;
    for (const T v : partial) total += v;
    return total.value();
  }
}

double log_squared(std::uint64_t p) {
  const double l = std::log(static_cast<double>(p));
  return l * l;
}

bool quadratic_value_prime(const Sieve& sieve, std::uint64_t p, const QuadraticSpec& f) {
  const __int128 v = static_cast<__int128>(p) * static_cast<__int128>(p) + f.c();
  if (v < 2) return false;
  if (v >= static_cast<__int128>(kIntegerCeiling)) throw CapacityError("f(p) exceeds 2^63");
  return sieve.is_prime(static_cast<std::uint64_t>(v));
}

std::uint64_t range_pairs(const Sieve& sieve, std::uint64_t a, std::uint64_t b, std::uint64_t r) {
  return reduce_blocks<std::uint64_t>(sieve, a, b, [&](std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t count = 0;
    sieve.for_each_prime(lo, hi, [&](std::uint64_t p) {
      if (sieve.is_prime(p + 2 * r)) ++count;
    });
    return count;
  });
}

double range_theta(const Sieve& sieve, std::uint64_t a, std::uint64_t b, std::uint64_t r) {
  return reduce_blocks<double>(sieve, a, b, [&](std::uint64_t lo, std::uint64_t hi) {
    CompensatedSum<double> sum;
    sieve.for_each_prime(lo, hi, [&](std::uint64_t p) {
      if (sieve.is_prime(p + 2 * r)) sum += log_squared(p);
    });
    return sum.value();
  });
}

double range_psi(const Sieve& sieve, std::uint64_t a, std::uint64_t b, std::uint64_t r) {
  CompensatedSum<double> total;
  total += reduce_blocks<double>(sieve, a, b, [&](std::uint64_t lo, std::uint64_t hi) {
    CompensatedSum<double> sum;
    sieve.for_each_prime(lo, hi, [&](std::uint64_t p) {
      const double partner = sieve.von_mangoldt(p + 2 * r);
      if (partner != 0.0) sum += std::log(static_cast<double>(p)) * partner;
    });
    return sum.value();
  });
  if (a > b) return total.value();
  // Higher prime powers p^k in [a, b], k >= 2.
  sieve.for_each_prime(2, integer_root(b, 2), [&](std::uint64_t p) {
    const double log_p = std::log(static_cast<double>(p));
    for (unsigned __int128 n = static_cast<unsigned __int128>(p) * p; n <= b; n *= p) {
      if (n < a) continue;
      const double partner = sieve.von_mangoldt(static_cast<std::uint64_t>(n) + 2 * r);
      if (partner != 0.0) total += log_p * partner;
    }
  });
  return total.value();
}

double range_theta_star(const Sieve& sieve, std::uint64_t a, std::uint64_t b, std::uint64_t r) {
  return reduce_blocks<double>(sieve, a, b, [&](std::uint64_t lo, std::uint64_t hi) {
    CompensatedSum<double> sum;
    sieve.for_each_prime(lo, hi, [&](std::uint64_t q) {
      const unsigned m = star_multiplicity(sieve, q, r);
      if (m != 0) sum += m * log_squared(q);
    });
    return sum.value();
  });
}

std::uint64_t range_pi_f(const Sieve& sieve, std::uint64_t a, std::uint64_t b, const QuadraticSpec& f) {
  return reduce_blocks<std::uint64_t>(sieve, a, b, [&](std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t count = 0;
    sieve.for_each_prime(lo, hi, [&](std::uint64_t p) {
      if (quadratic_value_prime(sieve, p, f)) ++count;
    });
    return count;
  });
}

}  // namespace

unsigned star_multiplicity(const Sieve& sieve, std::uint64_t q, std::uint64_t r) {
  const unsigned __int128 square = static_cast<unsigned __int128>(q) * q;
  const unsigned __int128 plus = square + 2 * r;
  if (plus >= kIntegerCeiling) throw CapacityError("q^2 + 2r exceeds 2^63");
  unsigned m = sieve.is_prime(static_cast<std::uint64_t>(plus)) ? 1U : 0U;
  if (square >= 2 * static_cast<unsigned __int128>(r) + 2) {
    if (sieve.is_prime(static_cast<std::uint64_t>(square - 2 * r))) ++m;
  }
  return m;
}

double chebyshev_psi(const Sieve& sieve, double x) {
  const std::uint64_t n = floor_arg(x, "chebyshev_psi");
  CompensatedSum<double> sum;
  sieve.for_each_prime(2, n, [&](std::uint64_t p) {
    const double log_p = std::log(static_cast<double>(p));
    for (unsigned __int128 q = p; q <= n; q *= p) sum += log_p;
  });
  return sum.value();
}

std::uint64_t pi_2r(const Sieve& sieve, double x, std::uint64_t r) {
  check_gap(r, "pi_2r");
  return range_pairs(sieve, 0, floor_arg(x, "pi_2r"), r);
}

double psi_2r(const Sieve& sieve, double x, std::uint64_t r) {
  check_gap(r, "psi_2r");
  return range_psi(sieve, 0, floor_arg(x, "psi_2r"), r);
}

double theta_2r(const Sieve& sieve, double x, std::uint64_t r) {
  check_gap(r, "theta_2r");
  return range_theta(sieve, 0, floor_arg(x, "theta_2r"), r);
}

double theta_star_2r(const Sieve& sieve, double x, std::uint64_t r) {
  check_gap(r, "theta_star_2r");
  return range_theta_star(sieve, 0, floor_arg(x, "theta_star_2r"), r);
}

std::uint64_t pi_f(const Sieve& sieve, double x, const QuadraticSpec& f) {
  return range_pi_f(sieve, 0, floor_arg(x, "pi_f"), f);
}

std::uint64_t pi_star_2r(const Sieve& sieve, double x, std::uint64_t r) {
  check_gap(r, "pi_star_2r");
  return pi_f(sieve, x, QuadraticSpec::minus_gap(r)) + pi_f(sieve, x, QuadraticSpec::plus_gap(r));
}

double remainder_e2r(const Sieve& sieve, double x, std::uint64_t r) {
  if (!(x >= 2.0)) throw DomainError("remainder_e2r requires x >= 2");
  const double count = static_cast<double>(pi_2r(sieve, x, r));
  return count - 2.0 * c_2r(r) * li2(x);
}

double psi_decomposition_check(const Sieve& sieve, double x, std::uint64_t r) {
  if (!(x >= 4.0)) throw DomainError("psi_decomposition_check requires x >= 4");
  return psi_2r(sieve, x, r) - theta_2r(sieve, x, r) - 2.0 * theta_star_2r(sieve, std::sqrt(x), r);
}

std::string to_string(CountKind kind) {
  switch (kind) {
    case CountKind::pi_2r: return "pi_2r";
    case CountKind::psi_2r: return "psi_2r";
    case CountKind::theta_2r: return "theta_2r";
    case CountKind::theta_star_2r: return "theta_star_2r";
    case CountKind::pi_f: return "pi_f";
    case CountKind::pi_star_2r: return "pi_star_2r";
  }
  return "unknown";
}

PairCountSeries pair_count_series(const Sieve& sieve, CountKind kind, std::uint64_t r, std::span<const double> grid,
                                  std::optional<QuadraticSpec> f) {
  PairCountSeries series;
  series.kind = kind;
  series.r = kind == CountKind::pi_f ? 0 : r;
  series.f = f;
  series.grid.assign(grid.begin(), grid.end());
  series.values.reserve(grid.size());
  if (kind == CountKind::pi_f && !f) throw DomainError("pi_f series requires a quadratic");
  if (kind != CountKind::pi_f) check_gap(r, "pair_count_series");

  std::uint64_t exact = 0;
  CompensatedSum<double> real;
  std::uint64_t done = 0;  // values cover n <= done - 1
  double previous = -1.0;
  for (const double x : grid) {
    if (x < previous) throw DomainError("series grid must be ascending");
    previous = x;
    const std::uint64_t upto = floor_arg(x, "pair_count_series");
    if (upto + 1 > done) {
      const std::uint64_t a = done;
      switch (kind) {
        case CountKind::pi_2r: exact += range_pairs(sieve, a, upto, r); break;
        case CountKind::pi_f: exact += range_pi_f(sieve, a, upto, *f); break;
        case CountKind::pi_star_2r:
          exact += range_pi_f(sieve, a, upto, QuadraticSpec::minus_gap(r)) +
                   range_pi_f(sieve, a, upto, QuadraticSpec::plus_gap(r));
          break;
        case CountKind::psi_2r: real += range_psi(sieve, a, upto, r); break;
        case CountKind::theta_2r: real += range_theta(sieve, a, upto, r); break;
        case CountKind::theta_star_2r: real += range_theta_star(sieve, a, upto, r); break;
      }
      done = upto + 1;
    }
    series.values.push_back(series.integer_valued() ? static_cast<double>(exact) : real.value());
  }
  return series;
}

Table series_table(const PairCountSeries& series, std::span<const double> normalization,
                   std::string_view normalization_label) {
  if (!normalization.empty() && normalization.size() != series.grid.size()) {
    throw DomainError("normalization length does not match the grid");
  }
  Table table;
  table.comments.push_back("function=" + to_string(series.kind));
  table.comments.push_back(series.f ? "f=" + series.f->to_string() : "r=" + std::to_string(series.r));
  table.comments.push_back("multiplicity=once per prime among q^2-2r (if >= 2) and q^2+2r");
  table.comments.push_back("x_convention=n <= floor(x)");
  table.columns = {"x", "value"};
  if (!normalization.empty()) {
    table.columns.emplace_back(normalization_label.empty() ? std::string_view("normalized") : normalization_label);
  }
  for (std::size_t i = 0; i < series.grid.size(); ++i) {
    std::vector<Cell> cells{series.grid[i], series.values[i]};
    if (!normalization.empty()) cells.emplace_back(normalization[i]);
    table.add_row(std::move(cells));
  }
  return table;
}

void write_series_csv(std::ostream& out, const PairCountSeries& series, std::span<const double> normalization,
                      std::string_view normalization_label) {
  write_csv(out, series_table(series, normalization, normalization_label));
}

}  // namespace pairlab
