#include "pairlab/dseries.hpp"

#include <cmath>
#include <limits>

#include "pairlab/constants.hpp"
#include "pairlab/counting.hpp"
#include "pairlab/csv.hpp"

namespace pairlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_s(Complex s, double min_sigma, const char* name, const char* region) {
  require_finite(s, name);
  if (!(s.real() > min_sigma)) throw DomainError(std::string(name) + " requires Re s > " + region);
}

void check_r(std::uint64_t r, const char* name) {
  if (r == 0) throw DomainError(std::string(name) + " requires r >= 1");
  if (r > (std::uint64_t{1} << 40)) throw CapacityError(std::string(name) + ": r too large");
}

Complex power_minus(double log_n, Complex s) { return std::exp(-s * log_n); }

// Bound on Σ_{n>N} of terms at most weight · log n · log(n+shift) · n^{-a}.
double tail_bound(std::uint64_t N, double a, double weight, std::uint64_t shift) {
  if (!(a > 1.0)) return kInf;
  auto inflation = [&](double n) { return shift == 0 ? 1.0 : std::log(n + static_cast<double>(shift)) / std::log(n); };
  // log^2 t · t^{-a} decreases only beyond e^{2/a}; sum the terms below that directly.
  const auto start = static_cast<std::uint64_t>(std::ceil(std::exp(2.0 / a)));
  const std::uint64_t m = std::max<std::uint64_t>({N, start, 2});
  CompensatedSum<double> head;
  for (std::uint64_t n = N + 1; n <= m; ++n) {
    const double x = static_cast<double>(n);
    const double l = std::log(x);
    head += inflation(x) * l * l * std::pow(x, -a);
  }
  const double md = static_cast<double>(m);
  return weight * (head.value() + inflation(md) * log_squared_tail(md, a));
}

Complex sum_d2r(const Sieve& sieve, Complex s, std::uint64_t r, std::uint64_t N, Denominator denominator) {
  if (N > kIntegerCeiling - 2 * r) throw CapacityError("N + 2r exceeds 2^63");
  sieve.require_within(N + 2 * r);
  const bool square = r == 0 || denominator == Denominator::square;
  CompensatedSum<Complex> sum;
  sieve.for_each_prime(2, N, [&](std::uint64_t p) {
    const double log_p = std::log(static_cast<double>(p));
    for (unsigned __int128 n = p; n <= N; n *= p) {
      const auto nn = static_cast<std::uint64_t>(n);
      const double partner = sieve.von_mangoldt(nn + 2 * r);
      if (partner == 0.0) continue;
      const double log_n = std::log(static_cast<double>(nn));
      const double log_m = square ? log_n : std::log(static_cast<double>(nn + 2 * r));
      sum += log_p * partner * power_minus(log_n + log_m, s);
    }
  });
  return sum.value();
}

Complex sum_d0_pair(const Sieve& sieve, Complex s, std::uint64_t r, std::uint64_t N) {
  CompensatedSum<Complex> sum;
  sieve.for_each_prime(2, N, [&](std::uint64_t p) {
    if (!sieve.is_prime(p + 2 * r)) return;
    const double log_p = std::log(static_cast<double>(p));
    sum += log_p * log_p * power_minus(2.0 * log_p, s);
  });
  return sum.value();
}

Complex sum_d_star(const Sieve& sieve, Complex s, std::uint64_t r, std::uint64_t N) {
  CompensatedSum<Complex> sum;
  sieve.for_each_prime(2, N, [&](std::uint64_t q) {
    const unsigned m = star_multiplicity(sieve, q, r);
    if (m == 0) return;
    const double log_q = std::log(static_cast<double>(q));
    sum += static_cast<double>(m) * log_q * log_q * power_minus(4.0 * log_q, s);
  });
  return sum.value();
}

}  // namespace

double log_squared_tail(double N, double a) {
  if (!(a > 1.0)) return kInf;
  const double l = std::log(N);
  const double b = a - 1.0;
  return std::pow(N, -b) * (l * l / b + 2.0 * l / (b * b) + 2.0 / (b * b * b));
}

TruncatedSeries d_2r(const Sieve& sieve, Complex s, std::uint64_t r, std::uint64_t N, Denominator denominator) {
  check_s(s, 0.5, "d_2r", "1/2");
  if (N < 1) throw DomainError("d_2r requires N >= 1");
  TruncatedSeries out{s, r, N, sum_d2r(sieve, s, r, N, denominator), 0.0, false};
  out.tail_bound = tail_bound(N, 2.0 * s.real(), 1.0, 2 * r);
  return out;
}

TruncatedSeries d0_pair(const Sieve& sieve, Complex s, std::uint64_t r, std::uint64_t N) {
  check_s(s, 0.25, "d0_pair", "1/4");
  check_r(r, "d0_pair");
  if (N < 1) throw DomainError("d0_pair requires N >= 1");
  TruncatedSeries out{s, r, N, sum_d0_pair(sieve, s, r, N), 0.0, false};
  out.unreliable_tail = !(s.real() > 0.5);
  out.tail_bound = out.unreliable_tail ? kInf : tail_bound(N, 2.0 * s.real(), 1.0, 0);
  return out;
}

TruncatedSeries d_star(const Sieve& sieve, Complex s, std::uint64_t r, std::uint64_t N) {
  check_s(s, 0.25, "d_star", "1/4");
  check_r(r, "d_star");
  if (N < 2) throw DomainError("d_star requires N >= 2");
  TruncatedSeries out{s, r, N, sum_d_star(sieve, s, r, N), 0.0, false};
  out.tail_bound = tail_bound(N, 4.0 * s.real(), 2.0, 0);
  return out;
}

Complex g_2r(const Sieve& sieve, Complex s, std::uint64_t r, std::uint64_t N) {
  check_r(r, "g_2r");
  const TruncatedSeries d = d_2r(sieve, s, r, N);
  const Complex denominator = 2.0 * s - 1.0;
  if (std::abs(denominator) == 0.0) throw PoleError("g_2r: pole at s = 1/2");
  return d.value - 2.0 * c_2r(r) / denominator;
}

TruncatedSeries lemma_remainder(const Sieve& sieve, Complex s, std::uint64_t r, std::uint64_t N) {
  check_s(s, 1.0 / 6.0, "lemma_remainder", "1/6");
  check_r(r, "lemma_remainder");
  if (N < 4) throw DomainError("lemma_remainder requires N >= 4");
  CompensatedSum<Complex> total;
  total += sum_d2r(sieve, s, r, N, Denominator::pair);
  total += -sum_d0_pair(sieve, s, r, N);
  total += -2.0 * sum_d_star(sieve, s, r, integer_root(N, 2));
  return TruncatedSeries{s, r, N, total.value(), kInf, true};
}

Table series_scan_table(std::string_view series_name, std::span<const TruncatedSeries> rows) {
  Table table;
  table.comments.push_back("series=" + std::string(series_name));
  table.columns = {"sigma", "tau", "r", "N", "value_re", "value_im", "tail_bound", "flags"};
  for (const auto& row : rows) {
    table.add_row({row.s.real(), row.s.imag(), row.r, row.N, row.value.real(), row.value.imag(), row.tail_bound,
                   row.flags()});
  }
  return table;
}

void write_series_scan_csv(std::ostream& out, std::string_view series_name, std::span<const TruncatedSeries> rows) {
  write_csv(out, series_scan_table(series_name, rows));
}

}  // namespace pairlab
