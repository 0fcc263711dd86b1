#include "pairlab/explicit_formula.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "pairlab/constants.hpp"
#include "pairlab/counting.hpp"
#include "pairlab/csv.hpp"
#include "pairlab/logint.hpp"

namespace pairlab {
namespace {

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

void validate(const std::vector<double>& gammas) {
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    if (!(gammas[i] > 14.0) || !std::isfinite(gammas[i])) {
      throw DataError("zero ordinate " + std::to_string(gammas[i]) + " at index " + std::to_string(i) +
                      " is not above 14");
    }
    if (i > 0 && !(gammas[i] > gammas[i - 1])) {
      throw DataError("zero ordinates not strictly ascending at index " + std::to_string(i));
    }
  }
}

void check_count(const ZeroList& zeros, std::size_t count) {
  if (count > zeros.size()) {
    throw DomainError("requested " + std::to_string(count) + " zeros but only " + std::to_string(zeros.size()) +
                      " are loaded");
  }
}

}  // namespace

ZeroList ZeroList::from_values(std::vector<double> gammas, std::string source) {
  validate(gammas);
  if (gammas.empty()) throw DataError("zero list is empty");
  ZeroList out;
  out.gammas = std::move(gammas);
  out.source = std::move(source);
  std::ostringstream bytes;
  for (const double g : out.gammas) bytes << format_real(g) << '\n';
  out.checksum = fnv1a(bytes.str());
  return out;
}

ZeroList load_zeros(const std::filesystem::path& path, std::size_t max_count) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open zeros file " + path.string());
  const std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  ZeroList out;
  out.source = path.string();
  out.checksum = fnv1a(content);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size() && out.gammas.size() < max_count) {
    const std::size_t eol = std::min(content.find('\n', pos), content.size());
    const std::string_view line = trim(std::string_view(content).substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), value);
    if (ec != std::errc() || ptr != line.data() + line.size()) {
      throw ParseError("malformed zero ordinate '" + std::string(line) + "' in " + path.string(), line_no);
    }
    if (!(value > 0.0)) throw ParseError("zero ordinate must be positive in " + path.string(), line_no);
    if (!out.gammas.empty() && !(value > out.gammas.back())) {
      throw DataError("zero ordinates not strictly ascending at line " + std::to_string(line_no) + " of " +
                      path.string());
    }
    out.gammas.push_back(value);
  }
  if (out.gammas.empty()) throw DataError("zeros file " + path.string() + " contains no values");
  validate(out.gammas);
  return out;
}

double zero_power_sum(double x, const ZeroList& zeros, std::size_t count) {
  if (!(x > 1.0)) throw DomainError("zero_power_sum requires x > 1");
  check_count(zeros, count);
  const double log_x = std::log(x);
  const double root_x = std::sqrt(x);
  CompensatedSum<double> sum;
  for (std::size_t k = 0; k < count; ++k) {
    const Complex rho = zeros.rho(k);
    const Complex power = root_x * std::polar(1.0, zeros.gammas[k] * log_x);
    sum += 2.0 * (power / rho).real();
  }
  return sum.value();
}

double psi_explicit(double x, const ZeroList& zeros, std::size_t count) {
  if (!(x > 1.0)) throw DomainError("psi_explicit requires x > 1");
  // -ζ'(0)/ζ(0) = -log 2π; Σ_k x^{-2k}/2k = -(1/2) log(1 - x^-2).
  return x - zero_power_sum(x, zeros, count) - std::log(2.0 * kPi) - 0.5 * std::log1p(-1.0 / (x * x));
}

double psi2r_explicit(double x, std::uint64_t r, const ZeroList& zeros, std::size_t count) {
  const double c = c_2r(r);
  return 2.0 * c * x - 4.0 * c * zero_power_sum(x, zeros, count);
}

double theta2r_explicit(double x, std::uint64_t r, double c_star, const ZeroList& zeros, std::size_t count) {
  const double c = c_2r(r);
  return 2.0 * c * x - 4.0 * c_star * std::sqrt(x) - 4.0 * c * zero_power_sum(x, zeros, count);
}

double pi2r_zero_term(double x, std::uint64_t r, const ZeroList& zeros, std::size_t count) {
  if (!(x > 4.0)) throw DomainError("pi2r_explicit requires x > 4");
  check_count(zeros, count);
  CompensatedSum<double> sum;
  for (std::size_t k = 0; k < count; ++k) {
    const Complex rho = zeros.rho(k);
    sum += 2.0 * (rho * li2_complex_power(x, rho)).real();
  }
  return -4.0 * c_2r(r) * sum.value();
}

double pi2r_explicit(double x, std::uint64_t r, double c_star, const ZeroList& zeros, std::size_t count) {
  const double zero_term = pi2r_zero_term(x, r, zeros, count);
  return 2.0 * c_2r(r) * li2(x) - c_star * li2(std::sqrt(x)) + zero_term;
}

double pi2r_imaginary_residue(double x, const ZeroList& zeros, std::size_t count) {
  check_count(zeros, count);
  CompensatedSum<double> sum;
  for (std::size_t k = 0; k < count; ++k) {
    const Complex rho = zeros.rho(k);
    const Complex pair = rho * li2_complex_power(x, rho) + std::conj(rho) * li2_complex_power(x, std::conj(rho));
    sum += pair.imag();
  }
  return sum.value();
}

double pi_riemann_approx(double x, const ZeroList& zeros, std::size_t count) {
  if (!(x > 4.0)) throw DomainError("pi_riemann_approx requires x > 4");
  check_count(zeros, count);
  CompensatedSum<double> sum;
  for (std::size_t k = 0; k < count; ++k) sum += 2.0 * li_complex_power(x, zeros.rho(k)).real();
  return li(x) - 0.5 * li(std::sqrt(x)) - sum.value();
}

double Li2Cache::operator()(double x) {
  if (const auto it = values_.find(x); it != values_.end()) {
    ++hits_;
    return it->second;
  }
  ++misses_;
  const double v = li2(x);
  values_.emplace(x, v);
  return v;
}

std::vector<RemainderRow> remainder_scan(const Sieve& sieve, std::uint64_t r, double c_star,
                                         std::span<const double> grid, const ZeroList& zeros, std::size_t count,
                                         Li2Cache& cache) {
  std::vector<RemainderRow> rows;
  if (grid.empty()) return rows;
  for (const double x : grid) {
    if (!(x > 4.0)) throw DomainError("remainder_scan requires grid points above 4");
  }
  const auto pairs = pair_count_series(sieve, CountKind::pi_2r, r, grid);
  const double c = c_2r(r);
  rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    RemainderRow row;
    row.x = grid[i];
    row.pairs = static_cast<std::uint64_t>(pairs.values[i]);
    row.e2r = pairs.values[i] - 2.0 * c * cache(row.x);
    const double log_x = std::log(row.x);
    row.normalized = row.e2r * log_x * log_x / std::sqrt(row.x);
    row.zero_term = pi2r_zero_term(row.x, r, zeros, count);
    row.predicted = -c_star * cache(std::sqrt(row.x)) + row.zero_term;
    rows.push_back(row);
  }
  return rows;
}

Table remainder_table(std::uint64_t r, std::size_t count, const ZeroList& zeros, std::span<const RemainderRow> rows) {
  Table table;
  table.comments = {
      "formula=e_2r(x) = pi_2r(x) - 2 C_2r li_2(x); predicted = -C*_2r li_2(sqrt x) - 4 C_2r sum rho li_2(x^rho)",
      "r=" + std::to_string(r) + " K=" + std::to_string(count),
      "zeros_checksum=" + std::to_string(zeros.checksum)};
  table.columns = {"x", "pi_2r", "e_2r", "e_2r_log2x_over_sqrtx", "zero_term", "predicted_e_2r"};
  for (const auto& row : rows) {
    table.add_row({row.x, row.pairs, row.e2r, row.normalized, row.zero_term, row.predicted});
  }
  return table;
}

void write_remainder_csv(std::ostream& out, std::uint64_t r, std::size_t count, const ZeroList& zeros,
                         std::span<const RemainderRow> rows) {
  write_csv(out, remainder_table(r, count, zeros, rows));
}

}  // namespace pairlab
