#include "pairlab/kernels.hpp"

#include <cmath>

#include "pairlab/csv.hpp"
#include "pairlab/quadrature.hpp"

namespace pairlab {
namespace {

constexpr int kMeshLevels = 60;
constexpr double kPoleRadius = 1e-6;

double jackson_unit(double nu) {
  const double a = std::abs(nu);
  if (a <= 0.5) return 1.0 - 6.0 * a * a + 6.0 * a * a * a;
  if (a <= 1.0) {
    const double b = 1.0 - a;
    return 2.0 * b * b * b;
  }
  return 0.0;
}

std::size_t gap_count(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be positive and finite");
  return static_cast<std::size_t>(std::floor(lambda / 2.0));
}

std::vector<double> hardy_littlewood_constants(std::size_t count) {
  std::vector<double> c = singular_series_factors(count);
  const double c2 = twin_prime_constant_shared();
  for (double& v : c) v *= c2;
  return c;
}

}  // namespace

KernelSpec::KernelSpec(std::string name, Function evaluate) : name_(std::move(name)), evaluate_(std::move(evaluate)) {
  if (!evaluate_) throw DomainError("kernel function is empty");
  moment_ = kernel_moment(*this);
}

KernelSpec KernelSpec::jackson() { return KernelSpec("jackson", jackson_unit); }

std::optional<std::string> kernel_axiom_violation(const KernelSpec& kernel, std::size_t points) {
  if (std::abs(kernel(0.0) - 1.0) > 1e-12) return "E(0) != 1";
  for (std::size_t i = 0; i <= points; ++i) {
    const double nu = static_cast<double>(i) / static_cast<double>(points);
    const double left = kernel(-nu);
    const double right = kernel(nu);
    if (!std::isfinite(right)) return "E is not finite at nu=" + std::to_string(nu);
    if (std::abs(left - right) > 1e-12) return "E is not even at nu=" + std::to_string(nu);
    const double outside = 1.0 + nu;
    if (kernel(outside) != 0.0 || kernel(-outside) != 0.0) return "E is nonzero outside [-1, 1]";
  }
  return std::nullopt;
}

KernelRegistry::KernelRegistry() { kernels_.emplace("jackson", KernelSpec::jackson()); }

void KernelRegistry::add(KernelSpec kernel) {
  if (const auto why = kernel_axiom_violation(kernel)) {
    throw DomainError("kernel '" + kernel.name() + "' rejected: " + *why);
  }
  const std::string name = kernel.name();
  kernels_.insert_or_assign(name, std::move(kernel));
}

const KernelSpec& KernelRegistry::get(const std::string& name) const {
  const auto it = kernels_.find(name);
  if (it == kernels_.end()) throw DomainError("unknown kernel '" + name + "'");
  return it->second;
}

std::vector<std::string> KernelRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : kernels_) out.push_back(name);
  return out;
}

double jackson_E(double nu, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("jackson_E requires lambda > 0");
  return jackson_unit(nu / lambda);
}

double kernel_moment(const KernelSpec& kernel) {
  auto f = [&](double nu) { return kernel(nu); };
  // Split at 1/2 where piecewise kernels typically change formula.
  return integrate(f, 0.0, 0.5, 1e-13, 1e-13).value + integrate(f, 0.5, 1.0, 1e-13, 1e-13).value;
}

Complex mellin_jackson(Complex z, double lambda) {
  require_finite(z, "mellin_jackson");
  if (!(lambda > 0.0)) throw DomainError("mellin_jackson requires lambda > 0");
  if (!(z.real() > -3.0)) throw DomainError("mellin_jackson requires Re z > -3");
  if (z.real() > 0.0) {
    const double nearest_odd = 2.0 * std::round((z.real() - 1.0) / 2.0) + 1.0;
    if (std::abs(z - Complex(nearest_odd, 0.0)) < kPoleRadius) {
      throw PoleError("mellin_jackson: z within 1e-6 of the pole at " + std::to_string(nearest_odd));
    }
  }
  // Reflection Γ(-z-3) sin(πz/2) = π / (2 cos(πz/2) Γ(z+4)) removes the
  // removable singularities at z = 0, -2, 2, 4, ...
  const Complex lambda_z = std::exp(z * std::log(lambda));
  const Complex factor = 1.0 - std::exp(-(z + 1.0) * std::log(2.0));
  const Complex cosine = std::cos(kPi * z / 2.0);
  return 12.0 * lambda_z * factor * std::exp(-log_gamma(z + 4.0)) / cosine;
}

Complex mellin_numeric(const KernelSpec& kernel, Complex z, double lambda) {
  require_finite(z, "mellin_numeric");
  if (!(lambda > 0.0)) throw DomainError("mellin_numeric requires lambda > 0");
  if (!(z.real() > 0.0 && z.real() < 1.0)) throw DomainError("mellin_numeric requires 0 < Re z < 1");

  auto integrand = [&](double nu) { return kernel(nu) * std::exp((z - 1.0) * std::log(nu)); };
  CompensatedSum<Complex> integral;
  double hi = 1.0;
  for (int level = 0; level < kMeshLevels; ++level) {
    const double lo = hi / 2.0;
    integral += integrate(integrand, lo, hi, 1e-15, 1e-13).value;
    hi = lo;
  }
  // On [0, hi] the kernel equals E(0) = 1 up to O(hi^2).
  integral += kernel(0.0) * std::exp(z * std::log(hi)) / z;

  const Complex prefactor = 2.0 * std::exp(z * std::log(lambda)) / kPi * std::exp(log_gamma(1.0 - z)) *
                            std::sin(kPi * z / 2.0);
  return prefactor * integral.value();
}

double weighted_gap_sum(double lambda, const KernelSpec& kernel, std::span<const double> weights) {
  const std::size_t count = gap_count(lambda);
  if (weights.size() < count) throw DataError("weight table shorter than lambda/2");
  CompensatedSum<double> sum;
  for (std::size_t r = 1; r <= count; ++r) {
    sum += kernel(2.0 * static_cast<double>(r) / lambda) * weights[r - 1];
  }
  return sum.value();
}

double residue_R_half(double lambda, const KernelSpec& kernel) {
  const auto c = hardy_littlewood_constants(gap_count(lambda));
  return 2.0 * weighted_gap_sum(lambda, kernel, c) - lambda * kernel.moment();
}

double residue_R_rho(double lambda, const KernelSpec& kernel) {
  const auto c = hardy_littlewood_constants(gap_count(lambda));
  return -4.0 * weighted_gap_sum(lambda, kernel, c) + 2.0 * lambda * kernel.moment();
}

double residue_R_star(double lambda, const KernelSpec& kernel, std::span<const double> c_star) {
  const std::size_t count = gap_count(lambda);
  if (c_star.size() < count) {
    throw DataError("R*(lambda) needs C*_2r for r <= " + std::to_string(count) + ", have " +
                    std::to_string(c_star.size()));
  }
  return weighted_gap_sum(lambda, kernel, c_star) - 0.5 * lambda * kernel.moment();
}

double residue_R_half_control(double lambda, const KernelSpec& kernel) {
  const std::vector<double> ones(gap_count(lambda), 1.0);
  return 2.0 * weighted_gap_sum(lambda, kernel, ones) - lambda * kernel.moment();
}

double mean_value_cstar(std::span<const double> c_star, std::size_t m) {
  if (m == 0) throw DomainError("mean_value_cstar requires m >= 1");
  if (c_star.size() < m) throw DataError("C*_2r table shorter than m");
  CompensatedSum<double> sum;
  for (std::size_t i = 0; i < m; ++i) sum += c_star[i];
  return sum.value() / static_cast<double>(m);
}

double mean_value_cstar(std::size_t m, std::uint64_t cutoff) {
  if (m == 0) throw DomainError("mean_value_cstar requires m >= 1");
  std::vector<double> values;
  for (const auto& c : c_star_table(m, cutoff)) values.push_back(c.value);
  return mean_value_cstar(values, m);
}

std::vector<ResidueRow> residue_scan(std::span<const double> lambdas, const KernelSpec& kernel,
                                     std::span<const double> c_star) {
  std::vector<ResidueRow> rows;
  for (const double lambda : lambdas) {
    ResidueRow row;
    row.lambda = lambda;
    row.r_half = residue_R_half(lambda, kernel);
    row.r_rho = residue_R_rho(lambda, kernel);
    if (c_star.size() >= gap_count(lambda)) row.r_star = residue_R_star(lambda, kernel, c_star);
    rows.push_back(row);
  }
  return rows;
}

Table residue_table(const KernelSpec& kernel, std::span<const ResidueRow> rows) {
  Table table;
  table.comments.push_back("kernel=" + kernel.name() + " A_E=" + format_real(kernel.moment()));
  table.columns = {"lambda", "R_half", "R_half_over_lambda", "R_rho", "R_star", "R_star_over_lambda"};
  for (const auto& row : rows) {
    table.add_row({row.lambda, row.r_half, row.r_half / row.lambda, row.r_rho,
                   row.r_star ? Cell(*row.r_star) : Cell(), row.r_star ? Cell(*row.r_star / row.lambda) : Cell()});
  }
  return table;
}

void write_residue_csv(std::ostream& out, const KernelSpec& kernel, std::span<const ResidueRow> rows) {
  write_csv(out, residue_table(kernel, rows));
}

}  // namespace pairlab
