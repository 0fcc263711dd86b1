#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "pairlab/constants.hpp"
#include "pairlab/csv.hpp"
#include "pairlab/numeric.hpp"

namespace pairlab {

/// An even sieving function E on [-1, 1] with E(0) = 1, plus its moment
/// A^E = ∫_0^1 E(ν) dν (computed once at construction).
///
/// The smoothness requirement (E, E', E'' absolutely continuous, E''' of
/// bounded variation) is part of the contract but is not checked.
class KernelSpec {
 public:
  using Function = std::function<double(double)>;

  KernelSpec(std::string name, Function evaluate);

  /// E(ν) = 1 - 6ν^2 + 6|ν|^3 on |ν| <= 1/2, 2(1 - |ν|)^3 on [1/2, 1].
  static KernelSpec jackson();

  const std::string& name() const noexcept { return name_; }
  double moment() const noexcept { return moment_; }

  /// E(ν); zero outside [-1, 1].
  double operator()(double nu) const { return (nu <= -1.0 || nu >= 1.0) ? 0.0 : evaluate_(nu); }

  /// E^λ(ν) = E(ν / λ).
  double scaled(double nu, double lambda) const { return (*this)(nu / lambda); }

 private:
  std::string name_;
  Function evaluate_;
  double moment_ = 0.0;
};

/// Checks E(0) = 1, evenness and support on a grid of `points` nodes.
/// Returns a description of the first violation, or nullopt.
std::optional<std::string> kernel_axiom_violation(const KernelSpec& kernel, std::size_t points = 1000);

/// Named kernels. Jackson is built in; others are admitted only if they
/// pass the axiom grid.
class KernelRegistry {
 public:
  KernelRegistry();
  void add(KernelSpec kernel);
  const KernelSpec& get(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, KernelSpec> kernels_;
};

/// Jackson kernel E^λ_J(ν).
double jackson_E(double nu, double lambda);

/// A^E = ∫_0^1 E(ν) dν to 1e-10.
double kernel_moment(const KernelSpec& kernel);

/// Closed-form Mellin transform of the Jackson kernel,
/// (24/π) λ^z (1 - 2^(-z-1)) Γ(-z-3) sin(πz/2), for Re z > -3.
/// Throws PoleError within 1e-6 of z = 1, 3, 5, ...
Complex mellin_jackson(Complex z, double lambda);

/// (2 λ^z / π) Γ(1-z) sin(πz/2) ∫_0^1 E(ν) ν^(z-1) dν for 0 < Re z < 1,
/// integrating on a graded geometric mesh toward ν = 0.
Complex mellin_numeric(const KernelSpec& kernel, Complex z, double lambda);

/// Σ_{0<2r<=λ} E(2r/λ) w_r for weights w_r (w[0] is r = 1).
double weighted_gap_sum(double lambda, const KernelSpec& kernel, std::span<const double> weights);

/// R(1/2, λ) = 2 Σ_{0<2r<=λ} E(2r/λ) C_2r - λ A^E.
double residue_R_half(double lambda, const KernelSpec& kernel);

/// R(ρ/2, λ) = -4 Σ E(2r/λ) C_2r + 2 λ A^E = -2 R(1/2, λ).
double residue_R_rho(double lambda, const KernelSpec& kernel);

/// R*(λ) = Σ_{0<2r<=λ} E(2r/λ) C*_2r - (λ/2) A^E. `c_star[r-1]` holds
/// C*_2r; throws DataError if the table stops short of λ/2.
double residue_R_star(double lambda, const KernelSpec& kernel, std::span<const double> c_star);

/// R(1/2, λ) with every C_2r replaced by 1 (the arithmetic-free control).
double residue_R_half_control(double lambda, const KernelSpec& kernel);

/// (1/m) Σ_{r<=m} C*_2r.
double mean_value_cstar(std::span<const double> c_star, std::size_t m);
double mean_value_cstar(std::size_t m, std::uint64_t cutoff = kDefaultProductCutoff);

struct ResidueRow {
  double lambda = 0.0;
  double r_half = 0.0;
  double r_rho = 0.0;
  std::optional<double> r_star;
};

std::vector<ResidueRow> residue_scan(std::span<const double> lambdas, const KernelSpec& kernel,
                                     std::span<const double> c_star);

/// Columns: lambda, R_half, R_half_over_lambda, R_rho, R_star, R_star_over_lambda.
Table residue_table(const KernelSpec& kernel, std::span<const ResidueRow> rows);
void write_residue_csv(std::ostream& out, const KernelSpec& kernel, std::span<const ResidueRow> rows);

}  // namespace pairlab
