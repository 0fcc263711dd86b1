#include "pairlab/logint.hpp"

#include <cmath>
#include <limits>

#include "pairlab/quadrature.hpp"

namespace pairlab {
namespace {

#ifdef __SIZEOF_FLOAT128__
using Wide = __float128;
constexpr double kWideEpsilon = 1e-33;
#else
using Wide = long double;
constexpr double kWideEpsilon = 1e-19;
#endif

const double kLog2 = std::log(2.0);

// Integrals in u = log t: ∫ e^u / u^power du over [log 2, log x].
double log_integral(double x, int power, const char* name) {
  if (!(x >= 2.0)) throw DomainError(std::string(name) + " requires x >= 2");
  require_finite(x, name);
  if (x == 2.0) return 0.0;
  auto integrand = [power](double u) { return std::exp(u) / std::pow(u, power); };
  // Internal tolerance is tighter than the published contract.
  return integrate(integrand, kLog2, std::log(x), 1e-12, 1e-13).value;
}

// Constant that the asymptotic expansion misses relative to the
// principal-branch definition.
Complex asymptotic_offset(Complex w) {
  if (w.imag() > 0.0) return {0.0, kPi};
  if (w.imag() < 0.0) return {0.0, -kPi};
  return w.real() < 0.0 ? Complex(0.0, kPi) : Complex(0.0, 0.0);
}

struct AsymptoticSum {
  Complex sum;        // Σ_{k=first}^{K-1} k! / w^k
  double first_omitted;
};

// Sums k!/w^k from k = first until the terms stop decreasing.
AsymptoticSum asymptotic_series(Complex w, int first) {
  Complex term = 1.0;
  CompensatedSum<Complex> sum;
  double previous = std::numeric_limits<double>::infinity();
  for (int k = 0;; ++k) {
    if (k > 0) term *= static_cast<double>(k) / w;
    const double size = std::abs(term);
    if (size >= previous || size < 1e-18) return {sum.value(), size};
    if (k >= first) sum += term;
    previous = size;
  }
}

// Ei(w) - e^w / w without cancelling the leading asymptotic term.
Complex ei_minus_leading(Complex w) {
  if (std::abs(w) > kEiSeriesRadius) {
    const auto tail = asymptotic_series(w, 1);
    return asymptotic_offset(w) + std::exp(w) / w * tail.sum;
  }
  return ei_power_series(w) - std::exp(w) / w;
}

}  // namespace

double li(double x) { return log_integral(x, 1, "li"); }

double li2(double x) { return log_integral(x, 2, "li2"); }

Complex ei_power_series(Complex w) {
  require_finite(w, "ei");
  if (w == Complex(0.0, 0.0)) throw DomainError("Ei is singular at w = 0");
  const Wide wr = w.real();
  const Wide wi = w.imag();
  Wide tr = 1, ti = 0;  // w^k / k!
  Wide sr = 0, si = 0;
  const double radius = std::abs(w);
  for (int k = 1; k < 1000; ++k) {
    const Wide nr = (tr * wr - ti * wi) / k;
    const Wide ni = (tr * wi + ti * wr) / k;
    tr = nr;
    ti = ni;
    sr += tr / k;
    si += ti / k;
    if (k > radius) {
      const double term = std::hypot(static_cast<double>(tr), static_cast<double>(ti)) / k;
      const double total = std::hypot(static_cast<double>(sr), static_cast<double>(si));
      if (term <= kWideEpsilon * std::max(1.0, total)) break;
    }
  }
  const Complex series(static_cast<double>(sr), static_cast<double>(si));
  return kEulerGamma + std::log(w) + series;
}

Complex ei_asymptotic(Complex w, double* error_bound) {
  require_finite(w, "ei");
  if (w == Complex(0.0, 0.0)) throw DomainError("Ei is singular at w = 0");
  const auto series = asymptotic_series(w, 0);
  const Complex lead = std::exp(w) / w;
  if (error_bound != nullptr) *error_bound = std::abs(lead) * series.first_omitted;
  return asymptotic_offset(w) + lead * series.sum;
}

Complex ei(Complex w) {
  require_finite(w, "ei");
  if (std::abs(w) <= kEiSeriesRadius) return ei_power_series(w);
  return ei_asymptotic(w);
}

Complex li_complex_power(double x, Complex rho) {
  if (!(x > 1.0)) throw DomainError("li_complex_power requires x > 1");
  require_finite(rho, "li_complex_power");
  return ei(rho * std::log(x)) - ei(rho * kLog2);
}

Complex li2_complex_power(double x, Complex rho) {
  if (!(x > 4.0)) throw DomainError("li2_complex_power requires x > 4");
  require_finite(rho, "li2_complex_power");
  if (!(rho.real() > 0.0 && rho.real() <= 1.0)) {
    throw DomainError("li2_complex_power requires 0 < Re rho <= 1");
  }
  return ei_minus_leading(rho * std::log(x)) - ei_minus_leading(rho * kLog2);
}

}  // namespace pairlab
