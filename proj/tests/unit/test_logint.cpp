#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pairlab/logint.hpp"

using namespace pairlab;

namespace {

// Ei(w) = Ei(1) + ∫_1^w e^z/z dz along the straight segment; valid off the
// negative real axis. Ei(1) comes from the standard library.
Complex ei_by_path(Complex w, int panels = 20000) {
  const Complex a{1.0, 0.0};
  const Complex h = (w - a) / static_cast<double>(panels);
  auto f = [](Complex z) { return std::exp(z) / z; };
  Complex s = f(a) + f(w);
  for (int i = 1; i < panels; ++i) s += f(a + static_cast<double>(i) * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return std::expint(1.0) + s * h / 3.0;
}

}  // namespace

TEST_CASE("li and li2 against Simpson quadrature") {
  for (const double x : {2.5, 10.0, 100.0, 1e4, 1e6}) {
    CAPTURE(x);
    CHECK(li(x) == doctest::Approx(oracle::log_integral(x, 1)).epsilon(1e-9));
    CHECK(li2(x) == doctest::Approx(oracle::log_integral(x, 2)).epsilon(1e-9));
  }
  CHECK(li(2.0) == 0.0);
  CHECK(li2(2.0) == 0.0);
  CHECK_THROWS_AS(li(1.5), DomainError);
  CHECK_THROWS_AS(li2(1.999), DomainError);
}

TEST_CASE("li2 reference values") {
  CHECK(li2(1e4) == doctest::Approx(162.2412374429).epsilon(1e-11));
  CHECK(li2(1e5) == doctest::Approx(945.7595892874).epsilon(1e-11));
  CHECK(li2(1e6) == doctest::Approx(6246.975735222).epsilon(1e-11));
  CHECK(li(1e6) == doctest::Approx(78626.503995682).epsilon(1e-12));
}

TEST_CASE("integration by parts links li and li2") {
  for (const double x : {3.0, 50.0, 1e3, 1e5, 1e7, 1e9}) {
    CAPTURE(x);
    const double rhs = li(x) - x / std::log(x) + 2.0 / std::log(2.0);
    CHECK(li2(x) == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("Ei on the real axis matches std::expint") {
  CHECK(ei(Complex{1.0, 0.0}).real() == doctest::Approx(1.8951178163559368).epsilon(1e-15));
  for (const double x : {0.01, 0.5, 1.0, 3.7, 10.0, 25.0, 39.0, 41.0, 60.0, 200.0}) {
    CAPTURE(x);
    const Complex v = ei(Complex{x, 0.0});
    CHECK(v.real() == doctest::Approx(std::expint(x)).epsilon(1e-13));
    CHECK(v.imag() == 0.0);
  }
  for (const double x : {-0.3, -2.0, -15.0}) {
    // Principal branch: Im = π on the negative axis approached from above.
    CHECK(ei(Complex{x, 0.0}).real() == doctest::Approx(std::expint(x)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(ei(Complex{0.0, 0.0}), DomainError);
}

TEST_CASE("Ei off the real axis against path integration") {
  const Complex w{2.0, 3.0};
  const Complex v = ei(w);
  const Complex o = ei_by_path(w);
  CHECK(v.real() == doctest::Approx(o.real()).epsilon(1e-10));
  CHECK(v.imag() == doctest::Approx(o.imag()).epsilon(1e-10));
  CHECK(v.real() == doctest::Approx(-0.36155194459964).epsilon(1e-12));
  CHECK(v.imag() == doctest::Approx(5.27054843581369).epsilon(1e-12));
  for (const Complex z : {Complex{0.5, 7.0}, Complex{-3.0, 2.0}, Complex{6.9, 195.0}, Complex{10.0, -20.0}}) {
    CAPTURE(z);
    const Complex a = ei(z);
    const Complex b = ei_by_path(z, 200000);
    CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)));
  }
  // Conjugate symmetry.
  const Complex c = ei(std::conj(w));
  CHECK(c.real() == doctest::Approx(v.real()).epsilon(1e-15));
  CHECK(c.imag() == doctest::Approx(-v.imag()).epsilon(1e-15));
}

TEST_CASE("Ei series and asymptotic branches overlap") {
  for (double mod = 35.0; mod <= 45.0; mod += 2.5) {
    for (double arg = -3.0; arg <= 3.0; arg += 0.5) {
      const Complex w = std::polar(mod, arg);
      CAPTURE(w);
      const Complex s = ei_power_series(w);
      const Complex a = ei_asymptotic(w);
      CHECK(std::abs(s - a) <= 1e-6 * std::abs(s));
    }
  }
}

TEST_CASE("Ei magnitude bound far up the critical line") {
  const double l = std::log(1e6);
  const Complex w{0.5 * l, 14.13 * l};
  CHECK(std::abs(ei(w)) <= 2.0 * std::exp(w.real()) / std::abs(w));
}

TEST_CASE("li2 of a complex power") {
  CHECK(li2_complex_power(1e4, Complex{1.0, 0.0}).real() == doctest::Approx(li2(1e4)).epsilon(1e-6));
  CHECK(std::abs(li2_complex_power(1e4, Complex{1.0, 0.0}).imag()) < 1e-6);

  const Complex rho{0.5, 14.134725};
  const double x = 1e4;
  const double h = 1e-3 * x;
  const Complex fd = (li2_complex_power(x + h, rho) - li2_complex_power(x - h, rho)) / (2 * h);
  const Complex expect = std::pow(Complex{x, 0.0}, rho - 1.0) / (rho * std::log(x) * std::log(x));
  CHECK(std::abs(fd - expect) <= 1e-4 * std::abs(expect));

  // Direct quadrature of ∫_2^x t^(ρ-1) / (ρ log^2 t) dt in u = log t.
  const Complex direct = [&] {
    const int n = 400000;
    const double a = std::log(2.0);
    const double b = std::log(x);
    const double step = (b - a) / n;
    auto f = [&](double u) { return std::exp(rho * u) / (rho * u * u); };
    Complex s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * step) * (i % 2 == 1 ? 4.0 : 2.0);
    return s * step / 3.0;
  }();
  CHECK(std::abs(li2_complex_power(x, rho) - direct) <= 1e-7 * std::abs(direct));

  CHECK_THROWS_AS(li2_complex_power(3.0, rho), DomainError);
  CHECK_THROWS_AS(li2_complex_power(1e4, Complex{1.5, 1.0}), DomainError);
  CHECK_THROWS_AS(li2_complex_power(1e4, Complex{0.0, 1.0}), DomainError);
}

TEST_CASE("li of a complex power matches its definition") {
  const Complex rho{0.5, 21.022040};
  const double x = 5e3;
  const Complex v = li_complex_power(x, rho);
  const Complex expect = ei(rho * std::log(x)) - ei(rho * std::log(2.0));
  CHECK(std::abs(v - expect) <= 1e-14 * std::abs(expect));
}
