#include "commands.hpp"

#include <algorithm>
#include <cmath>

#include "pairlab/counting.hpp"
#include "pairlab/dseries.hpp"
#include "pairlab/errors.hpp"
#include "pairlab/explicit_formula.hpp"
#include "pairlab/kernels.hpp"
#include "pairlab/logint.hpp"
#include "pairlab/sieve.hpp"

namespace pairlab::cli {
namespace {

Sieve make_sieve(const RunConfig& config, std::uint64_t needed) {
  if (needed > config.sieve_limit) {
    throw CapacityError("this run needs a sieve up to " + std::to_string(needed) + " but --sieve-limit is " +
                        std::to_string(config.sieve_limit));
  }
  SieveOptions options;
  options.max_limit = std::max<std::uint64_t>(config.sieve_limit, 2);
  options.threads = config.threads;
  return Sieve(std::max<std::uint64_t>(needed, 2), options);
}

ZeroList require_zeros(const RunConfig& config, std::size_t needed) {
  if (!config.zeros_path) {
    throw DataError("no zeros file configured; pass --zeros <path> (one ordinate per line, e.g. data/zeros_10k.txt)");
  }
  ZeroList zeros = load_zeros(*config.zeros_path, config.max_zeros);
  if (zeros.size() < needed) {
    throw DataError("zeros file " + config.zeros_path->string() + " provides " + std::to_string(zeros.size()) +
                    " zeros (after --max-zeros) but " + std::to_string(needed) + " are requested");
  }
  return zeros;
}

std::uint64_t pow10(int k) {
  std::uint64_t v = 1;
  for (int i = 0; i < k; ++i) v *= 10;
  return v;
}

}  // namespace

std::vector<NamedTable> cmd_table1(const RunConfig& config, const Table1Args& args) {
  if (args.kmax < 1 || args.kmax > 8) throw UsageError("table1: --kmax must be in 1..8");
  if (args.kmax > 6 && !config.extended) throw UsageError("table1: rows k=7,8 require --extended");

  const auto f = QuadraticSpec::minus_gap(1);
  const Sieve sieve = make_sieve(config, pow10(args.kmax));
  std::vector<double> grid;
  for (int k = 1; k <= args.kmax; ++k) grid.push_back(static_cast<double>(pow10(k)));
  const auto counts = pair_count_series(sieve, CountKind::pi_f, 0, grid, f);
  const EulerProduct constant = bateman_horn_constant(f, config.cutoff, config.window);

  Table table;
  table.comments = {"f=" + f.to_string(), "L_star_paper=round(1.69 li_2(x)) for k >= 4",
                    "L_star_computed=round(C(f)/2 li_2(x)) with C(f)=" + format_real(constant.value)};
  table.columns = {"k", "x", "pi_star", "L_star_paper", "ratio", "L_star_computed"};
  for (int k = 1; k <= args.kmax; ++k) {
    const double x = grid[static_cast<std::size_t>(k - 1)];
    const auto pi_star = static_cast<std::uint64_t>(counts.values[static_cast<std::size_t>(k - 1)]);
    const double l2 = li2(x);
    const auto computed = static_cast<std::uint64_t>(std::llround(constant.value / 2.0 * l2));
    Cell literal;
    Cell ratio;
    if (k >= 4) {
      const auto l = static_cast<std::uint64_t>(std::llround(1.69 * l2));
      literal = l;
      ratio = static_cast<double>(pi_star) / static_cast<double>(l);
    }
    table.add_row({static_cast<std::int64_t>(k), pow10(k), pi_star, literal, ratio, computed});
  }
  return {{"table1", std::move(table)}};
}

std::vector<NamedTable> cmd_constants(const RunConfig& config, const ConstantsArgs& args) {
  if (args.rmax < 1) throw UsageError("constants: --rmax must be at least 1");
  const auto rmax = static_cast<std::uint64_t>(args.rmax);
  const EulerProduct c2 = twin_prime_constant(config.cutoff);
  const auto stars = c_star_table(rmax, config.cutoff, config.window);

  Table table;
  table.comments = {"C_2=" + format_real(c2.value) + " error_estimate=" + format_real(c2.error_estimate),
                    "cutoff=" + std::to_string(config.cutoff) + " window=" + std::to_string(config.window),
                    "S_m_deviation=S_m - m + log(m)/2 with S_m = sum_{r<=m} C_2r"};
  table.columns = {"r", "C_2r", "C_minus_2r", "C_plus_2r", "C_star_2r", "mean_C_star", "S_m_deviation"};
  CompensatedSum<double> running;
  for (std::uint64_t r = 1; r <= rmax; ++r) {
    const auto& star = stars[r - 1];
    running += star.value;
    const double m = static_cast<double>(r);
    table.add_row({r, c_2r(r, config.cutoff), star.minus.value, star.plus.value, star.value, running.value() / m,
                   hl_partial_sum(r) - m + 0.5 * std::log(m)});
  }
  return {{"constants", std::move(table)}};
}

std::vector<NamedTable> cmd_explicit(const RunConfig& config, const ExplicitArgs& args) {
  if (!(args.x > 4.0)) throw UsageError("explicit: --x must exceed 4");
  if (args.r < 1) throw UsageError("explicit: --r must be at least 1");
  std::vector<std::size_t> ladder{0};
  for (const auto k : args.ladder) {
    if (k != 0) ladder.push_back(k);
  }
  std::sort(ladder.begin(), ladder.end());
  ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());
  const ZeroList zeros = require_zeros(config, ladder.back());

  const double x = args.x;
  const std::uint64_t r = args.r;
  const Sieve sieve = make_sieve(config, static_cast<std::uint64_t>(std::floor(x)) + 2 * r);
  const double c_star = c_star_2r(r, config.cutoff, config.window).value;
  const double root = std::sqrt(x);
  const double log_x = std::log(x);

  struct Formula {
    std::string name;
    double exact;
    double scale;  // normalized = error * scale
  };
  const std::vector<Formula> formulas{
      {"psi", chebyshev_psi(sieve, x), 1.0 / root},
      {"psi_2r", psi_2r(sieve, x, r), 1.0 / root},
      {"theta_2r", theta_2r(sieve, x, r), 1.0 / root},
      {"pi_2r", static_cast<double>(pi_2r(sieve, x, r)), log_x * log_x / root},
      {"pi", static_cast<double>(sieve.count_primes(static_cast<std::uint64_t>(std::floor(x)))), log_x / root},
  };

  Table table;
  table.comments = {"x=" + format_real(x) + " r=" + std::to_string(r) + " C_star_2r=" + format_real(c_star),
                    "zeros_checksum=" + std::to_string(zeros.checksum),
                    "error=exact-approx; normalized=error/sqrt(x) (psi, psi_2r, theta_2r), "
                    "error*log(x)/sqrt(x) (pi), error*log(x)^2/sqrt(x) (pi_2r)"};
  table.columns = {"formula", "K", "exact", "approx", "error", "normalized"};
  for (const auto& formula : formulas) {
    for (const std::size_t k : ladder) {
      double approx = 0.0;
      if (formula.name == "psi") approx = psi_explicit(x, zeros, k);
      if (formula.name == "psi_2r") approx = psi2r_explicit(x, r, zeros, k);
      if (formula.name == "theta_2r") approx = theta2r_explicit(x, r, c_star, zeros, k);
      if (formula.name == "pi_2r") approx = pi2r_explicit(x, r, c_star, zeros, k);
      if (formula.name == "pi") approx = pi_riemann_approx(x, zeros, k);
      const double error = formula.exact - approx;
      table.add_row({formula.name, static_cast<std::uint64_t>(k), formula.exact, approx, error, error * formula.scale});
    }
  }
  return {{"explicit", std::move(table)}};
}

std::vector<NamedTable> cmd_residues(const RunConfig& config, const ResiduesArgs& args) {
  const KernelRegistry registry;
  const KernelSpec& kernel = registry.get(args.kernel);
  std::vector<double> c_star;
  if (args.rstar_max > 0) {
    for (const auto& c : c_star_table(args.rstar_max, config.cutoff, config.window)) c_star.push_back(c.value);
  }
  const auto rows = residue_scan(args.lambdas, kernel, c_star);
  Table table = residue_table(kernel, rows);
  table.comments.push_back("R_star uses C*_2r for r <= " + std::to_string(args.rstar_max) +
                           "; blank where lambda/2 exceeds that");
  return {{"residues", std::move(table)}};
}

std::vector<NamedTable> cmd_scan(const RunConfig& config, const ScanArgs& args) {
  if (args.r < 1) throw UsageError("scan: --r must be at least 1");
  const ZeroList zeros = require_zeros(config, args.zeros);
  double top = 4.0;
  for (const double x : args.grid) top = std::max(top, x);
  const Sieve sieve = make_sieve(config, static_cast<std::uint64_t>(std::floor(top)) + 2 * args.r);
  const double c_star = c_star_2r(args.r, config.cutoff, config.window).value;
  Li2Cache cache;
  const auto rows = remainder_scan(sieve, args.r, c_star, args.grid, zeros, args.zeros, cache);
  return {{"scan", remainder_table(args.r, args.zeros, zeros, rows)}};
}

std::vector<NamedTable> cmd_dseries(const RunConfig& config, const DseriesArgs& args) {
  const std::string& name = args.series;
  if (name != "d_2r" && name != "d0_pair" && name != "d_star" && name != "g_2r" && name != "lemma") {
    throw UsageError("dseries: --series must be one of d_2r, d0_pair, d_star, g_2r, lemma");
  }
  const std::uint64_t reach = name == "d_star" ? args.N : args.N + 2 * args.r;
  const Sieve sieve = make_sieve(config, reach);
  const Denominator denominator = args.square ? Denominator::square : Denominator::pair;
  std::vector<TruncatedSeries> rows;
  for (const double sigma : args.sigmas) {
    const Complex s(sigma, args.tau);
    if (name == "d_2r") rows.push_back(d_2r(sieve, s, args.r, args.N, denominator));
    if (name == "d0_pair") rows.push_back(d0_pair(sieve, s, args.r, args.N));
    if (name == "d_star") rows.push_back(d_star(sieve, s, args.r, args.N));
    if (name == "lemma") rows.push_back(lemma_remainder(sieve, s, args.r, args.N));
    if (name == "g_2r") {
      TruncatedSeries row = d_2r(sieve, s, args.r, args.N);
      row.value = g_2r(sieve, s, args.r, args.N);
      rows.push_back(row);
    }
  }
  Table table = series_scan_table(name, rows);
  if (name == "d_2r") table.comments.push_back(std::string("denominator=") + (args.square ? "n^{2s}" : "n^s(n+2r)^s"));
  return {{"dseries", std::move(table)}};
}

std::vector<SelftestResult> cmd_selftest() {
  std::vector<SelftestResult> results;
  auto check = [&](std::string name, auto&& fn) {
    SelftestResult result{std::move(name), false, {}};
    try {
      result.detail = fn(result.passed);
    } catch (const std::exception& e) {
      result.detail = std::string("exception: ") + e.what();
    }
    results.push_back(std::move(result));
  };
  const Sieve sieve(100'000);
  check("twin pairs below 1000", [&](bool& ok) {
    const auto v = pi_2r(sieve, 1000, 1);
    ok = v == 35;
    return "pi_2(1000)=" + std::to_string(v);
  });
  check("pi_f(n^2-2) below 10^4", [&](bool& ok) {
    const auto v = pi_f(sieve, 1e4, QuadraticSpec::minus_gap(1));
    ok = v == 259;
    return "value=" + std::to_string(v);
  });
  check("twin prime constant", [&](bool& ok) {
    const double v = twin_prime_constant_shared();
    ok = std::abs(v - 0.6601618158468696) < 1e-9;
    return "C_2=" + format_real(v);
  });
  check("Ei(1)", [&](bool& ok) {
    const double v = ei(Complex(1.0, 0.0)).real();
    ok = std::abs(v - 1.8951178163559368) < 1e-13;
    return "Ei(1)=" + format_real(v);
  });
  check("li(10^6)", [&](bool& ok) {
    const double v = li(1e6);
    ok = std::abs(v - 78626.503995682) < 1e-6;
    return "li(10^6)=" + format_real(v);
  });
  check("Jackson Mellin closed form vs quadrature", [&](bool& ok) {
    const Complex z(0.5, 5.0);
    const Complex a = mellin_jackson(z, 10.0);
    const Complex b = mellin_numeric(KernelSpec::jackson(), z, 10.0);
    const double rel = std::abs(a - b) / std::abs(a);
    ok = rel < 1e-7;
    return "relative difference " + format_real(rel);
  });
  return results;
}

}  // namespace pairlab::cli
