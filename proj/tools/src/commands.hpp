#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pairlab/constants.hpp"
#include "pairlab/csv.hpp"

namespace pairlab::cli {

struct RunConfig {
  std::uint64_t sieve_limit = 100'000'000;
  std::optional<std::filesystem::path> zeros_path;
  std::size_t max_zeros = 10'000;
  std::uint64_t cutoff = kDefaultProductCutoff;
  unsigned window = kDefaultAveragingWindow;
  std::optional<std::filesystem::path> output_dir;
  unsigned threads = 1;
  bool extended = false;
};

struct NamedTable {
  std::string name;
  Table table;
};

struct Table1Args {
  int kmax = 6;
};

struct ConstantsArgs {
  int rmax = 15;
};

struct ExplicitArgs {
  double x = 1000.5;
  std::uint64_t r = 1;
  std::vector<std::size_t> ladder{100, 1000, 10000};
};

struct ResiduesArgs {
  std::vector<double> lambdas{4, 10, 20, 30, 100, 1000, 10000};
  std::string kernel = "jackson";
  std::uint64_t rstar_max = 15;
};

struct ScanArgs {
  std::uint64_t r = 1;
  std::vector<double> grid{1e4, 1e5, 1e6};
  std::size_t zeros = 1000;
};

struct DseriesArgs {
  std::string series = "d_2r";
  std::uint64_t r = 1;
  std::vector<double> sigmas{0.75};
  double tau = 0.0;
  std::uint64_t N = 10'000;
  bool square = false;
};

std::vector<NamedTable> cmd_table1(const RunConfig& config, const Table1Args& args);
std::vector<NamedTable> cmd_constants(const RunConfig& config, const ConstantsArgs& args);
std::vector<NamedTable> cmd_explicit(const RunConfig& config, const ExplicitArgs& args);
std::vector<NamedTable> cmd_residues(const RunConfig& config, const ResiduesArgs& args);
std::vector<NamedTable> cmd_scan(const RunConfig& config, const ScanArgs& args);
std::vector<NamedTable> cmd_dseries(const RunConfig& config, const DseriesArgs& args);

struct SelftestResult {
  std::string name;
  bool passed = false;
  std::string detail;
};
std::vector<SelftestResult> cmd_selftest();

/// Thrown for invalid argument combinations; maps to the usage exit code.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pairlab::cli
