#include "app.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <json.hpp>

#include "pairlab/errors.hpp"

namespace pairlab::cli {
namespace {

constexpr const char* kVersion = "0.1.0";

template <class T>
std::vector<T> parse_list(const std::string& text, const char* flag) {
  std::vector<T> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      if constexpr (std::is_floating_point_v<T>) {
        out.push_back(static_cast<T>(std::stod(item, &used)));
      } else {
        if (item.front() == '-') throw std::invalid_argument(item);
        // Accept 1e4 style integers too.
        const double v = std::stod(item, &used);
        if (v != std::floor(v) || v < 0) throw std::invalid_argument(item);
        out.push_back(static_cast<T>(v));
      }
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw UsageError(std::string(flag) + ": cannot parse '" + item + "'");
    }
  }
  return out;
}

void check_output_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto probe = dir / ".pairlab_write_probe";
  {
    std::ofstream f(probe);
    if (!f) throw DataError("output directory " + dir.string() + " is not writable");
  }
  std::filesystem::remove(probe, ec);
}

void stamp(std::vector<NamedTable>& tables, const std::string& command) {
  for (auto& t : tables) {
    t.table.comments.insert(t.table.comments.begin(), std::string("pairlab ") + kVersion + " " + command);
  }
}

void emit(const std::vector<NamedTable>& tables, const RunConfig& config, const std::string& format, std::ostream& out) {
  if (config.output_dir) {
    for (const auto& t : tables) {
      const auto csv_path = *config.output_dir / (t.name + ".csv");
      const auto json_path = *config.output_dir / (t.name + ".json");
      std::ofstream csv(csv_path, std::ios::binary);
      write_csv(csv, t.table);
      std::ofstream json(json_path, std::ios::binary);
      json << to_json(t) << '\n';
      if (!csv || !json) throw DataError("failed writing reports under " + config.output_dir->string());
      out << "wrote " << csv_path.string() << " and " << json_path.string() << '\n';
    }
    return;
  }
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (i != 0) out << '\n';
    if (format == "json") {
      out << to_json(tables[i]) << '\n';
    } else {
      write_csv(out, tables[i].table);
    }
  }
}

}  // namespace

std::string to_json(const NamedTable& named) {
  using nlohmann::json;
  json rows = json::array();
  for (const auto& row : named.table.rows) {
    json cells = json::array();
    for (const auto& cell : row) {
      if (std::holds_alternative<std::monostate>(cell)) {
        cells.push_back(nullptr);
      } else if (const auto* d = std::get_if<double>(&cell)) {
        // JSON has no nan/inf; those go out as the same text the CSV uses.
        if (std::isfinite(*d)) {
          cells.push_back(*d);
        } else {
          cells.push_back(format_real(*d));
        }
      } else if (const auto* i = std::get_if<std::int64_t>(&cell)) {
        cells.push_back(*i);
      } else if (const auto* u = std::get_if<std::uint64_t>(&cell)) {
        cells.push_back(*u);
      } else {
        cells.push_back(std::get<std::string>(cell));
      }
    }
    rows.push_back(std::move(cells));
  }
  json doc;
  doc["name"] = named.name;
  doc["comments"] = named.table.comments;
  doc["columns"] = named.table.columns;
  doc["rows"] = std::move(rows);
  return doc.dump();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"pairlab: prime-pair counts, constants and explicit-formula scans"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "flat key=value file; keys are long flag names (e.g. sieve-limit=1000000)");
  app.allow_config_extras(CLI::config_extras_mode::error);

  RunConfig config;
  std::string zeros_path;
  std::string output_dir;
  std::string format = "csv";
  app.add_option("--sieve-limit", config.sieve_limit, "largest integer the sieve may cover")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--zeros", zeros_path, "zeta zeros file, one ordinate per line");
  app.add_option("--max-zeros", config.max_zeros, "read at most this many zeros")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--cutoff", config.cutoff, "Euler product cutoff")->check(CLI::Range(10, 1'000'000'000))->capture_default_str();
  app.add_option("--window", config.window, "checkpoints averaged for Bateman-Horn products")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  app.add_option("--out", output_dir, "write <command>.csv and <command>.json into this directory");
  app.add_option("--threads", config.threads, "worker threads for sieving and counting")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();
  app.add_flag("--extended", config.extended, "allow long runs (table1 rows k=7,8)");
  app.add_option("--format", format, "stdout format when --out is absent")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  Table1Args table1;
  auto* sub_table1 = app.add_subcommand("table1", "counts of primes p with p^2-2 prime");
  sub_table1->add_option("--kmax", table1.kmax, "largest exponent k in x=10^k")->capture_default_str();

  ConstantsArgs constants;
  auto* sub_constants = app.add_subcommand("constants", "C_2r, C(n^2-+2r), C*_2r and running means");
  sub_constants->add_option("--rmax", constants.rmax, "largest r")->capture_default_str();

  ExplicitArgs explicit_args;
  std::string ladder_text = "100,1000,10000";
  auto* sub_explicit = app.add_subcommand("explicit", "explicit-formula errors along a ladder of zero counts");
  sub_explicit->add_option("--x", explicit_args.x, "evaluation point (half-integers avoid jumps)")->capture_default_str();
  sub_explicit->add_option("--r", explicit_args.r, "half-gap r")->capture_default_str();
  sub_explicit->add_option("--K", ladder_text, "comma-separated zero counts; K=0 is always included")
      ->capture_default_str();

  ResiduesArgs residues;
  std::string lambda_text = "4,10,20,30,100,1000,10000";
  auto* sub_residues = app.add_subcommand("residues", "kernel-weighted residue aggregates over lambda");
  sub_residues->add_option("--lambdas", lambda_text, "comma-separated lambda values")->capture_default_str();
  sub_residues->add_option("--kernel", residues.kernel, "kernel name")->capture_default_str();
  sub_residues->add_option("--rstar-max", residues.rstar_max, "compute C*_2r up to this r for R_star")
      ->capture_default_str();

  ScanArgs scan;
  std::string grid_text = "1e4,1e5,1e6";
  auto* sub_scan = app.add_subcommand("scan", "remainder e_2r(x) next to its zero-sum prediction");
  sub_scan->add_option("--r", scan.r, "half-gap r")->capture_default_str();
  sub_scan->add_option("--grid", grid_text, "comma-separated ascending x values (may be empty)")->capture_default_str();
  sub_scan->add_option("--K", scan.zeros, "number of zeros in the prediction")->capture_default_str();

  DseriesArgs dseries;
  std::string sigma_text = "0.75";
  auto* sub_dseries = app.add_subcommand("dseries", "truncated Dirichlet-type series");
  sub_dseries->add_option("--series", dseries.series, "d_2r, d0_pair, d_star, g_2r or lemma")->capture_default_str();
  sub_dseries->add_option("--r", dseries.r, "half-gap r")->capture_default_str();
  sub_dseries->add_option("--sigma", sigma_text, "comma-separated real parts")->capture_default_str();
  sub_dseries->add_option("--tau", dseries.tau, "imaginary part")->capture_default_str();
  sub_dseries->add_option("--N", dseries.N, "truncation bound")->capture_default_str();
  sub_dseries->add_flag("--square", dseries.square, "use n^{2s} denominators for d_2r");

  auto* sub_selftest = app.add_subcommand("selftest", "quick internal consistency checks");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!zeros_path.empty()) config.zeros_path = zeros_path;
    if (!output_dir.empty()) {
      config.output_dir = output_dir;
      check_output_dir(*config.output_dir);
    }

    std::vector<NamedTable> tables;
    std::string command;
    if (sub_selftest->parsed()) {
      bool all = true;
      for (const auto& result : cmd_selftest()) {
        out << (result.passed ? "PASS " : "FAIL ") << result.name << ": " << result.detail << '\n';
        all = all && result.passed;
      }
      return all ? kExitOk : kExitFailure;
    }
    if (sub_table1->parsed()) {
      command = "table1";
      tables = cmd_table1(config, table1);
    } else if (sub_constants->parsed()) {
      command = "constants";
      tables = cmd_constants(config, constants);
    } else if (sub_explicit->parsed()) {
      command = "explicit";
      explicit_args.ladder = parse_list<std::size_t>(ladder_text, "--K");
      tables = cmd_explicit(config, explicit_args);
    } else if (sub_residues->parsed()) {
      command = "residues";
      residues.lambdas = parse_list<double>(lambda_text, "--lambdas");
      tables = cmd_residues(config, residues);
    } else if (sub_scan->parsed()) {
      command = "scan";
      scan.grid = parse_list<double>(grid_text, "--grid");
      tables = cmd_scan(config, scan);
    } else if (sub_dseries->parsed()) {
      command = "dseries";
      dseries.sigmas = parse_list<double>(sigma_text, "--sigma");
      tables = cmd_dseries(config, dseries);
    }
    stamp(tables, command);
    emit(tables, config, format, out);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitData;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace pairlab::cli
