// qgclass: verification suites for generalized parabolic Verma modules and
// quantum conjugacy classes of types B, C, D.

#include "qgclass/report.hpp"
#include "qgclass/suite.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
  using namespace qgclass;
  CLI::App app{"qgclass: exact checks of quantum conjugacy class characters"};
  std::string command;
  std::string config;
  std::string format = "text";
  std::optional<int> depth, kmax;
  bool serial = false;
  bool no_timings = false;
  app.add_option("command", command, "describe|singular|filtration|qop|character|weyl|verify-all")
      ->required()
      ->check(CLI::IsMember({"describe", "singular", "filtration", "qop", "character", "weyl", "verify-all"}));
  app.add_option("--config", config, "TOML run configuration")->required();
  app.add_option("--depth", depth, "interior depth for every case")->check(CLI::PositiveNumber);
  app.add_option("--kmax", kmax, "largest power of Q in character checks")->check(CLI::NonNegativeNumber);
  app.add_option("--format", format, "text or jsonl")->check(CLI::IsMember({"text", "jsonl"}));
  app.add_flag("--serial", serial, "use the serial reference kernels");
  app.add_flag("--no-timings", no_timings, "omit time_ms from jsonl records");
  CLI11_PARSE(app, argc, argv);

  if (const char* t = std::getenv("QGCLASS_THREADS")) {
    const int n = std::atoi(t);
    if (n <= 0) {
      std::cerr << "QGCLASS_THREADS must be a positive integer\n";
      return 2;
    }
    omp_set_num_threads(n);
  }

  RunConfig cfg;
  try {
    cfg = load_config(config);
  } catch (const std::exception& e) {
    std::cerr << "qgclass: " << e.what() << "\n";
    return 2;
  }
  RunOptions opt;
  opt.command = parse_command(command);
  opt.depth = depth;
  opt.kmax = kmax;
  opt.exec = serial ? Exec::serial : Exec::parallel;

  const double t0 = omp_get_wtime();
  const CheckList checks = run_config(cfg, opt);
  if (format == "jsonl")
    std::cout << render_jsonl(checks, !no_timings);
  else
    std::cout << render_text(checks);
  std::cerr << "elapsed " << omp_get_wtime() - t0 << " s\n";
  return exit_code(checks);
}
