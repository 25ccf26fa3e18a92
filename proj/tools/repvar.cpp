#include <iostream>

#include <CLI11.hpp>

#include "repvar/cli.hpp"

int main(int argc, char** argv) {
  using namespace repvar;
  cli::Request req;
  std::string target = "plus";
  std::string format = "json";
  std::string cache_dir;
  std::optional<std::size_t> samples;

  CLI::App app{"Cohomology tables for SU(2) representation varieties of nonorientable surfaces"};
  app.add_option("command", req.command, "Command to run")
      ->required()
      ->check(CLI::IsMember(cli::commands()));
  app.add_option("--n", req.n, "Surface parameter n (n >= 0)");
  app.add_option("--target", target, "Conjugacy class of the product of squares")
      ->check(CLI::IsMember({"plus", "minus", "generic"}));
  app.add_option("--degree-bound", req.degree_bound, "Truncation degree for series and bases");
  app.add_option("--seed", req.seed, "Seed for numeric checks");
  app.add_option("--format", format, "Output encoding")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--no-cache", "Bypass the on-disk result cache");
  app.add_option("--n-max", req.n_max, "Largest n covered by verify");
  app.add_option("--check", req.check, "Numeric check to run (default: all)");
  app.add_option("--samples", samples, "Sample count for numeric checks");
  app.add_flag("--allow-large", req.allow_large, "Allow enumerations beyond the default size cap");
  app.add_option("--cache-dir", cache_dir, "Cache directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kExitUsage;
  }

  req.target = parse_target_kind(target);
  req.format = format == "csv" ? cli::Format::Csv : cli::Format::Json;
  req.use_cache = app.count("--no-cache") == 0;
  req.samples = samples;
  if (!cache_dir.empty()) req.cache_dir = cache_dir;
  return cli::run(req, std::cout, std::cerr);
}
