// Command-line driver: `topr verify` runs the identity-check registry and
// emits a JSON report; `topr pattern` renders the vanishing pattern of the
// two-row determinant over a tuple window.  Human-readable progress goes to
// stderr; the machine-readable JSON goes to stdout or to --out, so reports
// stay byte-clean for diffing.  Exit status: 0 all selected checks pass,
// 1 at least one failed, 2 configuration or usage error.

#include "topr/checks.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

topr::Config load_config(const std::string& path) {
  if (path.empty()) return topr::Config{};
  std::ifstream in(path);
  if (!in) throw topr::config_error("config: cannot open '" + path + "'");
  topr::Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw topr::config_error("config: invalid JSON in '" + path + "': " + e.what());
  }
  return topr::config_from_json(j);
}

std::array<int, 4> parse_box(const std::string& csv) {
  std::array<int, 4> box{};
  std::stringstream ss(csv);
  std::string tok;
  int i = 0;
  while (std::getline(ss, tok, ',')) {
    if (i >= 4) throw topr::config_error("pattern: --box wants exactly four integers");
    size_t used = 0;
    box[static_cast<size_t>(i)] = std::stoi(tok, &used);
    if (used != tok.size()) throw topr::config_error("pattern: bad --box entry '" + tok + "'");
    ++i;
  }
  if (i != 4) throw topr::config_error("pattern: --box wants exactly four integers");
  return box;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw topr::config_error("cannot write '" + out_path + "'");
  out << text;
  std::fprintf(stderr, "report written to %s\n", out_path.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transfer-operator identity verifier"};
  app.require_subcommand(1);

  std::string config_path, out_path, box_csv;
  std::uint64_t seed = 0;
  std::vector<std::string> only;

  CLI::App* verify = app.add_subcommand("verify", "run identity checks and emit a JSON report");
  verify->add_option("--config", config_path, "JSON configuration file");
  verify->add_option("--only", only, "comma-separated subset of checks")->delimiter(',');
  verify->add_option("--seed", seed, "root seed overriding the configuration");
  verify->add_option("--out", out_path, "write the JSON report to this path");

  CLI::App* pattern =
      app.add_subcommand("pattern", "render the vanishing pattern of the two-row determinant");
  pattern->add_option("--box", box_csv, "window a1min,a1max,a2min,a2max")->required();
  pattern->add_option("--config", config_path, "JSON configuration file");
  pattern->add_option("--seed", seed, "root seed overriding the configuration");
  pattern->add_option("--out", out_path, "write the grid JSON to this path");

  CLI11_PARSE(app, argc, argv);

  try {
    topr::Config cfg = load_config(config_path);
    if (verify->parsed()) {
      if (verify->count("--seed")) cfg.seed = seed;
      if (verify->count("--only")) cfg.only = only;
      if (verify->count("--out")) cfg.out = out_path;
      topr::validate(cfg);
      topr::RunReport rep = topr::run_verify(cfg);
      for (const topr::ResidualReport& r : rep.checks) {
        std::fprintf(stderr, "[%s] %-22s absolute=%.3e relative=%.3e tol=%.3e (%.0f ms)%s%s\n",
                     r.pass ? "pass" : "FAIL", r.name.c_str(), r.absolute, r.relative, r.tolerance,
                     r.elapsed_seconds * 1e3, r.error.empty() ? "" : " error: ",
                     r.error.c_str());
      }
      std::fprintf(stderr, "%zu/%zu checks passed\n",
                   static_cast<size_t>(std::count_if(rep.checks.begin(), rep.checks.end(),
                                                     [](const auto& r) { return r.pass; })),
                   rep.checks.size());
      emit(rep.serialize(), cfg.out);
      return rep.all_pass() ? 0 : 1;
    }
    // pattern
    if (pattern->count("--seed")) cfg.seed = seed;
    cfg.box = parse_box(box_csv);
    topr::validate(cfg);
    topr::ChainContext<topr::Complex> ctx;
    topr::Complex u;
    topr::PatternGrid grid = topr::run_pattern(cfg, &ctx, &u);
    std::fputs(topr::pattern_art(grid).c_str(), stderr);
    topr::Json j = topr::pattern_json(grid);
    j["context"] = topr::json_context(ctx);
    j["u"] = topr::json_complex(u);
    emit(j.dump(2) + "\n", out_path);
    return grid.consistent ? 0 : 1;
  } catch (const topr::config_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
