#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "oplab/examples.hpp"
#include "oplab/grid_export.hpp"
#include "oplab/tasks.hpp"

namespace {

int run_analyze(const std::string& config_path, const std::string& out_path,
                const oplab::RunOptions& opts) {
  oplab::AnalysisConfig cfg;
  try {
    cfg = oplab::load_config_file(config_path);
  } catch (const oplab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  const oplab::RunOutcome outcome = oplab::run_tasks(cfg, opts);
  const std::string text = outcome.report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot open output path " << out_path << "\n";
      return 2;
    }
    out << text;
    if (!out.good()) {
      std::cerr << "write failure on " << out_path << "\n";
      return 2;
    }
  }
  if (outcome.any_error) return 3;
  if (opts.strict && outcome.any_violated) return 4;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"oplab: boundedness, compactness, and norm criteria for composition "
               "operators on Hardy, model, and de Branges spaces"};
  app.require_subcommand(1);

  std::string an_config, an_out;
  bool an_strict = false, an_no_timings = false;
  int an_jobs = 1;
  CLI::App* an = app.add_subcommand("analyze", "Run the tasks requested by a JSON config");
  an->add_option("config", an_config, "JSON config path")->required();
  an->add_option("--out", an_out, "Write the report here instead of stdout");
  an->add_flag("--strict", an_strict, "Exit 4 when any criterion verdict is 'violated'");
  an->add_option("--jobs", an_jobs, "Run independent tasks on up to N threads");
  an->add_flag("--no-timings", an_no_timings, "Omit timings for byte-stable reports");

  std::string ex_name;
  bool ex_explain = false;
  CLI::App* ex = app.add_subcommand("example", "Reproduce a canned example workbook");
  ex->add_option("name", ex_name, "One of: 3.6, 3.7, model-translation")->required();
  ex->add_flag("--explain", ex_explain, "Print the pinned parameters and formula notes");

  std::string gr_config, gr_quantity, gr_out;
  CLI::App* gr = app.add_subcommand("grid", "Export a criterion landscape as CSV");
  gr->add_option("config", gr_config, "JSON config path")->required();
  gr->add_option("--quantity", gr_quantity, "Q1 | Q2 | Q3 | ratio | L_mineig")->required();
  gr->add_option("--out", gr_out, "CSV output path")->required();

  std::string gm_config, gm_out;
  CLI::App* gm = app.add_subcommand(
      "gram", "Export the Gram matrix of the configured space over its norm points");
  gm->add_option("config", gm_config, "JSON config path")->required();
  gm->add_option("--out", gm_out, "CSV output path (row-major re,im pairs)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  double cap = oplab::kDefaultCap;
  if (const char* env = std::getenv("OPLAB_CAP")) {
    char* end = nullptr;
    cap = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(cap > 0.0)) {
      std::cerr << "OPLAB_CAP must be a positive number, got \"" << env << "\"\n";
      return 2;
    }
  }

  if (an->parsed()) {
    oplab::RunOptions opts;
    opts.strict = an_strict;
    opts.no_timings = an_no_timings;
    opts.jobs = an_jobs;
    opts.cap = cap;
    return run_analyze(an_config, an_out, opts);
  }
  if (ex->parsed()) return oplab::run_example(ex_name, ex_explain);
  if (gr->parsed() || gm->parsed()) {
    oplab::AnalysisConfig cfg;
    const std::string& path = gr->parsed() ? gr_config : gm_config;
    try {
      cfg = oplab::load_config_file(path);
    } catch (const oplab::ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    }
    return gr->parsed() ? oplab::run_grid_export(cfg, gr_quantity, gr_out)
                        : oplab::run_gram_export(cfg, gm_out);
  }
  return 2;
}
