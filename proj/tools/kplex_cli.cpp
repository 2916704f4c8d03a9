// Command-line front-end: edge list in, maximal k-plexes (or their count) out.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "kplex/graph.hpp"
#include "kplex/scheduler.hpp"

namespace {

double seconds(std::chrono::nanoseconds d) { return std::chrono::duration<double>(d).count(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enumerate maximal k-plexes of size at least q"};

  std::string input;
  std::string output;
  int k = 0;
  int q = 0;
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  double timeout_ms = 0.1;
  kplex::OutputMode mode = kplex::OutputMode::list;
  kplex::Variant variant = kplex::Variant::ours;
  bool disable_ub = false;
  bool disable_pair_prune = false;
  bool stats = false;

  const std::map<std::string, kplex::OutputMode> modes{{"list", kplex::OutputMode::list},
                                                       {"count", kplex::OutputMode::count}};
  const std::map<std::string, kplex::Variant> variants{
      {"ours", kplex::Variant::ours}, {"ours_p", kplex::Variant::ours_p}, {"basic", kplex::Variant::basic}};

  app.add_option("--input,-i", input, "Edge list file (one 'u v' pair per line)")->required()->check(CLI::ExistingFile);
  app.add_option("-k", k, "Each member may miss at most k members (itself included)")->required();
  app.add_option("-q", q, "Minimum result size; must be at least 2k-1")->required();
  app.add_option("--threads,-t", threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--timeout-ms", timeout_ms, "Per-task time budget in milliseconds; 0 disables task splitting")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  app.add_option("--mode", mode, "list or count")->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  app.add_option("--output,-o", output, "Write results here instead of standard output");
  app.add_option("--variant", variant, "ours, ours_p or basic")
      ->transform(CLI::CheckedTransformer(variants, CLI::ignore_case));
  app.add_flag("--disable-ub", disable_ub, "Turn off upper-bound pruning");
  app.add_flag("--disable-pair-prune", disable_pair_prune, "Turn off vertex-pair pruning");
  app.add_flag("--stats", stats, "Print run statistics to standard error");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  kplex::RunConfig cfg;
  cfg.threads = threads;
  cfg.mode = mode;
  cfg.branch.k = k;
  cfg.branch.q = q;
  cfg.branch.variant = variant;
  cfg.branch.use_ub = !disable_ub;
  cfg.branch.use_pair_prune = !disable_pair_prune;
  if (timeout_ms > 0)
    cfg.timeout = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::duration<double, std::milli>(timeout_ms));
  else
    cfg.timeout.reset();

  try {
    kplex::validate(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    const auto load_start = kplex::Clock::now();
    const kplex::Graph g = kplex::read_edge_list_file(input);
    const auto load_time = kplex::Clock::now() - load_start;

    std::unique_ptr<std::ofstream> file;
    std::ostream* out = &std::cout;
    if (!output.empty()) {
      file = std::make_unique<std::ofstream>(output);
      if (!*file) {
        std::cerr << "error: cannot open " << output << " for writing\n";
        return 1;
      }
      out = file.get();
    }

    std::string line;
    const auto result = kplex::run_pipeline(g, cfg, [&](std::span<const kplex::OriginalId> plex) {
      line.clear();
      for (std::size_t i = 0; i < plex.size(); ++i) {
        if (i) line.push_back(' ');
        line += std::to_string(plex[i]);
      }
      line.push_back('\n');
      *out << line;
    });
    if (mode == kplex::OutputMode::count) *out << result.plex_count << '\n';
    out->flush();
    if (!*out) {
      std::cerr << "error: failed writing results\n";
      return 1;
    }

    if (stats) {
      std::cerr << "vertices: " << g.n() << "\n"
                << "edges: " << g.m() << "\n"
                << "plexes: " << result.plex_count << "\n"
                << "tasks_created: " << result.tasks_created << "\n"
                << "tasks_completed: " << result.tasks_completed << "\n"
                << "tasks_stolen: " << result.tasks_stolen << "\n"
                << "stages: " << result.stages << "\n"
                << "threads: " << cfg.threads << "\n"
                << "load_time_s: " << seconds(load_time) << "\n"
                << "wall_time_s: " << seconds(result.wall_time) << "\n";
    }
  } catch (const kplex::ParseError& e) {
    std::cerr << "error: " << input << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
