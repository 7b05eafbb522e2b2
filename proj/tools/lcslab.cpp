#include <CLI11.hpp>

#include <iostream>

#include "lcs/cli/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"lcslab: exact Lagrangians in locally conformally symplectic cotangent bundles"};
  app.require_subcommand(1);
  lcs::cli::RunOptions opt;
  std::vector<std::string> overrides;

  for (const auto& name : lcs::cli::subcommands()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("scene_file", opt.scene_path, "Scene file (scene-v1 JSON)");
    sub->add_option("--scene", opt.scene_path, "Scene file (alternative to the positional argument)");
    sub->add_option("--out", opt.out_dir, "Output directory (default $LCSLAB_OUT or ./lcslab-out)");
    sub->add_option("--seed", opt.seed, "Sampling seed")->default_val(0);
    sub->add_option("--threads", opt.threads, "Worker cap (0 = OpenMP default)")->default_val(0);
    sub->add_option("--tol-override", overrides, "KEY=VAL, repeatable");
    sub->add_flag("--quiet", opt.quiet, "Only the exit code");
    sub->callback([&opt, name] { opt.subcommand = name; });
  }
  CLI11_PARSE(app, argc, argv);

  if (opt.scene_path.empty()) {
    std::cerr << "lcslab: a scene file is required\n";
    return lcs::cli::kExitSchema;
  }
  for (const auto& o : overrides) {
    try {
      opt.overrides.insert(lcs::cli::parse_override(o));
    } catch (const std::exception& e) {
      std::cerr << "lcslab: --tol-override: " << e.what() << "\n";
      return lcs::cli::kExitSchema;
    }
  }
  return lcs::cli::run(opt);
}
