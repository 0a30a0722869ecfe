// pqdist: command-line front end for the d_p distance library.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pqdist/io.hpp"
#include "pqdist/version.hpp"

int main(int argc, char** argv) {
  using namespace pqdist;
  using namespace pqdist::cli;

  CLI::App app{"Distances on pure states induced by a distance matrix"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string format_name = "text";

  // validate
  std::string validate_matrix;
  auto* validate = app.add_subcommand("validate", "check that a matrix file is a distance matrix");
  validate->add_option("--matrix,matrix", validate_matrix, "matrix JSON file")->required();
  validate->add_option("--format", format_name, "text|json")->check(CLI::IsMember({"text", "json"}));

  // dist
  std::string dist_matrix, dist_x, dist_y;
  double dist_p = 2.0;
  auto* dist = app.add_subcommand("dist", "evaluate d_p between two states");
  dist->add_option("--matrix", dist_matrix, "matrix JSON file")->required();
  dist->add_option("--x", dist_x, "state JSON file")->required();
  dist->add_option("--y", dist_y, "state JSON file")->required();
  dist->add_option("--p", dist_p, "exponent (default 2)");
  dist->add_option("--format", format_name, "text|json|csv")->check(CLI::IsMember({"text", "json", "csv"}));

  // fuzz
  TrialConfig cfg;
  std::string property = "triangle", mode, config_path, matrix_path, out_path, fuzz_format = "json";
  bool expect_violation = false;
  auto* fz = app.add_subcommand("fuzz", "randomized check of one inequality; writes a JSON report");
  fz->add_option("--config", config_path, "TrialConfig JSON file; flags override its fields");
  auto* prop_opt = fz->add_option("--property", property, "triangle|minorial|convexity|projector|reduction|w1");
  auto* n_opt = fz->add_option("--n", cfg.n, "dimension");
  auto* p_opt = fz->add_option("--p", cfg.p, "exponent");
  auto* trials_opt = fz->add_option("--trials", cfg.trials, "number of trials");
  auto* seed_opt = fz->add_option("--seed", cfg.seed, "64-bit seed");
  auto* mode_opt = fz->add_option("--mode", mode, "euclidean-points|repaired-random|zero-one|user-supplied");
  fz->add_option("--matrix", matrix_path, "weight matrix JSON file (implies --mode user-supplied)");
  auto* tol_opt = fz->add_option("--tolerance", cfg.tolerance, "violation threshold relative to scale");
  auto* fn_opt = fz->add_option("--function", cfg.function, "convexity: max|min|sum|powersum");
  fz->add_option("--format", fuzz_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  fz->add_option("--out", out_path, "write the report here instead of stdout");
  fz->add_flag("--expect-violation", expect_violation, "succeed only if a violation is found");

  // counterexample
  double ce_p = 1.0, ce_e12 = 1.0;
  std::optional<double> ce_theta;
  auto* ce = app.add_subcommand("counterexample", "triangle-inequality failure of d_p for p < 2");
  ce->add_option("--p", ce_p, "exponent in (0, 2)")->required();
  ce->add_option("--e12", ce_e12, "positive weight E_12 (default 1)");
  ce->add_option("--theta", ce_theta, "override the angle, in radians");
  ce->add_option("--format", format_name, "text|json")->check(CLI::IsMember({"text", "json"}));

  // embed
  std::string embed_matrix, embed_out;
  double embed_p = 2.0;
  auto* em = app.add_subcommand("embed", "isometric embedding of a finite metric space");
  em->add_option("--matrix", embed_matrix, "matrix JSON file")->required();
  em->add_option("--p", embed_p, "exponent >= 2 (default 2)");
  em->add_option("--out", embed_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*validate) return cmd_validate(validate_matrix, parse_format(format_name), std::cout, std::cerr);
    if (*dist) return cmd_dist(dist_matrix, dist_p, dist_x, dist_y, parse_format(format_name), std::cout, std::cerr);
    if (*ce) return cmd_counterexample(ce_p, ce_e12, ce_theta, parse_format(format_name), std::cout, std::cerr);
    if (*em) return cmd_embed(embed_matrix, embed_p, embed_out, std::cout, std::cerr);

    FuzzOptions opt;
    TrialConfig base;
    if (!config_path.empty()) base = config_from_json(read_json_file(config_path));
    // explicit flags win over the config file
    if (*prop_opt || config_path.empty()) base.property = parse_property(property);
    if (*n_opt) base.n = cfg.n;
    if (*p_opt) base.p = cfg.p;
    if (*trials_opt) base.trials = cfg.trials;
    if (*seed_opt) base.seed = cfg.seed;
    if (*tol_opt) base.tolerance = cfg.tolerance;
    if (*fn_opt) base.function = cfg.function;
    if (!matrix_path.empty()) {
      base.matrix = load_matrix(matrix_path);
      base.matrix_mode = MatrixMode::user_supplied;
      if (!*n_opt) base.n = base.matrix->size();
    }
    if (*mode_opt) base.matrix_mode = parse_matrix_mode(mode);
    opt.config = base;
    opt.expect_violation = expect_violation;
    opt.format = parse_format(fuzz_format);
    if (!out_path.empty()) opt.out_path = out_path;
    return cmd_fuzz(opt, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
}
