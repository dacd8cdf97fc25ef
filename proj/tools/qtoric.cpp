#include <iostream>

#include "CLI11.hpp"
#include "qtoric/cli.hpp"

#ifndef QTORIC_MODELS_DIR
#define QTORIC_MODELS_DIR "models"
#endif

int main(int argc, char** argv) {
  using namespace qtoric;
  cli::RunConfig cfg;
  cfg.models_dir = QTORIC_MODELS_DIR;
  std::string d_max = "3";
  std::string format = "json";
  std::string z_auto;
  std::optional<int> z_min, z_max;

  CLI::App app{"Quasimap I-functions of toric Deligne-Mumford stacks"};
  app.require_subcommand(1);

  auto add_model = [&](CLI::App* sub) { sub->add_option("--model", cfg.model_path, "model JSON file")->required(); };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--d-max", d_max, "degree bound P/Q");
    sub->add_option("--format", format, "json | pretty")->check(CLI::IsMember({"json", "pretty"}));
    sub->add_option("--out", cfg.out_path, "write output to PATH");
  };

  auto* analyze = app.add_subcommand("analyze", "stability, fixed points, sectors, semi-positivity");
  add_model(analyze);
  add_common(analyze);

  auto* classes = app.add_subcommand("classes", "I-contributing curve classes up to a degree");
  add_model(classes);
  add_common(classes);

  auto* iseries = app.add_subcommand("iseries", "small, big, Givental or twisted I-function");
  add_model(iseries);
  add_common(iseries);
  iseries->add_option("--z-min", z_min, "lowest z-power kept");
  iseries->add_option("--z-max", z_max, "highest z-power kept");
  iseries->add_option("--z", z_auto, "'auto' keeps all content")->check(CLI::IsMember({"auto"}));
  iseries->add_option("--twist", cfg.twist, "twist characters C1,C2,... (integers grouped into r-vectors)");
  iseries->add_flag("--big", cfg.big, "big I-function with --insert terms");
  iseries->add_option("--insert", cfg.insertions, "NAME:POLY insertion (repeatable)");
  iseries->add_option("--t-order", cfg.t_order, "total t-degree of the exponential expansion")
      ->check(CLI::NonNegativeNumber);
  iseries->add_option("--givental", cfg.givental, "Givental small I at t0,t1,...,tr (rationals)");
  iseries->add_flag("--check", cfg.check, "embed grading and two-path verification");

  auto* check = app.add_subcommand("check", "structural checks on the small I-function");
  add_model(check);
  add_common(check);

  auto* selftest = app.add_subcommand("selftest", "run the acceptance battery on the model corpus");
  selftest->add_option("--models", cfg.models_dir, "directory of model JSON files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::input_error;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  try {
    cfg.d_max = parse_rational(d_max);
    if (cfg.d_max < 0) throw InputError("--d-max must be nonnegative");
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::input_error;
  }
  cfg.format = format == "pretty" ? cli::Format::pretty : cli::Format::json;
  if (z_min.has_value() != z_max.has_value()) {
    std::cerr << "error: --z-min and --z-max must be given together\n";
    return cli::input_error;
  }
  if (z_min && !z_auto.empty()) {
    std::cerr << "error: --z auto conflicts with --z-min/--z-max\n";
    return cli::input_error;
  }
  if (z_min) {
    if (*z_min > *z_max) {
      std::cerr << "error: --z-min exceeds --z-max\n";
      return cli::input_error;
    }
    cfg.z_window = ZWindow{*z_min, *z_max};
  }

  auto result = cli::dispatch(cfg);
  bool to_stdout = result.exit_code == cli::ok || result.exit_code == cli::check_failure ||
                   (result.exit_code == cli::stability_failure && result.output.rfind("error:", 0) != 0);
  (to_stdout ? std::cout : std::cerr) << result.output;
  return result.exit_code;
}
