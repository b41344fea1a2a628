#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fracdiff/version.hpp"
#include "fracdiff_tools/cli.hpp"

namespace {

using fracdiff::cli::Command;
using fracdiff::cli::RunConfig;

struct RawFlags {
  std::string x = "0";
  std::string t = "1";
  std::string format = "csv";
};

CLI::App* add_command(CLI::App& app, Command command, const std::string& help, RunConfig& config,
                      RawFlags& raw) {
  CLI::App* sub = app.add_subcommand(std::string(fracdiff::cli::to_string(command)), help);
  sub->callback([&config, command] { config.command = command; });
  sub->add_option("--format", raw.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--rel-tol", config.policy.rel_tol, "Series truncation tolerance");
  sub->add_option("--max-terms", config.policy.max_terms, "Series term cap");
  sub->add_option("--cancellation-limit", config.policy.cancellation_limit,
                  "Largest accepted max|term| / |sum|");
  return sub;
}

void add_x(CLI::App* sub, RawFlags& raw) {
  sub->add_option("--x", raw.x, "Spatial grid: value or start:stop:step");
}

void add_t(CLI::App* sub, RawFlags& raw) {
  sub->add_option("--t", raw.t, "Time grid: value or start:stop:step");
}

void add_weight(CLI::App* sub, RunConfig& config) {
  sub->add_option_function<std::string>(
      "--weight", [&config](const std::string& w) { config.weight_spec = w; },
      "Order weight, e.g. \"0.25:0.5,0.75:0.5\" or \"uniform:1\"");
  sub->add_flag("--normalize", config.normalize_weights, "Rescale the weight to unit mass");
}

void add_beta(CLI::App* sub, RunConfig& config, const std::string& help) {
  sub->add_option_function<double>(
      "--beta", [&config](double b) { config.beta = b; }, help);
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig config;
  RawFlags raw;
  CLI::App app{"Green functions, moments and special functions of fractional diffusion"};
  app.set_version_flag("--version", std::string(fracdiff::version()));
  app.require_subcommand(1);

  auto* mlf = add_command(app, Command::mlf, "Mittag-Leffler function E_beta(-x)", config, raw);
  add_beta(mlf, config, "Order in (0, 1]");
  add_x(mlf, raw);

  auto* mw = add_command(app, Command::mwright, "M-Wright function M_nu(x)", config, raw);
  mw->add_option_function<double>("--nu", [&config](double n) { config.nu = n; }, "Order in (0, 1)");
  add_x(mw, raw);

  auto* gs = add_command(app, Command::green_single, "Single-order Green function u(x, t)", config, raw);
  add_beta(gs, config, "Time-derivative order in (0, 1]");
  add_x(gs, raw);
  add_t(gs, raw);
  gs->add_option("--path", config.path, "series, integral, fourier or mellin")
      ->check(CLI::IsMember({"series", "integral", "fourier", "mellin", "fourier_oracle", "mellin_oracle"}));

  auto* gd = add_command(app, Command::green_dist, "Distributed-order Green function u(x, t)", config, raw);
  add_weight(gd, config);
  add_beta(gd, config, "Shorthand for the single-atom weight beta:1");
  add_x(gd, raw);
  add_t(gd, raw);
  gd->add_option("--path", config.path, "integral or series");

  auto* mo = add_command(app, Command::moments, "Second moment mu_2(t)", config, raw);
  add_weight(mo, config);
  add_beta(mo, config, "Shorthand for the single-atom weight beta:1");
  add_t(mo, raw);

  auto* as = add_command(app, Command::asymptotics,
                         "Moment asymptotics (--weight) or Green-function tail (--beta)", config, raw);
  add_weight(as, config);
  add_beta(as, config, "Order for the stretched exponential tail");
  add_x(as, raw);
  add_t(as, raw);

  add_command(app, Command::selftest, "Run the acceptance checks", config, raw);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    fracdiff::cli::write_error(std::cerr, "config", e.what());
    return fracdiff::cli::kExitConfig;
  }

  try {
    config.x = fracdiff::cli::parse_grid(raw.x);
    config.t = fracdiff::cli::parse_grid(raw.t);
  } catch (const fracdiff::cli::ConfigError& e) {
    fracdiff::cli::write_error(std::cerr, "config", e.what(), config.command);
    return fracdiff::cli::kExitConfig;
  }
  config.format = raw.format == "json" ? fracdiff::cli::Format::json : fracdiff::cli::Format::csv;
  if (config.command == Command::green_dist && !gd->count("--path")) config.path = "integral";
  return fracdiff::cli::run(config, std::cout, std::cerr);
}
