#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pcband/cli.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw pcband::ValidationError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

pcband::Vec3 parse_alpha(const std::string& text, int d) {
  pcband::Vec3 a = pcband::Vec3::Zero();
  std::istringstream ss(text);
  std::string tok;
  int c = 0;
  while (std::getline(ss, tok, ',')) {
    if (c >= d) throw pcband::ValidationError("too many alpha components");
    a[c++] = std::stod(tok);
  }
  if (c != d)
    throw pcband::ValidationError("--alpha needs exactly d components");
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subwavelength band structure of high-contrast phononic crystals"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", alpha_text;
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration")
        ->required();
  };
  auto* bands = app.add_subcommand("bands", "band sweep: CSV + gap report");
  add_config(bands);
  bands->add_option("--out", out_dir, "output directory");
  auto* ball = app.add_subcommand("ball-check", "3D ball closed-form check");
  add_config(ball);
  auto* oracle = app.add_subcommand("oracle", "asymptotic law verification");
  add_config(oracle);
  auto* qmat = app.add_subcommand("qmatrix", "Q^alpha at one quasi-momentum");
  add_config(qmat);
  qmat->add_option("--alpha", alpha_text, "a1,a2[,a3]")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const auto cfg = pcband::parse_config(read_file(config_path));
    if (bands->parsed()) return pcband::run_bands(cfg, out_dir, std::cout);
    if (ball->parsed()) return pcband::run_ball_check(cfg, std::cout);
    if (oracle->parsed()) return pcband::run_oracle(cfg, std::cout);
    if (qmat->parsed())
      return pcband::run_qmatrix(cfg, parse_alpha(alpha_text, cfg.dimension),
                                 std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pcband::exit_code_for(e);
  }
  return 1;
}
