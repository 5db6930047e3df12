#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "esdg/runner.hpp"

namespace {

std::vector<int> parse_degree_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t pos = 0;
      int v = std::stoi(tok, &pos);
      if (pos != tok.size() || v < 1) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--degrees",
                                 "expected a comma-separated list of degrees");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropy-stable DGSEM solver with provably bounded open boundaries"};
  app.require_subcommand(1);

  std::string run_config;
  CLI::App* run = app.add_subcommand("run", "advance a configured scenario");
  run->add_option("config", run_config, "path to a scenario config file")
      ->required();

  CLI::App* ver =
      app.add_subcommand("verify", "check every algebraic property the scheme relies on");

  std::string conv_config, conv_degrees = "3,5,7";
  CLI::App* conv = app.add_subcommand(
      "convergence", "rerun a scenario over a list of polynomial degrees");
  conv->add_option("config", conv_config, "path to a scenario config file")
      ->required();
  conv->add_option("--degrees", conv_degrees,
                   "comma-separated polynomial degrees");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed())
    return esdg::cli::cmd_run(run_config, std::cout, std::cerr);
  if (ver->parsed()) return esdg::cli::cmd_verify(std::cout);
  if (conv->parsed())
    return esdg::cli::cmd_convergence(conv_config,
                                      parse_degree_list(conv_degrees),
                                      std::cout, std::cerr);
  return 1;
}
