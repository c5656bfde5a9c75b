#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cli/app.hpp"

int main(int argc, char** argv) {
  using prolim::cli::RunConfig;
  RunConfig config;
  CLI::App app{"prolim: exact computations on towers of finitely generated abelian groups"};
  app.require_subcommand(1);

  const auto window = [&](CLI::App* sub) {
    sub->add_option("--window", config.window, "Truncation depth J");
  };
  const auto out = [&](CLI::App* sub) {
    sub->add_option("--out", config.out, "Write the JSON report here instead of stdout");
    sub->add_flag("-q,--quiet", [&](std::int64_t) { config.verbosity = 0; }, "No summary on stderr");
  };

  auto* snf = app.add_subcommand("snf", "Smith normal form of a matrix");
  snf->add_option("--matrix", config.matrix, "Matrix file, inline JSON or rows like 1,2;3,4")->required();
  out(snf);

  auto* group = app.add_subcommand("group", "Group operations");
  group->require_subcommand(1);
  auto* canon = group->add_subcommand("canon", "Canonical form of a group");
  canon->add_option("--group", config.group, "Group spec or file")->required();
  out(canon);

  for (const char* name : {"hom", "ext"}) {
    auto* sub = app.add_subcommand(name, std::string(name) + "(source, target)");
    sub->add_option("--source", config.source)->required();
    sub->add_option("--target", config.target)->required();
    out(sub);
  }

  auto* purify = app.add_subcommand("purify", "Saturation of a subgroup of a free group");
  purify->add_option("--group", config.group, "Ambient free group")->required();
  purify->add_option("--matrix", config.matrix, "Subgroup generators as columns")->required();
  out(purify);

  auto* tower = app.add_subcommand("tower", "Inverse towers");
  tower->require_subcommand(1);
  for (const char* name : {"analyze", "nabla", "factor"}) {
    auto* sub = tower->add_subcommand(name);
    sub->add_option("--tower", config.tower, "Builder name or tower file")->required();
    sub->add_option("--coeff", config.coeff, "Coefficient group");
    window(sub);
    out(sub);
    if (std::string(name) == "factor") {
      sub->add_option("--stage", config.stage, "Stage of a factored homomorphism");
      sub->add_option("--functional", config.functional, "Matrix of the stage map into --coeff");
      sub->add_option("--formula", config.formula, "coordinate:k or padic:p,K");
      sub->add_option("--rounds", config.rounds, "Also build a diagonal witness with this many rounds");
    }
  }

  auto* complex = app.add_subcommand("complex", "Simplicial complexes");
  complex->require_subcommand(1);
  for (const char* name : {"homology", "cohomology"}) {
    auto* sub = complex->add_subcommand(name);
    sub->add_option("--complex", config.complex, "Builder name or complex file")->required();
    sub->add_option("--dim", config.dim);
    sub->add_option("--coeff", config.coeff);
    out(sub);
  }

  auto* cech = app.add_subcommand("cech", "Cech constructions on polyhedral towers");
  cech->require_subcommand(1);
  auto* uct = cech->add_subcommand("uct", "Universal coefficient ladder");
  uct->add_option("--tower", config.tower, "Builder name or polyhedral tower file")->required();
  uct->add_option("--dim", config.dim)->required();
  uct->add_option("--coeff", config.coeff);
  window(uct);
  out(uct);

  auto* demo = app.add_subcommand("demo", "Worked examples");
  demo->require_subcommand(1);
  for (const char* name : {"hawaiian", "solenoid", "projplane", "padic", "higman", "specker"}) {
    auto* sub = demo->add_subcommand(name);
    window(sub);
    out(sub);
    sub->add_option("--coeff", config.coeff);
    sub->add_option("--p", config.p);
    sub->add_option("--K", config.precision);
    sub->add_option("--n", config.n, "Higman coefficients n_1,n_2,...");
    sub->add_option("--b", config.b, "Higman targets b_1,...,b_D");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : prolim::cli::kInputError;
  }

  for (CLI::App* sub = &app; !sub->get_subcommands().empty();) {
    sub = sub->get_subcommands().front();
    config.command.push_back(sub->get_name());
  }

  const prolim::cli::RunResult result = prolim::cli::run(config);
  const std::string text = prolim::cli::render(result.report);
  if (config.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(config.out, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot write " << config.out << "\n";
      return prolim::cli::kInputError;
    }
    file << text;
  }
  if (config.verbosity > 0 && !result.summary.empty()) std::cerr << result.summary << "\n";
  return result.exit_code;
}
