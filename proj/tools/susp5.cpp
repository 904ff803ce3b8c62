// susp5: decompositions and invariants of simply-connected-suspension 5-manifolds.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "susp5/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Suspension splittings, K/KO and cohomotopy of 5-manifold descriptors"};
  susp5::RunConfig cfg;
  std::string mode = "single", format = "human", check = "all";
  app.add_option("inputs", cfg.inputs, "Descriptor files (stdin when omitted)");
  app.add_option("--mode", mode, "Suspension depth")->check(CLI::IsMember({"single", "double"}));
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"human", "structured"}));
  app.add_option("--check", check, "Run the oracles")->check(CLI::IsMember({"all", "none"}));
  app.add_option("--out", cfg.out, "Write reports to this file instead of stdout");
  app.add_flag("-v,--verbose", cfg.verbosity, "Include the reduction trace");
  app.add_flag("--inject-fault", cfg.inject_fault)->group("");
  CLI11_PARSE(app, argc, argv);

  cfg.mode = mode == "double" ? susp5::SuspensionMode::Double : susp5::SuspensionMode::Single;
  cfg.format = format == "structured" ? susp5::OutputFormat::Structured : susp5::OutputFormat::Human;
  cfg.check_homology = cfg.check_pi = check == "all";

  susp5::RunResult res = susp5::run(cfg);
  if (cfg.out) {
    std::ofstream f(*cfg.out, std::ios::binary);
    if (!f || !(f << res.output)) {
      std::cerr << "susp5: cannot write '" << *cfg.out << "'\n";
      return 2;
    }
  } else {
    std::cout << res.output;
  }
  return res.exit_code;
}
