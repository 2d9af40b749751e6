#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ttgeo/shell.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with bounded complexes of filtered F2[C2]-modules"};
  std::string command;
  std::vector<std::string> args;
  ttgeo::RunOptions opt;
  app.add_option("command", command,
                 "decompose, tensor, dual, minimize, support, classify, member, hom, gr, fgt, tfgt, tate, atlas, verify")
      ->required();
  app.add_option("args", args, "expressions or atlas name");
  app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"text", "json-like"}));
  app.add_flag("--trace", opt.trace, "show which residue tests were nonzero");
  app.add_option("--atlas", opt.atlas, "atlas: KbA, DATM2, DTM2, DAM2, DATMZ");
  app.add_flag("--closed-count", opt.closed_count, "atlas: number of closed subsets");
  app.add_option("--closure", opt.closure, "atlas: closure of a point");
  app.add_option("--is-closed", opt.is_closed, "atlas: is the given set closed");
  app.add_option("--project", opt.project, "atlas DTM2 or DAM2: image of a point of DATM2");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  try {
    ttgeo::Report r = ttgeo::run(command, args, opt);
    std::cout << r.render(opt.format);
    return r.exit_code;
  } catch (const ttgeo::EngineError& e) {
    std::cerr << "engine error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "engine error: " << e.what() << "\n";
    return 2;
  }
}
