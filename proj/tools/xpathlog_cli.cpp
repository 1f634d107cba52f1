#include <unistd.h>

#include <iostream>

#include "CLI11.hpp"
#include "xpathlog/errors.hpp"
#include "xpathlog/session.hpp"

int main(int argc, char** argv) {
  CLI::App app{"XPathLog interpreter"};
  std::vector<std::string> files;
  std::size_t max_iterations = xpathlog::Limits{}.max_iterations;
  std::string output = "bindings";
  bool trace = false;
  std::string attr_types;

  app.add_option("files", files, "Programs to run in order; reads statements from stdin when none are given");
  app.add_option("--max-iterations", max_iterations, "Fixpoint iteration limit")->check(CLI::PositiveNumber);
  app.add_option("--output", output, "Answer format")->check(CLI::IsMember({"bindings", "xml"}));
  app.add_flag("--trace", trace, "Print one line per fixpoint iteration to stderr");
  app.add_option("--attr-types", attr_types, "File of `element attribute TYPE` lines")->check(CLI::ExistingFile);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  xpathlog::SessionOptions opts;
  opts.limits.max_iterations = max_iterations;
  opts.output = output == "xml" ? xpathlog::OutputMode::xml : xpathlog::OutputMode::bindings;
  opts.trace = trace;
  try {
    if (!attr_types.empty()) opts.load.attr_types = xpathlog::load_attr_types(attr_types);
  } catch (const xpathlog::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  xpathlog::Session session(std::move(opts), std::cout, std::cerr);
  if (!files.empty()) return session.run_files(files);
  return session.repl(std::cin, isatty(STDIN_FILENO) != 0);
}
