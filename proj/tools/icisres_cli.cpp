// Command-line front end: reads a germ file, runs one command and prints a
// JSON or text report. Exit status 0 on success, 2 on a mathematical
// discrepancy, 1 on any error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "icisres/icisres.hpp"

namespace {

std::string line_of(const std::string& text, std::size_t line) {
  std::istringstream in(text);
  std::string l;
  for (std::size_t i = 0; i < line && std::getline(in, l); ++i) {
  }
  return l;
}

void print_parse_error(const std::string& path, const std::string& text, const icisres::ParseError& e) {
  std::cerr << path << ":" << e.line() << ":" << e.column() << ": " << e.what() << "\n";
  std::string l = line_of(text, e.line());
  std::cerr << "  " << l << "\n  ";
  for (std::size_t i = 1; i < e.column() && i <= l.size(); ++i) std::cerr << (l[i - 1] == '\t' ? '\t' : ' ');
  std::cerr << "^\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Index and residue computations for 1-forms on complete intersection germs"};
  std::string command, path, format = "text";
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> cap, max_cap;
  std::optional<std::size_t> attempts;
  std::size_t trials = 10;
  std::vector<std::string> suites;

  app.add_option("command", command, "index | residue | sigma | good-coords | pairing | curve-index | mult | verify | all")
      ->required()
      ->check(CLI::IsMember(icisres::all_commands()));
  app.add_option("file", path, "germ file (not used by verify)");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", seed, "seed for random coordinates and verification trials");
  app.add_option("--cap", cap, "initial truncation degree");
  app.add_option("--max-cap", max_cap, "largest truncation degree before giving up");
  app.add_option("--attempts", attempts, "random draws when searching for good coordinates");
  app.add_option("--trials", trials, "trials per verification suite");
  app.add_option("--suite", suites, "verification suites (repeatable or comma separated)")
      ->delimiter(',')
      ->check(CLI::IsMember(icisres::all_suites()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  icisres::EngineSettings settings;
  if (cap) settings.initial_cap = *cap;
  if (max_cap) settings.max_cap = *max_cap;
  if (attempts) settings.attempts = *attempts;

  std::string text;
  try {
    icisres::Report report;
    if (command == "verify") {
      icisres::VerificationPlan plan;
      if (!suites.empty()) plan.suites = suites;
      plan.trials = trials;
      plan.seed = seed.value_or(1);
      plan.settings = settings;
      report = icisres::verify_report(plan);
    } else {
      if (path.empty()) throw icisres::InvalidProblem("command '" + command + "' needs a germ file");
      std::ifstream in(path, std::ios::binary);
      if (!in) throw icisres::Error("cannot open '" + path + "'");
      std::ostringstream buf;
      buf << in.rdbuf();
      text = buf.str();
      auto file = icisres::parse_germ_file(text);
      // flags take precedence over the file's own settings
      if (cap) file.cap = cap;
      if (max_cap) file.max_cap = max_cap;
      if (attempts) file.attempts = attempts;
      report = icisres::dispatch(command, text, file, seed, settings);
    }
    std::cout << (format == "json" ? icisres::render_json(report) : icisres::render_text(report));
    return report.exit_code();
  } catch (const icisres::ParseError& e) {
    print_parse_error(path, text, e);
  } catch (const std::exception& e) {
    std::cerr << (path.empty() ? std::string("icisres") : path) << ": error: " << e.what() << "\n";
  }
  return 1;
}
