// Command-line front end: runs definition files and the builtin catalog.

#include "courant/catalog.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace courant;

constexpr int kExitFailures = 1;
constexpr int kExitParse = 2;
constexpr int kExitGate = 3;

struct Source {
  std::string file;
  std::string example;
};

SetupDefinition load(const Source& src) {
  if (!src.example.empty()) return builtin_example(src.example).definition;
  if (src.file.empty()) throw std::invalid_argument("give a definition file or --example NAME");
  std::ifstream in(src.file);
  if (!in) throw std::invalid_argument("cannot read " + src.file);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_definition(ss.str());
}

int emit(const Report& report, const std::string& format, bool strict) {
  std::cout << (format == "json" ? report_json(report) : report_text(report));
  if (report.count(CheckStatus::Failed) > 0) return kExitFailures;
  if (strict) {
    for (const auto& t : report.tasks) {
      if (t.status == CheckStatus::NotApplicable || !t.skipped.empty()) return kExitGate;
    }
  }
  return 0;
}

void add_source(CLI::App* cmd, Source& src) {
  cmd->add_option("file", src.file, "definition file");
  cmd->add_option("--example", src.example, "use a builtin example instead of a file");
}

// A copy of `setup` carrying one synthesized task.
SetupDefinition with_task(SetupDefinition setup, std::vector<std::string> words) {
  const std::string text = [&] {
    std::string t = emit_definition(SetupDefinition{setup.name, setup.signature, setup.theta, setup.tensors, {}});
    t += "task";
    for (const auto& w : words) t += " " + w;
    return t + "\n";
  }();
  return parse_definition(text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact big-bracket checks for pre-Courant structures"};
  app.require_subcommand(1);
  app.fallthrough();

  RunOptions options;
  std::string format = "text";
  bool strict = false;
  app.add_option("--max-k", options.bounds.k, "bound for k")->check(CLI::NonNegativeNumber);
  int max_n = -1;
  app.add_option("--max-n", max_n, "bound for n, m, s and t")->check(CLI::NonNegativeNumber);
  app.add_option("--jobs", options.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--strict", strict, "exit 3 when a hypothesis gate skipped a check");
  app.add_flag("--weak-gate", options.identity.weak_gate, "experimental weaker gate where allowed");

  Source src;
  auto* check = app.add_subcommand("check", "run the tasks of a definition");
  add_source(check, src);

  std::string ti = "I";
  std::string tj = "J";
  auto* classify = app.add_subcommand("classify", "classify a pair of tensors");
  add_source(classify, src);
  classify->add_option("-I,--i", ti, "tensor in the Nijenhuis role");
  classify->add_option("-J,--j", tj, "tensor in the deforming role");

  auto* hierarchy = app.add_subcommand("hierarchy", "Poisson-Nijenhuis hierarchy of a pair");
  add_source(hierarchy, src);
  hierarchy->add_option("-I,--i", ti, "Nijenhuis tensor");
  hierarchy->add_option("-J,--j", tj, "Poisson tensor");

  auto* verify = app.add_subcommand("verify-all", "run T-01 .. T-21 over the builtin catalog");

  bool list = false;
  std::string dump;
  auto* examples = app.add_subcommand("examples", "list or print builtin definitions");
  examples->add_flag("--list", list, "list names");
  examples->add_option("--dump", dump, "print one definition");

  CLI11_PARSE(app, argc, argv);
  if (max_n >= 0) {
    options.bounds.n = options.bounds.m = options.bounds.s = options.bounds.t = max_n;
  }

  try {
    if (*examples) {
      if (!dump.empty()) {
        std::cout << emit_definition(builtin_example(dump).definition);
        return 0;
      }
      for (const auto& ex : builtin_examples()) std::cout << ex.name << "  " << ex.description << '\n';
      return 0;
    }
    if (*verify) return emit(verify_all(options), format, strict);
    SetupDefinition setup = load(src);
    if (*classify) setup = with_task(setup, {"classify", "I=" + ti, "J=" + tj});
    if (*hierarchy) setup = with_task(setup, {"hierarchy", "I=" + ti, "J=" + tj});
    return emit(run_setup(setup, options), format, strict);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailures;
  }
}
