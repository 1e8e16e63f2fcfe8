// envlab: a workbench for finite exact categories and their abelian envelopes.
//
// Subcommands:
//   envlab validate <input>            run the structure validator on every
//                                      structure declared in the input
//   envlab run <input> [options]       run the task list declared in the input
//   envlab corpus list                 list the bundled example inputs
//   envlab corpus show <name>          print a bundled example input
//
// <input> is a path to a JSON file, or the name of a bundled corpus entry.
// Exit codes: 0 all checks pass, 1 a check failed, 2 bad input or internal
// error, 3 at least one check was inconclusive (and none failed).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "envlab/corpus.hpp"
#include "envlab/input.hpp"
#include "envlab/report.hpp"
#include "envlab/runner.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

struct Loaded {
  std::string display;  // path or corpus name
  std::string bytes;
};

std::optional<Loaded> load_input(const std::string& arg, std::string& err) {
  std::ifstream f(arg, std::ios::binary);
  if (f) {
    std::ostringstream ss;
    ss << f.rdbuf();
    return Loaded{arg, ss.str()};
  }
  if (const char* text = envlab::corpus_text(arg)) return Loaded{arg, text};
  err = "E_BAD_INPUT: no such file or corpus entry: " + arg;
  return std::nullopt;
}

struct OutputOptions {
  std::string format = "human";
  std::string out_path;
  bool no_timing = false;
};

int emit(const envlab::RunReport& rep, const OutputOptions& oo) {
  const bool timing = !oo.no_timing;
  if (!oo.out_path.empty()) {
    std::ofstream out(oo.out_path, std::ios::binary);
    if (!out) {
      std::cerr << "E_BAD_INPUT: cannot open output file: " << oo.out_path << "\n";
      return 2;
    }
    out << envlab::report_to_machine(rep, timing);
  }
  if (oo.format == "machine")
    std::cout << envlab::report_to_machine(rep, timing);
  else
    std::cout << envlab::report_to_human(rep);
  return envlab::report_exit_code(rep);
}

template <class K>
int run_with(const envlab::ojson& root, const Loaded& in, const envlab::RunOptions& ro,
             const OutputOptions& oo, bool validate_all) {
  envlab::InputData<K> data = envlab::parse_input<K>(root);
  if (validate_all) {
    data.tasks.clear();
    for (const std::string& s : data.structure_order)
      data.tasks.push_back(envlab::TaskSpec{"validate", s, {}});
  }
  envlab::RunReport rep =
      envlab::run_tasks(data, ro, kVersion, envlab::fnv1a_hex(in.bytes));
  if (rep.input_name.empty()) rep.input_name = in.display;
  return emit(rep, oo);
}

int dispatch(const std::string& input_arg, const envlab::RunOptions& ro,
             const OutputOptions& oo, bool validate_all) {
  std::string err;
  std::optional<Loaded> in = load_input(input_arg, err);
  if (!in) {
    std::cerr << err << "\n";
    return 2;
  }
  try {
    envlab::ojson root = envlab::ojson::parse(in->bytes);
    envlab::FieldSpec fs = envlab::parse_field(root);
    if (fs.kind == envlab::FieldSpec::Kind::Prime)
      return run_with<envlab::Fp>(root, *in, ro, oo, validate_all);
    return run_with<envlab::Rational>(root, *in, ro, oo, validate_all);
  } catch (const envlab::ojson::parse_error& e) {
    std::cerr << "E_BAD_INPUT: invalid JSON: " << e.what() << "\n";
    return 2;
  } catch (const envlab::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for finite exact categories and their abelian envelopes"};
  app.set_version_flag("--version", std::string("envlab ") + kVersion);
  app.require_subcommand(1);

  std::string input_arg;
  envlab::RunOptions ro;
  OutputOptions oo;

  CLI::App* validate = app.add_subcommand("validate", "validate every declared structure");
  validate->add_option("input", input_arg, "input file or corpus entry name")->required();
  validate->add_option("--format", oo.format, "output format: human or machine")
      ->check(CLI::IsMember({"human", "machine"}));
  validate->add_option("--out", oo.out_path, "also write the machine report to this file");
  validate->add_flag("--no-timing", oo.no_timing, "omit timing fields from machine output");

  CLI::App* run = app.add_subcommand("run", "run the task list declared in the input");
  run->add_option("input", input_arg, "input file or corpus entry name")->required();
  run->add_option("--format", oo.format, "output format: human or machine")
      ->check(CLI::IsMember({"human", "machine"}));
  run->add_option("--out", oo.out_path, "also write the machine report to this file");
  run->add_flag("--no-timing", oo.no_timing, "omit timing fields from machine output");
  run->add_option("--depth", ro.depth, "override the object-universe depth of every structure")
      ->check(CLI::Range(1, 6));
  run->add_option("--seed", ro.seed, "override the search seed of every structure");

  CLI::App* corpus = app.add_subcommand("corpus", "bundled example inputs");
  CLI::App* clist = corpus->add_subcommand("list", "list bundled inputs");
  std::string show_name;
  CLI::App* cshow = corpus->add_subcommand("show", "print a bundled input");
  cshow->add_option("name", show_name, "corpus entry name")->required();
  corpus->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  if (clist->parsed()) {
    for (const envlab::CorpusEntry& e : envlab::corpus()) std::cout << e.name << "\n";
    return 0;
  }
  if (cshow->parsed()) {
    const char* text = envlab::corpus_text(show_name);
    if (!text) {
      std::cerr << "E_BAD_INPUT: no such corpus entry: " << show_name << "\n";
      return 2;
    }
    std::cout << text;
    return 0;
  }
  return dispatch(input_arg, ro, oo, validate->parsed());
}
