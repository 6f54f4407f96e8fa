#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dmirror/io/commands.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw dmirror::Error(dmirror::ErrorKind::input, "cannot open input file " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw dmirror::Error(dmirror::ErrorKind::input, "cannot open output file " + path);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toric double mirrors: nef-partitions, Gorenstein cones, determinantal bridges"};
  app.require_subcommand(1);
  dmirror::CommandOptions opt;
  std::vector<std::size_t> pair;
  std::string input = "-", output, example_name;
  std::size_t n = 5, t = 3;
  bool pretty = false;

  const std::map<std::string, std::string> descriptions{
      {"dualize", "Dual polytope of a reflexive polytope"},
      {"nefdual", "Dual nef-partition and 2-independence check"},
      {"cone", "Gorenstein cone pair and reflexivity certificate"},
      {"decompose", "Decompositions of deg_dual with their block partitions"},
      {"bridge", "Bridge matrices and determinants for a pair of decompositions"},
      {"verify", "Finite-field birationality evidence for a pair"},
      {"pipeline", "cone, decompose, bridge and verify in one report"},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& name : dmirror::command_names()) {
    auto it = descriptions.find(name);
    CLI::App* sub = app.add_subcommand(name, it == descriptions.end() ? std::string() : it->second);
    subs[name] = sub;
    sub->add_flag("--pretty", pretty, "Indent the JSON output");
    sub->add_option("--output", output, "Write the output to a file instead of stdout");
    if (name == "example") {
      sub->description("Print a built-in instance file");
      sub->add_option("name", example_name, "product-projective, two-segment or square")->required();
      sub->add_option("--n", n, "Points per block (product-projective)");
      sub->add_option("--t", t, "Number of blocks (product-projective)");
      continue;
    }
    sub->add_option("input", input, "Input JSON file, - for stdin")->default_val("-");
    sub->add_flag("--timing", opt.timing, "Add stage timings (breaks byte stability)");
    if (name == "bridge" || name == "verify" || name == "pipeline") {
      sub->add_option("--pair", pair, "1-based decomposition indices I J")->expected(2);
      sub->add_option("--prime", opt.prime, "Prime for finite-field coefficients")->default_val(10007);
      sub->add_option("--seed", opt.seed, "Seed for coefficients and sampling")->default_val(0);
      sub->add_flag("--strict", opt.strict, "Exit with status 2 when hypothesis warnings are raised");
    }
    if (name == "verify" || name == "pipeline")
      sub->add_option("--samples", opt.samples, "Number of samples on D")->default_val(100);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : dmirror::exit_input;
  }

  try {
    std::string command;
    for (const auto& [name, sub] : subs)
      if (sub->parsed()) command = name;
    if (pair.size() == 2) opt.pair = std::make_pair(pair[0], pair[1]);
    std::string text;
    int code = dmirror::exit_ok;
    if (command == "example") {
      dmirror::Json j = dmirror::to_json(dmirror::example_instance(example_name, n, t));
      text = pretty ? j.dump(2) + "\n" : dmirror::canonical_text(j);
    } else {
      dmirror::CommandOutcome out = dmirror::run_command(command, read_input(input), opt);
      text = pretty ? out.report.dump(2) + "\n" : dmirror::canonical_text(out.report);
      code = out.exit_code;
      for (const auto& w : out.report["warnings"]) std::cerr << "warning: " << w.get<std::string>() << "\n";
    }
    write_output(text, output);
    return code;
  } catch (const dmirror::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return dmirror::exit_internal;
  } catch (const dmirror::Error& e) {
    std::cerr << "error [" << dmirror::to_string(e.kind()) << "]: " << e.what() << "\n";
    return dmirror::exit_input;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return dmirror::exit_internal;
  }
}
