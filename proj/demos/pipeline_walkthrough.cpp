// Runs the full pipeline on two small instances: the two-segment
// nef-partition, whose only decomposition is the base one, and
// P^1 x P^1, which has a nontrivial pair with a 2x2 bridge matrix.

#include <iostream>

#include "dmirror/io/commands.hpp"

using namespace dmirror;

namespace {

int walk(const std::string& title, const Instance& in) {
  std::cout << "== " << title << "\n";
  CommandOptions opt;
  opt.samples = 20;
  CommandOutcome out = run_command("pipeline", canonical_text(to_json(in)), opt);
  const Json& result = out.report["result"];
  std::cout << "decompositions: " << result["decompositions"]["count"] << "\n";
  for (const auto& d : result["decompositions"]["decompositions"])
    std::cout << "  #" << d["index"] << " blocks " << d["blocks"].dump() << (d["trivial"].get<bool>() ? " (base)" : "")
              << "\n";
  if (result.contains("notice")) std::cout << result["notice"].get<std::string>() << "\n";
  if (result.contains("bridge")) {
    std::cout << "bridge matrices: " << result["bridge"]["matrices"].dump() << "\n";
    std::cout << "evidence: " << result["evidence"]["single_point_both_sides"] << " of "
              << result["evidence"]["samples_on_d"] << " samples have one point on each side\n";
  }
  return out.exit_code;
}

}  // namespace

int main() {
  int rc = walk("two segments", example_instance("two-segment", 0, 0));
  rc |= walk("P^1 x P^1", example_instance("product-projective", 2, 2));
  return rc;
}
