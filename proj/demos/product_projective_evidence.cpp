// Builds the product-projective instance P^{n-1} x ... (t factors), then
// samples the determinantal variety over F_p and prints the fiber counts.

#include <cstdlib>
#include <iostream>

#include "dmirror/io/commands.hpp"

using namespace dmirror;

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 3;
  const std::size_t t = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 3;
  try {
    MirrorSetup m = setup_from_instance(example_instance("product-projective", n, t));
    std::cout << "cone rank " << m.pair.rank() << ", " << m.pair.k_generators.size() << " generators, "
              << m.decompositions.size() << " decompositions\n";
    if (m.decompositions.size() < 2) return 0;
    const std::uint64_t p = 10007;
    auto coeffs = random_coefficients(m.pair, 0, p);
    auto bd = build_bridge(m.pair, m.decompositions[0], m.decompositions[1], coeffs);
    EvidenceReport rep = birationality_evidence(bd, coeffs, 50, p, 0);
    std::cout << "samples on D: " << rep.samples_on_d << "/" << rep.samples_requested << "\n";
    std::cout << "single point on both sides: " << rep.single_point_both_sides << "\n";
    std::cout << "verdict: " << (rep.birational_evidence ? "consistent with birationality" : "inconclusive") << "\n";
    for (const auto& w : rep.warnings) std::cout << "warning: " << w << "\n";
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
