#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dmirror/cone/examples.hpp"
#include "dmirror/io/digest.hpp"
#include "dmirror/io/json_io.hpp"
#include "dmirror/verify/evidence.hpp"

namespace dmirror {

struct CommandOptions {
  std::optional<std::pair<std::size_t, std::size_t>> pair;  // 1-based decomposition indices
  std::size_t samples = 100;
  std::uint64_t prime = 10007;
  std::uint64_t seed = 0;
  bool strict = false;
  bool timing = false;
};

struct CommandOutcome {
  Json report;
  int exit_code = 0;
};

enum ExitCode { exit_ok = 0, exit_input = 1, exit_strict = 2, exit_internal = 3 };

namespace detail {

class Stopwatch {
 public:
  void lap(const std::string& stage) {
    auto now = std::chrono::steady_clock::now();
    laps_.emplace_back(stage, std::chrono::duration<double>(now - last_).count());
    last_ = now;
  }
  Json to_json() const {
    Json j = Json::object();
    for (const auto& [k, v] : laps_) j[k] = v;
    return j;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
  std::vector<std::pair<std::string, double>> laps_;
};

inline Json index_sets(const std::vector<std::vector<std::size_t>>& sets) {
  Json out = Json::array();
  for (const auto& s : sets) {
    Json b = Json::array();
    for (auto i : s) b.push_back(i + 1);
    out.push_back(b);
  }
  return out;
}

inline std::vector<IntVector> matrix_rows(const IntMatrix& m) {
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(m.row(i));
  return out;
}

inline Json polytope_vertices(const Polytope& p) { return to_json(p.vertices()); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Report sections.

inline Json nef_section(const NefPartition& np, const DualNefPartition& dual) {
  Json parts = Json::array(), dparts = Json::array();
  for (const auto& p : np.parts) parts.push_back(detail::polytope_vertices(p));
  for (const auto& p : dual.parts) dparts.push_back(detail::polytope_vertices(p));
  return {{"dimension", np.dim},
          {"length", np.length()},
          {"parts", parts},
          {"sum_vertices", detail::polytope_vertices(np.sum)},
          {"dual_parts", dparts},
          {"dual_hull_vertices", detail::polytope_vertices(dual.hull)},
          {"two_independence_violations",
           {{"parts", detail::index_sets(two_independence_violations(np.parts))},
            {"dual_parts", detail::index_sets(two_independence_violations(dual.parts))}}}};
}

inline Json cone_section(const GorensteinConePair& pair) {
  GorensteinCheck check = verify_reflexive_gorenstein(pair);
  Json j = {{"rank", pair.rank()},
            {"lattice_basis", to_json(detail::matrix_rows(pair.lattice_bar_m.basis()))},
            {"generator_count", pair.k_generators.size()},
            {"generators", to_json(pair.k_generators)},
            {"dual_generator_count", pair.k_dual_generators.size()},
            {"dual_generators", to_json(pair.k_dual_generators)},
            {"deg", to_json(pair.deg)},
            {"deg_dual", to_json(pair.deg_dual)},
            {"index", to_json(pair.index)},
            {"reflexive_gorenstein", check.ok}};
  if (!check.ok) j["failure"] = check.failure;
  return j;
}

inline Json decompositions_section(const MirrorSetup& m) {
  Json list = Json::array();
  for (std::size_t i = 0; i < m.decompositions.size(); ++i) {
    const Decomposition& d = m.decompositions[i];
    list.push_back({{"index", i + 1},
                    {"e_tilde", to_json(d.e_tilde)},
                    {"p", to_json(d.p)},
                    {"blocks", detail::index_sets(d.blocks)},
                    {"r", d.r()},
                    {"trivial", d.trivial()}});
  }
  return {{"count", m.decompositions.size()}, {"base", to_json(m.base)}, {"decompositions", list}};
}

/// The mirror setup of an instance: nef-partition instances use the standard
/// basis decomposition, cone instances the lexicographically first one.
inline MirrorSetup setup_from_instance(const Instance& in) {
  if (in.nef_partition) return setup_mirror(instance_nef_partition(in));
  GorensteinConePair pair = instance_cone(in);
  GorensteinCheck check = verify_reflexive_gorenstein(pair);
  require(check.ok, ErrorKind::not_reflexive, "cone is not reflexive Gorenstein: " + check.failure);
  auto base = find_decomposition(pair);
  require(base.has_value(), ErrorKind::decomposition, "cone: deg_dual has no decomposition into index-many points");
  return setup_mirror(std::move(pair), std::move(*base));
}

namespace detail {

inline std::uint64_t coefficient_prime(const Instance& in, const CommandOptions& opt) {
  if (in.coefficients && in.coefficients->prime) return *in.coefficients->prime;
  return opt.prime;
}

inline std::uint64_t coefficient_seed(const Instance& in, const CommandOptions& opt) {
  if (in.coefficients && in.coefficients->seed) return *in.coefficients->seed;
  return opt.seed;
}

template <class Coeff, class Convert>
CoefficientAssignment<Coeff> explicit_coefficients(const GorensteinConePair& pair, const CoefficientSpec& spec,
                                                   Convert convert) {
  CoefficientAssignment<Coeff> c;
  c.points = slice_points(pair);
  for (const auto& v : c.points) {
    IntVector amb = pair.lattice_bar_m.from_coords(v);
    auto it = spec.values.find(amb);
    require(it != spec.values.end(), ErrorKind::input, "coefficients: no value for slice point " + point_key(amb));
    c.values.push_back(convert(it->second));
  }
  require(spec.values.size() == c.points.size(), ErrorKind::input,
          "coefficients: values given for points outside the degree slice");
  return c;
}

}  // namespace detail

inline CoefficientAssignment<Fp> field_coefficients(const Instance& in, const GorensteinConePair& pair,
                                                    std::uint64_t prime, std::uint64_t seed) {
  require(prime >= 101 && is_probable_prime(prime), ErrorKind::input, "prime must be a prime of at least 101");
  if (in.coefficients && !in.coefficients->values.empty()) {
    auto c = detail::explicit_coefficients<Fp>(pair, *in.coefficients, [&](const Rational& q) {
      Fp num = Fp::from_integer(Integer(boost::multiprecision::numerator(q)), prime);
      Fp den = Fp::from_integer(Integer(boost::multiprecision::denominator(q)), prime);
      require(!den.is_zero(), ErrorKind::input, "coefficients: denominator divisible by the prime");
      return num / den;
    });
    for (const auto& v : c.values)
      require(!v.is_zero(), ErrorKind::degenerate_coefficients, "coefficients: a value vanishes modulo the prime");
    return c;
  }
  return random_coefficients(pair, seed, prime);
}

inline CoefficientAssignment<Rational> rational_coefficients(const Instance& in, const GorensteinConePair& pair,
                                                             std::uint64_t seed) {
  if (in.coefficients && !in.coefficients->values.empty())
    return detail::explicit_coefficients<Rational>(pair, *in.coefficients, [](const Rational& q) { return q; });
  return random_rational_coefficients(pair, seed);
}

inline std::pair<std::size_t, std::size_t> selected_pair(const MirrorSetup& m, const CommandOptions& opt) {
  auto [i, j] = opt.pair.value_or(std::make_pair<std::size_t, std::size_t>(1, 2));
  const std::size_t n = m.decompositions.size();
  require(i >= 1 && i <= n && j >= 1 && j <= n, ErrorKind::input,
          "pair index out of range: " + std::to_string(n) + " decomposition(s) available");
  return {i - 1, j - 1};
}

inline Json bridge_section(const MirrorSetup& m, std::size_t i, std::size_t j, const CoefficientAssignment<Rational>& rq,
                           const BridgeData<Fp>& bd) {
  auto br = build_bridge(m.pair, m.decompositions[i], m.decompositions[j], rq);
  ensure(br.partition_identities && br.matrix_identities, "bridge: symbolic identity check failed");
  ensure(bd.partition_identities && bd.matrix_identities, "bridge: identity check over F_p failed");
  const BridgeContext& c = bd.context;
  DeterminantData<Fp> dd = determinants(bd);
  Json mats = Json::array(), dets = Json::array();
  for (std::size_t k = 0; k < c.r(); ++k) {
    Json rows = Json::array();
    for (const auto& row : bd.matrices_restricted[k]) {
      Json r = Json::array();
      for (const auto& e : row) r.push_back(e.to_string());
      rows.push_back(r);
    }
    mats.push_back({{"block", k + 1}, {"size", c.blocks[k].size()}, {"entries", rows}});
    auto [lo, hi] = dd.dets[k].exponent_range();
    Json witness = dd.witness_checked[k] ? Json(*dd.witness_checked[k]) : Json(nullptr);
    Json span = Json::array();
    for (std::size_t v = 0; v < lo.size(); ++v) span.push_back(hi[v] - lo[v]);
    dets.push_back({{"block", k + 1},
                    {"terms", dd.dets[k].size()},
                    {"exponent_min", lo},
                    {"exponent_max", hi},
                    {"degree_span", span},
                    {"witness_generic", witness}});
  }
  Json perm = Json::array();
  for (auto p : c.permutation) perm.push_back(p + 1);
  return {{"pair", {i + 1, j + 1}},
          {"r", c.r()},
          {"blocks", detail::index_sets(c.blocks)},
          {"etilde_order", perm},
          {"saturation_index", to_json(c.saturation_index)},
          {"bridge_torus_rank", c.xi_count},
          {"identities", {{"partition", true}, {"matrix", true}, {"rational", true}, {"finite_field", true}}},
          {"matrices", mats},
          {"determinants", dets}};
}

inline Json evidence_section(const EvidenceReport& r) {
  Json hist_e = Json::object(), hist_et = Json::object(), points = Json::array();
  for (const auto& [k, v] : r.fiber_histogram_e) hist_e[k] = v;
  for (const auto& [k, v] : r.fiber_histogram_etilde) hist_et[k] = v;
  for (const auto& sp : r.samples) {
    Json y = Json::array();
    for (const auto& x : sp.y) y.push_back(x.v);
    points.push_back(y);
  }
  return {{"prime", r.prime},
          {"seed", r.seed},
          {"samples_requested", r.samples_requested},
          {"samples_on_d", r.samples_on_d},
          {"sampling_failures", r.sampling_failures},
          {"sample_points", points},
          {"fiber_histogram_e", hist_e},
          {"fiber_histogram_etilde", hist_et},
          {"generic_samples", r.generic_samples},
          {"single_point_both_sides", r.single_point_both_sides},
          {"fiber_points_checked", r.fiber_points_checked},
          {"delta_regularity",
           {{"e", {{"pass", r.delta_regular_pass}, {"total", r.delta_regular_total}}},
            {"etilde", {{"pass", r.delta_regular_pass_etilde}, {"total", r.delta_regular_total_etilde}}}}},
          {"birational_evidence", r.birational_evidence},
          {"caveats", r.caveats}};
}

// ---------------------------------------------------------------------------
// Commands.

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"dualize", "nefdual", "cone",     "decompose",
                                              "bridge",  "verify",  "pipeline", "example"};
  return names;
}

/// Report for a command on the given input text.
inline CommandOutcome run_command(const std::string& name, const std::string& input, const CommandOptions& opt) {
  detail::Stopwatch clock;
  Json echo = {{"name", name}};
  if (name == "bridge" || name == "verify" || name == "pipeline") {
    echo["prime"] = opt.prime;
    echo["seed"] = opt.seed;
    echo["strict"] = opt.strict;
    if (opt.pair) echo["pair"] = {opt.pair->first, opt.pair->second};
  }
  if (name == "verify" || name == "pipeline") echo["samples"] = opt.samples;
  Json report = {{"command", echo}};
  Json result = Json::object();
  std::vector<std::string> warnings;
  Json doc = parse_json_text(input);

  if (name == "dualize") {
    if (!doc.is_object()) parse_fail({}, "expected an object");
    reject_unknown(doc, {"polytope"}, {});
    auto verts = rows_from_json(field(doc, "polytope", {}), JsonPath{"polytope"});
    require(!verts.empty(), ErrorKind::input, "field polytope: no vertices");
    const std::size_t dim = verts[0].size();
    for (std::size_t i = 0; i < verts.size(); ++i)
      if (verts[i].size() != dim) parse_fail(JsonPath{"polytope"}[i], "vertices have different lengths");
    report["input_digest"] = "sha256:" + sha256_hex(canonical_text(Json{{"polytope", to_json(verts)}}));
    Polytope p = Polytope::hull(dim, verts);
    Polytope d = dual_polytope(p);
    ReflexivityCertificate cert = is_reflexive(p);
    result = {{"dimension", dim},
              {"vertices", detail::polytope_vertices(p)},
              {"dual_vertices", detail::polytope_vertices(d)},
              {"origin_interior", cert.origin_interior},
              {"reflexive", cert.is_reflexive}};
    if (cert.witness) result["witness"] = to_json(*cert.witness);
    clock.lap("dualize");
  } else {
    Instance in = instance_from_json(doc);
    report["input_digest"] = "sha256:" + sha256_hex(canonical_text(to_json(in)));
    if (name == "cone" && in.cone) {
      result["cone"] = cone_section(instance_cone(in));
      clock.lap("cone");
    } else {
      MirrorSetup m = setup_from_instance(in);
      clock.lap("setup");
      if (name == "nefdual") {
        result["nef"] = nef_section(m.nef, m.dual);
      } else if (name == "cone") {
        result["cone"] = cone_section(m.pair);
      } else if (name == "decompose") {
        result["decompositions"] = decompositions_section(m);
      } else if (name == "bridge" || name == "verify" || name == "pipeline") {
        if (name == "pipeline") {
          result["nef"] = nef_section(m.nef, m.dual);
          result["cone"] = cone_section(m.pair);
          result["decompositions"] = decompositions_section(m);
        }
        if (name == "pipeline" && m.decompositions.size() == 1 && !opt.pair) {
          result["notice"] = "no nontrivial double mirror: the only decomposition of deg_dual is the base one";
        } else {
          auto [i, j] = selected_pair(m, opt);
          const std::uint64_t prime = detail::coefficient_prime(in, opt);
          const std::uint64_t cseed = detail::coefficient_seed(in, opt);
          auto fq = field_coefficients(in, m.pair, prime, cseed);
          auto rq = rational_coefficients(in, m.pair, cseed);
          auto bd = build_bridge(m.pair, m.decompositions[i], m.decompositions[j], fq);
          result["bridge"] = bridge_section(m, i, j, rq, bd);
          clock.lap("bridge");
          if (name != "bridge") {
            EvidenceReport ev = birationality_evidence(bd, fq, opt.samples, prime, opt.seed);
            result["evidence"] = evidence_section(ev);
            warnings = ev.warnings;
            clock.lap("verify");
          }
        }
      } else {
        throw Error(ErrorKind::input, "unknown command: " + name);
      }
    }
  }
  report["result"] = result;
  report["warnings"] = warnings;
  if (opt.timing) report["timing"] = clock.to_json();
  CommandOutcome out;
  out.report = std::move(report);
  out.exit_code = opt.strict && !warnings.empty() ? exit_strict : exit_ok;
  return out;
}

/// Built-in instance files.
inline Instance example_instance(const std::string& name, std::size_t n, std::size_t t) {
  Instance in;
  if (name == "product-projective") {
    require(n >= 2 && t >= 2, ErrorKind::input, "product-projective: need n >= 2 and t >= 2");
    require(n <= 8 && t <= 4, ErrorKind::input, "product-projective: instance too large");
    const std::size_t amb = n * t;
    in.lattice.ambient_rank = amb;
    in.lattice.kind = "kernel";
    for (std::size_t b = 1; b < t; ++b) {
      IntVector row(amb, 0);
      for (std::size_t i = 0; i < n; ++i) {
        row[i] = 1;
        row[b * n + i] = -1;
      }
      in.lattice.rows.push_back(row);
    }
    ConeSpec c;
    std::vector<std::size_t> idx(t, 0);
    for (;;) {
      IntVector x(amb, 0);
      for (std::size_t b = 0; b < t; ++b) x[b * n + idx[b]] = 1;
      c.generators.push_back(x);
      std::size_t b = 0;
      while (b < t && ++idx[b] == n) idx[b++] = 0;
      if (b == t) break;
    }
    std::sort(c.generators.begin(), c.generators.end());
    c.deg = IntVector(amb, 1);
    IntVector dd(amb, 0);
    for (std::size_t i = 0; i < n; ++i) dd[i] = 1;
    c.deg_dual = dd;
    in.cone = std::move(c);
    return in;
  }
  in.lattice.ambient_rank = 2;
  if (name == "two-segment") {
    in.nef_partition = {{{0, 0}, {1, 0}, {-1, 0}}, {{0, 0}, {0, 1}, {0, -1}}};
  } else if (name == "square") {
    in.nef_partition = {{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
  } else {
    throw Error(ErrorKind::input, "unknown example: " + name + " (known: product-projective, two-segment, square)");
  }
  for (auto& part : *in.nef_partition) std::sort(part.begin(), part.end());
  return in;
}

}  // namespace dmirror
