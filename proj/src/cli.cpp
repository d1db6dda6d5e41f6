#include "cultrule/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "cultrule/birkhoff.hpp"
#include "cultrule/error.hpp"
#include "cultrule/genealogy.hpp"
#include "cultrule/json_io.hpp"
#include "cultrule/possibility.hpp"
#include "cultrule/transform.hpp"

namespace cultrule::cli {

namespace {

using io::json;

// Payload plus exit code; check verbs report a failed check with exit 1.
struct Outcome {
  json payload;
  int code = kExitOk;
};

ContentList parse_bits(const std::string& text) {
  std::vector<int> bits;
  for (char ch : text) {
    if (ch == '0' || ch == '1') {
      bits.push_back(ch - '0');
    } else if (ch != ',' && ch != ' ' && ch != '[' && ch != ']') {
      throw Error(Errc::malformed_input, "content lists are written as 0/1 digits, e.g. 1,0,1");
    }
  }
  return ContentList(std::move(bits));
}

std::size_t one_based(long value, const char* what) {
  if (value < 1) throw Error(Errc::malformed_input, std::string(what) + " is 1-based");
  return static_cast<std::size_t>(value - 1);
}

struct Options {
  std::string in;
  std::vector<std::string> inputs;
  std::string pi, theta, xi, phi, side = "left";
  std::string out;
  bool quiet = false;
  bool census = false;
  bool convex = false;
  bool two_spouses = false;
  int order = 0;
  int min_cycle = kDefaultMinCycle;
  long index = 0;
  long generation = -1;
  long start = 0;
  std::size_t steps = 0;
  std::uint64_t seed = 0;
  double tol = kStochasticTol;
};

EvolutionaryStructure load_structure(const Options& o) {
  return derive_and_validate(io::genealogy_from_json(io::read_file(o.in)),
                             o.two_spouses ? SpouseBound::two_partners : SpouseBound::one_partner);
}

Outcome cmd_enumerate(const Options& o) {
  const auto space = enumerate_configurations(o.order, o.min_cycle);
  json payload = io::to_json(space);
  if (o.census) {
    auto ptr = std::make_shared<const ConfigurationSpace>(space);
    payload["full_set_census"] = full_set_census(ptr).str();
  }
  return {payload};
}

Outcome cmd_validate(const Options& o) {
  const auto t = io::transform_from_json(io::read_file(o.in));
  const auto report = validate_transform(t);
  json payload = io::to_json(report);
  payload["transpose_admissible"] = transpose_admissible(t).admissible;
  return {payload, report.valid ? kExitOk : kExitDomain};
}

Outcome cmd_compose(const Options& o) {
  std::vector<Transform> sequence;
  for (const auto& path : o.inputs) sequence.push_back(io::transform_from_json(io::read_file(path)));
  History history(std::move(sequence));
  return {io::to_json(history.composite())};
}

Outcome cmd_apply(const Options& o) {
  const auto t = io::transform_from_json(io::read_file(o.in));
  return {json{{"phi", io::to_json(apply(t, parse_bits(o.xi)))}}};
}

Outcome cmd_viability(const Options& o) {
  const auto t = io::transform_from_json(io::read_file(o.in));
  return {io::to_json(viability(t), t.space())};
}

Outcome cmd_density(const Options& o) {
  if (o.side != "left" && o.side != "right") throw Error(Errc::malformed_input, "--side must be left or right");
  const auto p = io::possibility_from_json(io::read_file(o.in));
  return {io::to_json(density(p, parse_bits(o.xi), o.side == "left" ? DensitySide::left : DensitySide::right))};
}

Outcome cmd_theorem1(const Options& o) {
  const auto pi = io::possibility_from_json(io::read_file(o.pi));
  const auto theta = o.theta.empty() ? pi : io::possibility_from_json(io::read_file(o.theta));
  const auto xi = parse_bits(o.xi);
  const auto phi = o.phi.empty() ? xi : parse_bits(o.phi);
  return {io::to_json(theorem1_report(pi, theta, xi, phi))};
}

Outcome cmd_stochastic(const Options& o) {
  const auto m = io::matrix_from_json(io::read_file(o.in));
  const auto report = doubly_stochastic_check(m, o.tol);
  json payload = io::to_json(report);
  payload["class"] = to_string(classify_vertex(m, o.tol));
  return {payload, report.doubly_stochastic ? kExitOk : kExitDomain};
}

Outcome cmd_pure(const Options& o) {
  auto space = std::make_shared<const ConfigurationSpace>(enumerate_configurations(o.order, o.min_cycle));
  return {io::to_json(build_pure_system(space, one_based(o.index, "--index")))};
}

Outcome cmd_combine(const Options& o) {
  const auto doc = io::read_file(o.in);
  std::vector<ConvexTerm> terms;
  try {
    for (const auto& t : doc.at("terms")) {
      const double weight = t.at("weight").get<double>();
      if (t.contains("pure")) {
        const auto& p = t.at("pure");
        auto space = std::make_shared<const ConfigurationSpace>(
            enumerate_configurations(p.at("order").get<int>(), p.value("min_cycle", kDefaultMinCycle)));
        const auto pure = build_pure_system(space, one_based(p.at("index").get<long>(), "pure index"));
        terms.push_back({weight, pure.possibility});
      } else {
        terms.push_back({weight, io::possibility_from_json(t.at("possibility"))});
      }
    }
  } catch (const json::exception& e) {
    throw Error(Errc::malformed_input, std::string("invalid combination: ") + e.what());
  }
  const auto combination = convex_combine(embed_terms(terms));
  return {json{{"mixture", io::to_json(combination.mixture)},
               {"trace", combination.trace()},
               {"ethnographer", io::to_json(ethnographer_report(terms))}}};
}

Outcome cmd_birkhoff(const Options& o) {
  return {io::to_json(bvn_decompose(io::matrix_from_json(io::read_file(o.in)), o.tol))};
}

Outcome cmd_recompose(const Options& o) {
  const auto d = io::decomposition_from_json(io::read_file(o.in));
  return {json{{"matrix", io::to_json(recompose(d.terms, o.convex))}}};
}

Outcome cmd_genealogy_validate(const Options& o) { return {io::to_json(load_structure(o))}; }

Outcome cmd_genealogy_extract(const Options& o) {
  const auto s = load_structure(o);
  const auto ds = partition_generations(s);
  auto extract = [&](std::size_t t) {
    return io::to_json(extract_configuration(ds.generations.at(t), s, o.min_cycle));
  };
  if (o.generation >= 0) {
    const auto t = static_cast<std::size_t>(o.generation);
    if (t >= ds.generations.size()) {
      throw Error(Errc::index_out_of_range, "generation " + std::to_string(t) + " outside 0.." +
                                                std::to_string(ds.generations.size() - 1));
    }
    return {json{{"t", t}, {"configuration", extract(t)}}};
  }
  json generations = json::array();
  for (std::size_t t = 0; t < ds.generations.size(); ++t) {
    json entry{{"t", t}};
    try {
      entry["configuration"] = extract(t);
    } catch (const ValidationError& e) {
      entry["configuration"] = nullptr;
      entry["irregular"] = io::to_json(e.violations());
    }
    generations.push_back(std::move(entry));
  }
  return {json{{"generations", generations}}};
}

Outcome cmd_sequence_report(const Options& o) {
  const auto s = load_structure(o);
  const auto ds = partition_generations(s);
  json payload = io::to_json(sequence_report(ds));
  payload["partition"] = io::to_json(ds, s)["generations"];
  return {payload};
}

Outcome cmd_simulate(const Options& o) {
  const auto doc = io::read_file(o.in);
  const auto start = one_based(o.start, "--start");
  if (doc.contains("entries")) {
    return {io::to_json(simulate_descent(io::possibility_from_json(doc), start, o.steps, o.seed))};
  }
  return {io::to_json(simulate_descent(io::transform_from_json(doc), start, o.steps, o.seed))};
}

json error_payload(const Error& e) {
  json error{{"code", to_string(e.code())}, {"message", e.what()}};
  if (const auto* v = dynamic_cast<const ValidationError*>(&e)) error["violations"] = io::to_json(v->violations());
  return json{{"error", error}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transforms, possibility densities and genealogies of cultural rules", "cultrule"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--out", o.out, "Write the JSON payload to this file");
  app.add_flag("--quiet", o.quiet, "Suppress diagnostics on stderr");

  std::map<CLI::App*, std::function<Outcome(const Options&)>> handlers;
  auto verb = [&](const char* name, const char* help, std::function<Outcome(const Options&)> fn) {
    auto* sub = app.add_subcommand(name, help);
    handlers[sub] = std::move(fn);
    return sub;
  };
  auto with_in = [&](CLI::App* sub) { sub->add_option("--in", o.in, "Input JSON file")->required(); };
  auto with_tol = [&](CLI::App* sub) { sub->add_option("--tol", o.tol, "Tolerance"); };
  auto with_bound = [&](CLI::App* sub) {
    sub->add_flag("--two-spouses", o.two_spouses, "Read #bM <= 2 as at most two spouses");
  };

  auto* enumerate = verb("enumerate", "Configurations of a given order", cmd_enumerate);
  enumerate->add_option("--order", o.order, "Marriage number s")->required();
  enumerate->add_option("--min-cycle", o.min_cycle, "Smallest regular structure");
  enumerate->add_flag("--census", o.census, "Also count the full set of transforms");

  with_in(verb("validate-transform", "Check mu-monotonicity of a transform", cmd_validate));

  verb("compose", "Composite of a history (first --in applies first)", cmd_compose)
      ->add_option("--in", o.inputs, "Transform JSON files")
      ->required();

  auto* apply_cmd = verb("apply", "Apply a transform to a content list", cmd_apply);
  with_in(apply_cmd);
  apply_cmd->add_option("--xi", o.xi, "Content list, e.g. 1,0,1")->required();

  with_in(verb("viability", "Fixed points, minimal structures, structural number", cmd_viability));

  auto* density_cmd = verb("density", "Possibility density of a content list", cmd_density);
  with_in(density_cmd);
  density_cmd->add_option("--xi", o.xi, "Content list")->required();
  density_cmd->add_option("--side", o.side, "left or right");

  auto* theorem = verb("theorem1", "Inner-product conditions report", cmd_theorem1);
  theorem->add_option("--pi", o.pi, "Possibility transform Pi")->required();
  theorem->add_option("--theta", o.theta, "Possibility transform Theta (defaults to Pi)");
  theorem->add_option("--xi", o.xi, "Content list xi")->required();
  theorem->add_option("--phi", o.phi, "Content list phi (defaults to xi)");

  auto* stochastic = verb("stochastic-check", "Doubly stochastic check and vertex class", cmd_stochastic);
  with_in(stochastic);
  with_tol(stochastic);

  auto* pure = verb("pure-system", "Pure system on an enumerated space", cmd_pure);
  pure->add_option("--order", o.order, "Marriage number s")->required();
  pure->add_option("--index", o.index, "1-based minimal structure index")->required();
  pure->add_option("--min-cycle", o.min_cycle, "Smallest regular structure");

  with_in(verb("combine", "Convex combination and ethnographer report", cmd_combine));

  auto* birkhoff = verb("birkhoff", "Birkhoff-von Neumann decomposition", cmd_birkhoff);
  with_in(birkhoff);
  with_tol(birkhoff);

  auto* recompose_cmd = verb("recompose", "Weighted sum of permutations", cmd_recompose);
  with_in(recompose_cmd);
  recompose_cmd->add_flag("--convex", o.convex, "Require weights summing to 1");

  auto* gv = verb("genealogy-validate", "Check the evolutionary-structure axioms", cmd_genealogy_validate);
  with_in(gv);
  with_bound(gv);

  auto* ge = verb("genealogy-extract", "Configurations of each generation", cmd_genealogy_extract);
  with_in(ge);
  with_bound(ge);
  ge->add_option("--generation", o.generation, "0-based generation (default: all)");
  ge->add_option("--min-cycle", o.min_cycle, "Smallest regular structure");

  auto* sr = verb("sequence-report", "Per-generation mu, beta, gamma and descent checks", cmd_sequence_report);
  with_in(sr);
  with_bound(sr);

  auto* sim = verb("simulate", "Seeded configuration trajectory under a rule", cmd_simulate);
  with_in(sim);
  sim->add_option("--start", o.start, "1-based start configuration")->required();
  sim->add_option("--steps", o.steps, "Number of transitions")->required();
  sim->add_option("--seed", o.seed, "Generator seed")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "cultrule: " << e.what() << '\n';
    return kExitMalformed;
  }

  CLI::App* chosen = app.get_subcommands().front();
  Outcome outcome;
  try {
    outcome = handlers.at(chosen)(o);
  } catch (const Error& e) {
    if (!o.quiet) err << "cultrule " << chosen->get_name() << ": " << e.what() << '\n';
    if (e.code() == Errc::malformed_input) return kExitMalformed;
    outcome = {error_payload(e), kExitDomain};
  } catch (const json::exception& e) {
    if (!o.quiet) err << "cultrule " << chosen->get_name() << ": " << e.what() << '\n';
    return kExitMalformed;
  }

  const std::string text = io::dump_canonical(outcome.payload);
  if (o.out.empty()) {
    out << text;
  } else {
    std::ofstream file(o.out, std::ios::binary);
    if (!file) {
      if (!o.quiet) err << "cultrule: cannot write " << o.out << '\n';
      return kExitMalformed;
    }
    file << text;
  }
  return outcome.code;
}

}  // namespace cultrule::cli
