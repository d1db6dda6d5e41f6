#include "cultrule/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cultrule/error.hpp"

namespace cultrule::io {

namespace {

void dump_value(const json& j, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(depth + 1) * 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner + json(it.key()).dump() + ": ";
        dump_value(it.value(), out, depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line; matrices read row by row.
      const bool flat = std::none_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); });
      if (flat) {
        out += "[";
        bool first = true;
        for (const auto& e : j) {
          if (!first) out += ", ";
          first = false;
          dump_value(e, out, depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        dump_value(e, out, depth + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(Errc::malformed_input, std::string("invalid ") + what + ": " + e.what());
  }
}

json rows_of(const BoolMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m(i, j) ? 1 : 0);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::pair<std::string, std::string> name_pair(const json& p) {
  if (!p.is_array() || p.size() != 2) throw Error(Errc::malformed_input, "relation pairs must have two members");
  return {p.at(0).get<std::string>(), p.at(1).get<std::string>()};
}

}  // namespace

std::string dump_canonical(const json& doc) {
  std::string out;
  dump_value(doc, out, 0);
  out += '\n';
  return out;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::malformed_input, std::string("malformed JSON: ") + e.what());
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::malformed_input, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

json to_json(const Configuration& c) {
  json counts = json::object();
  for (const auto& [size, count] : c.counts()) counts[std::to_string(size)] = count;
  return json{{"counts", counts}};
}

Configuration configuration_from_json(const json& j, int min_cycle) {
  return guarded("configuration", [&] {
    const int mc = j.value("min_cycle", min_cycle);
    Configuration::Counts counts;
    for (const auto& [key, value] : j.at("counts").items()) {
      std::size_t used = 0;
      int size = 0;
      try {
        size = std::stoi(key, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != key.size()) throw Error(Errc::malformed_input, "cycle size key '" + key + "' is not an integer");
      counts[size] = value.get<std::int64_t>();
    }
    return Configuration(std::move(counts), mc);
  });
}

json to_json(const ConfigurationSpace& space) {
  json configs = json::array();
  for (const auto& c : space.configs()) configs.push_back(to_json(c));
  return json{{"min_cycle", space.min_cycle()}, {"configs", configs}};
}

SpacePtr space_from_json(const json& j) {
  return guarded("configuration space", [&]() -> SpacePtr {
    const int min_cycle = j.value("min_cycle", kDefaultMinCycle);
    if (j.contains("order")) {
      return std::make_shared<const ConfigurationSpace>(
          enumerate_configurations(j.at("order").get<int>(), min_cycle));
    }
    std::vector<Configuration> configs;
    for (const auto& c : j.at("configs")) configs.push_back(configuration_from_json(c, min_cycle));
    auto space = std::make_shared<const ConfigurationSpace>(configs, min_cycle);
    for (std::size_t i = 0; i < configs.size(); ++i) {
      if (!(configs[i] == (*space)[i])) {
        throw Error(Errc::malformed_input, "space configurations are not listed in canonical order");
      }
    }
    return space;
  });
}

json to_json(const ContentList& xi) { return json(xi.bits()); }

ContentList content_list_from_json(const json& j) {
  return guarded("content list", [&] { return ContentList(j.get<std::vector<int>>()); });
}

json to_json(const Matrix& m) { return json(m.to_rows()); }

Matrix matrix_from_json(const json& j) {
  return guarded("matrix", [&] {
    const json& rows = j.is_object() ? j.at("matrix") : j;
    const auto values = rows.get<std::vector<std::vector<double>>>();
    for (const auto& row : values)
      if (row.size() != values.front().size()) throw Error(Errc::malformed_input, "matrix rows differ in length");
    return Matrix::from_rows(values);
  });
}

json to_json(const Transform& t) {
  json out{{"space", to_json(t.space())}, {"rows", rows_of(t.entries())}};
  if (!t.label().empty()) out["label"] = t.label();
  return out;
}

Transform transform_from_json(const json& j, SpacePtr space) {
  return guarded("transform", [&] {
    const auto rows = j.at("rows").get<std::vector<std::vector<int>>>();
    BoolMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw Error(Errc::malformed_input, "transform rows must be square");
      for (std::size_t k = 0; k < rows.size(); ++k) {
        if (rows[i][k] != 0 && rows[i][k] != 1) throw Error(Errc::malformed_input, "transform entries must be 0 or 1");
        m.set(i, k, rows[i][k] == 1);
      }
    }
    return Transform(std::move(space), std::move(m), j.value("label", std::string{}));
  });
}

Transform transform_from_json(const json& j) {
  return guarded("transform", [&] { return transform_from_json(j, space_from_json(j.at("space"))); });
}

json to_json(const PossibilityTransform& p) {
  return json{{"support", to_json(p.support())}, {"entries", to_json(p.entries())}};
}

PossibilityTransform possibility_from_json(const json& j) {
  return guarded("possibility transform", [&] {
    return PossibilityTransform(transform_from_json(j.at("support")), matrix_from_json(j.at("entries")));
  });
}

json to_json(const ValidationReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"to", v.to + 1}, {"from", v.from + 1}, {"mu_to", v.mu_to}, {"mu_from", v.mu_from}});
  }
  return json{{"valid", r.valid}, {"violations", violations}};
}

json to_json(const ViabilityReport& r, const ConfigurationSpace& space) {
  json minimal = json::array();
  for (std::size_t i : r.minimal_structures) minimal.push_back({{"index", i + 1}, {"configuration", to_json(space[i])}});
  return json{{"viable", r.viable},
              {"maximal_witness", to_json(r.maximal_witness)},
              {"minimal_structures", minimal},
              {"structural_number", r.structural_number ? json(*r.structural_number) : json(nullptr)}};
}

json to_json(const PossibilityDensity& d) {
  return json{{"values", d.values},
              {"sum", d.sum()},
              {"axiom1", d.axiom1},
              {"side", d.side == DensitySide::left ? "left" : "right"},
              {"w", d.w}};
}

json to_json(const Theorem1Report& r) {
  return json{{"conditions",
               {{"i_phi_nonzero", r.phi_nonzero},
                {"ii_xi_nonzero", r.xi_nonzero},
                {"iii_rows_stochastic", r.rows_stochastic},
                {"iv_phi_equals_xi", r.phi_equals_xi},
                {"v_equal_weights", r.weights_equal}}},
              {"all_conditions", r.all_conditions()},
              {"w", r.w},
              {"pi", r.pi},
              {"omega", r.omega},
              {"inner_product", r.inner},
              {"inner_product_is_one", r.inner_is_one()},
              {"discrepancy", r.discrepancy()}};
}

json to_json(const StochasticReport& r) {
  return json{{"doubly_stochastic", r.doubly_stochastic},
              {"nonnegative", r.nonnegative},
              {"row_sums", r.row_sums},
              {"col_sums", r.col_sums}};
}

json to_json(const PureSystem& p) {
  const auto xi = ContentList::singleton(p.space->size(), p.index);
  const auto pi = density(p.possibility, xi, DensitySide::left);
  const auto& entries = p.possibility.entries();
  return json{{"index", p.index + 1},
              {"minimal_structure", to_json((*p.space)[p.index])},
              {"structural_number", p.structural_number},
              {"rule", to_json(p.rule)},
              {"possibility", to_json(p.possibility)},
              {"trace", entries.trace()},
              {"trace_squared", (entries * entries).trace()},
              {"symmetric", entries.symmetric()},
              {"idempotent", compose(p.rule, p.rule) == p.rule},
              {"density", to_json(pi)},
              {"self_inner_product", inner_product(pi, pi)}};
}

json to_json(const EthnographerReport& r) {
  return json{{"trace", r.trace},
              {"mean_structural_number", r.mean_structural_number ? json(*r.mean_structural_number) : json(nullptr)},
              {"hypothesis_met", r.hypothesis_met}};
}

json to_json(const BvnDecomposition& d) {
  json terms = json::array();
  for (const auto& t : d.terms) {
    json perm = json::array();
    for (std::size_t p : t.perm.indices()) perm.push_back(p + 1);
    terms.push_back({{"weight", t.weight}, {"perm", perm}});
  }
  return json{{"terms", terms}, {"residual", d.residual}};
}

BvnDecomposition decomposition_from_json(const json& j) {
  return guarded("decomposition", [&] {
    BvnDecomposition d;
    for (const auto& t : j.at("terms")) {
      std::vector<std::size_t> perm;
      for (const auto& p : t.at("perm")) {
        const auto one_based = p.get<std::int64_t>();
        if (one_based < 1) throw Error(Errc::malformed_input, "permutation entries are 1-based");
        perm.push_back(static_cast<std::size_t>(one_based - 1));
      }
      d.terms.push_back({t.at("weight").get<double>(), Permutation(std::move(perm))});
    }
    d.residual = j.value("residual", 0.0);
    return d;
  });
}

GenealogyInput genealogy_from_json(const json& j) {
  return guarded("genealogy", [&] {
    GenealogyInput g;
    g.individuals = j.at("individuals").get<std::vector<std::string>>();
    for (const auto& p : j.value("descent", json::array())) g.descent.push_back(name_pair(p));
    for (const auto& p : j.value("marriage", json::array())) g.marriage.push_back(name_pair(p));
    return g;
  });
}

json to_json(const EvolutionaryStructure& s) {
  const auto& names = s.individuals();
  json immediate = json::array();
  for (std::size_t c = 0; c < s.size(); ++c)
    for (std::size_t p : s.parents_of(c)) immediate.push_back({names[p], names[c]});
  json marriages = json::array();
  for (const auto& [a, b] : s.marriages()) marriages.push_back({names[a], names[b]});
  json sibships = json::array();
  for (const auto& cell : s.sibships()) {
    json members = json::array();
    for (std::size_t i : cell) members.push_back(names[i]);
    sibships.push_back(std::move(members));
  }
  return json{{"valid", true},
              {"individuals", names},
              {"immediate_descent", immediate},
              {"marriage", marriages},
              {"sibships", sibships}};
}

json to_json(const DescentSequence& ds, const EvolutionaryStructure& s) {
  const auto& names = s.individuals();
  json generations = json::array();
  for (std::size_t t = 0; t < ds.generations.size(); ++t) {
    const auto& g = ds.generations[t];
    json members = json::array();
    for (std::size_t i : g.members) members.push_back(names[i]);
    const auto st = g.stats();
    generations.push_back(
        {{"t", t}, {"members", members}, {"mu", st.mu}, {"beta", st.beta}, {"gamma", st.gamma}});
  }
  return json{{"generations", generations}};
}

json to_json(const SequenceReport& r) {
  json stats = json::array();
  for (std::size_t t = 0; t < r.stats.size(); ++t) {
    stats.push_back({{"t", t}, {"mu", r.stats[t].mu}, {"beta", r.stats[t].beta}, {"gamma", r.stats[t].gamma}});
  }
  json flags = json::array();
  for (const auto& f : r.flags) {
    flags.push_back({{"kind", f.kind == SequenceFlag::Kind::marriages_increase ? "marriages_increase"
                                                                                 : "sibships_differ_from_parent_marriages"},
                     {"t", f.generation},
                     {"expected", f.expected},
                     {"actual", f.actual}});
  }
  return json{{"generations", stats}, {"flags", flags}, {"ok", r.ok()}};
}

json to_json(const Trajectory& t) {
  json path = json::array();
  for (std::size_t i : t.path) path.push_back(i + 1);
  return json{{"seed", t.seed}, {"path", path}, {"dead_end", t.dead_end}};
}

json to_json(const std::vector<Violation>& violations) {
  json out = json::array();
  for (const auto& v : violations) {
    out.push_back({{"kind", v.kind}, {"message", v.message}, {"individuals", v.individuals}});
  }
  return out;
}

}  // namespace cultrule::io
