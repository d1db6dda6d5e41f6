#include "cultrule/genealogy.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>

namespace cultrule {

namespace {

std::string summarize(const std::vector<Violation>& violations) {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.kind + ": " + v.message;
  }
  return out;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Strongly connected components of size > 1, plus self loops.
std::vector<std::vector<std::size_t>> descent_cycles(const std::vector<std::vector<std::size_t>>& succ) {
  const std::size_t n = succ.size();
  std::vector<std::size_t> index(n, SIZE_MAX), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> cycles;
  std::size_t counter = 0;

  // Iterative Tarjan.
  struct Frame {
    std::size_t v;
    std::size_t next;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != SIZE_MAX) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& f = frames.back();
      if (f.next < succ[f.v].size()) {
        const std::size_t w = succ[f.v][f.next++];
        if (index[w] == SIZE_MAX) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const std::size_t v = f.v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      if (low[v] != index[v]) continue;
      std::vector<std::size_t> component;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        component.push_back(w);
      } while (w != v);
      const bool self_loop = std::find(succ[v].begin(), succ[v].end(), v) != succ[v].end();
      if (component.size() > 1 || self_loop) {
        std::sort(component.begin(), component.end());
        cycles.push_back(std::move(component));
      }
    }
  }
  std::sort(cycles.begin(), cycles.end());
  return cycles;
}

}  // namespace

ValidationError::ValidationError(Errc code, std::vector<Violation> violations)
    : Error(code, summarize(violations)), violations_(std::move(violations)) {}

std::optional<std::size_t> EvolutionaryStructure::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

bool EvolutionaryStructure::siblings(std::size_t a, std::size_t b) const {
  for (std::size_t p : parents_.at(a))
    if (std::find(parents_.at(b).begin(), parents_.at(b).end(), p) != parents_.at(b).end()) return true;
  return false;
}

EvolutionaryStructure derive_and_validate(const GenealogyInput& raw, SpouseBound bound) {
  EvolutionaryStructure s;
  if (raw.individuals.empty()) throw Error(Errc::malformed_input, "a genealogy needs at least one individual");
  std::map<std::string, std::size_t> ids;
  for (const auto& name : raw.individuals) {
    if (!ids.emplace(name, s.names_.size()).second) {
      throw Error(Errc::malformed_input, "duplicate individual '" + name + "'");
    }
    s.names_.push_back(name);
  }
  auto id = [&](const std::string& name) {
    auto it = ids.find(name);
    if (it == ids.end()) throw Error(Errc::malformed_input, "unknown individual '" + name + "'");
    return it->second;
  };
  const std::size_t n = s.names_.size();
  std::vector<Violation> violations;

  // Axiom 1: D irreflexive, antisymmetric; transitivity by closure.
  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& [ancestor, descendant] : raw.descent) succ[id(ancestor)].push_back(id(descendant));
  for (auto& row : succ) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  for (const auto& cycle : descent_cycles(succ)) {
    Violation v{"axiom1", "descent relation is not totally non-symmetric", {}};
    for (std::size_t i : cycle) v.individuals.push_back(s.names_[i]);
    v.message += " among";
    for (const auto& name : v.individuals) v.message += " " + name;
    violations.push_back(std::move(v));
  }

  // Axioms 2 and 4.
  std::set<std::pair<std::size_t, std::size_t>> marriages;
  for (const auto& [a_name, b_name] : raw.marriage) {
    const std::size_t a = id(a_name), b = id(b_name);
    if (a == b) {
      violations.push_back({"axiom2", "marriage pair of " + a_name + " with itself", {a_name}});
      continue;
    }
    marriages.emplace(std::min(a, b), std::max(a, b));
  }
  s.marriages_.assign(marriages.begin(), marriages.end());
  std::vector<std::vector<std::size_t>> spouses(n);
  for (const auto& [a, b] : s.marriages_) {
    spouses[a].push_back(b);
    spouses[b].push_back(a);
  }
  const std::size_t spouse_limit = bound == SpouseBound::one_partner ? 1 : 2;
  for (std::size_t i = 0; i < n; ++i) {
    if (spouses[i].size() <= spouse_limit) continue;
    Violation v{"axiom4",
                s.names_[i] + " belongs to " + std::to_string(spouses[i].size()) + " marriage pairs (at most " +
                    std::to_string(spouse_limit) + " allowed)",
                {s.names_[i]}};
    for (std::size_t j : spouses[i]) v.individuals.push_back(s.names_[j]);
    violations.push_back(std::move(v));
  }

  if (!violations.empty()) throw ValidationError(Errc::genealogy_axiom, std::move(violations));

  // Closure, in reverse topological order (Kahn on the acyclic graph).
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& row : succ)
    for (std::size_t c : row) ++indegree[c];
  std::vector<std::size_t> order;
  std::queue<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push(i);
  while (!ready.empty()) {
    const std::size_t v = ready.front();
    ready.pop();
    order.push_back(v);
    for (std::size_t c : succ[v])
      if (--indegree[c] == 0) ready.push(c);
  }
  s.reach_.assign(n, std::vector<bool>(n, false));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    for (std::size_t c : succ[*it]) {
      s.reach_[*it][c] = true;
      for (std::size_t k = 0; k < n; ++k)
        if (s.reach_[c][k]) s.reach_[*it][k] = true;
    }
  }

  // Axiom 3: P is the transitive reduction of D; B cells group children that
  // share an immediate ancestor.
  s.parents_.assign(n, {});
  s.children_.assign(n, {});
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t c : succ[a]) {
      const bool via_other = std::any_of(succ[a].begin(), succ[a].end(),
                                         [&](std::size_t d) { return d != c && s.reach_[d][c]; });
      if (via_other) continue;
      s.children_[a].push_back(c);
      s.parents_[c].push_back(a);
    }
  }
  for (auto& p : s.parents_) std::sort(p.begin(), p.end());

  DisjointSets cells(n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t c : s.children_[p]) cells.unite(s.children_[p].front(), c);
  std::map<std::size_t, std::vector<std::size_t>> grouped;
  for (std::size_t i = 0; i < n; ++i)
    if (!s.parents_[i].empty()) grouped[cells.find(i)].push_back(i);
  for (auto& [root, members] : grouped) s.sibships_.push_back(std::move(members));
  std::sort(s.sibships_.begin(), s.sibships_.end());
  return s;
}

GenerationStats Generation::stats() const {
  return {static_cast<std::int64_t>(marriages.size()), static_cast<std::int64_t>(sibships.size()),
          static_cast<std::int64_t>(members.size())};
}

DescentSequence partition_generations(const EvolutionaryStructure& s) {
  const std::size_t n = s.size();
  struct Edge {
    std::size_t to;
    long offset;
  };
  std::vector<std::vector<Edge>> adjacency(n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t p : s.parents_of(c)) {
      adjacency[p].push_back({c, +1});
      adjacency[c].push_back({p, -1});
    }
  for (const auto& [a, b] : s.marriages()) {
    adjacency[a].push_back({b, 0});
    adjacency[b].push_back({a, 0});
  }

  std::vector<long> level(n, 0);
  std::vector<std::size_t> component(n, SIZE_MAX);
  std::vector<long> component_min;
  for (std::size_t root = 0; root < n; ++root) {
    if (component[root] != SIZE_MAX) continue;
    const std::size_t id = component_min.size();
    component_min.push_back(0);
    component[root] = id;
    std::queue<std::size_t> frontier;
    frontier.push(root);
    while (!frontier.empty()) {
      const std::size_t v = frontier.front();
      frontier.pop();
      component_min[id] = std::min(component_min[id], level[v]);
      for (const auto& e : adjacency[v]) {
        if (component[e.to] != SIZE_MAX) continue;
        component[e.to] = id;
        level[e.to] = level[v] + e.offset;
        frontier.push(e.to);
      }
    }
  }

  std::vector<Violation> violations;
  const auto& names = s.individuals();
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t p : s.parents_of(c))
      if (level[c] != level[p] + 1) {
        violations.push_back({"inconsistent_descent",
                              "parent " + names[p] + " and child " + names[c] +
                                  " cannot sit in consecutive generations",
                              {names[p], names[c]}});
      }
  for (const auto& [a, b] : s.marriages())
    if (level[a] != level[b]) {
      violations.push_back({"cross_generation_marriage",
                            "spouses " + names[a] + " and " + names[b] + " fall in different generations",
                            {names[a], names[b]}});
    }
  for (const auto& cell : s.sibships())
    for (std::size_t i : cell)
      if (level[i] != level[cell.front()]) {
        violations.push_back({"cross_generation_sibship",
                              "sibship of " + names[cell.front()] + " spans generations",
                              {names[cell.front()], names[i]}});
        break;
      }
  if (!violations.empty()) throw ValidationError(Errc::generation_assignment, std::move(violations));

  DescentSequence ds;
  ds.generation_of.resize(n);
  std::size_t depth = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ds.generation_of[i] = static_cast<std::size_t>(level[i] - component_min[component[i]]);
    depth = std::max(depth, ds.generation_of[i] + 1);
  }
  for (std::size_t i = 0; i < n; ++i)
    if (s.parents_of(i).empty() && ds.generation_of[i] > 0) {
      violations.push_back({"darwinian",
                            names[i] + " has no ancestry but sits in generation " +
                                std::to_string(ds.generation_of[i]),
                            {names[i]}});
    }

  ds.generations.resize(depth);
  for (std::size_t i = 0; i < n; ++i) ds.generations[ds.generation_of[i]].members.push_back(i);
  for (const auto& m : s.marriages()) ds.generations[ds.generation_of[m.first]].marriages.push_back(m);
  for (const auto& cell : s.sibships()) ds.generations[ds.generation_of[cell.front()]].sibships.push_back(cell);
  for (std::size_t t = 0; t < depth; ++t)
    if (ds.generations[t].members.empty()) {
      violations.push_back({"empty_generation", "generation " + std::to_string(t) + " is empty", {}});
    }
  if (!violations.empty()) throw ValidationError(Errc::generation_assignment, std::move(violations));
  return ds;
}

Configuration extract_configuration(const Generation& g, const EvolutionaryStructure& s, int min_cycle) {
  const auto& names = s.individuals();
  const std::size_t vertices = g.marriages.size();
  std::map<std::size_t, std::size_t> marriage_of;  // individual -> marriage vertex
  for (std::size_t v = 0; v < vertices; ++v) {
    marriage_of[g.marriages[v].first] = v;
    marriage_of[g.marriages[v].second] = v;
  }

  std::vector<std::size_t> degree(vertices, 0);
  std::vector<Violation> violations;
  DisjointSets components(vertices);
  for (const auto& cell : g.sibships) {
    std::vector<std::size_t> ends;
    for (std::size_t i : cell)
      if (auto it = marriage_of.find(i); it != marriage_of.end()) ends.push_back(it->second);
    if (ends.size() > 2) {
      Violation v{"irregular_generation", "sibship cell links more than two married members", {}};
      for (std::size_t i : cell) v.individuals.push_back(names[i]);
      violations.push_back(std::move(v));
      continue;
    }
    if (ends.size() < 2) continue;
    ++degree[ends[0]];
    ++degree[ends[1]];
    components.unite(ends[0], ends[1]);
  }

  std::map<std::size_t, std::vector<std::size_t>> grouped;
  for (std::size_t v = 0; v < vertices; ++v) grouped[components.find(v)].push_back(v);

  Configuration::Counts counts;
  for (const auto& [root, members] : grouped) {
    const bool cycle = std::all_of(members.begin(), members.end(), [&](std::size_t v) { return degree[v] == 2; });
    const int length = static_cast<int>(members.size());
    if (cycle && length >= min_cycle) {
      ++counts[length];
      continue;
    }
    Violation v{"irregular_generation",
                cycle ? "regular structure M_" + std::to_string(length) + " is below min_cycle " +
                            std::to_string(min_cycle)
                      : "marriages do not close into a simple cycle",
                {}};
    for (std::size_t m : members) {
      v.individuals.push_back(names[g.marriages[m].first]);
      v.individuals.push_back(names[g.marriages[m].second]);
    }
    violations.push_back(std::move(v));
  }
  if (!violations.empty()) throw ValidationError(Errc::irregular_generation, std::move(violations));
  return Configuration(std::move(counts), min_cycle);
}

SequenceReport sequence_report(const DescentSequence& ds) {
  SequenceReport report;
  for (const auto& g : ds.generations) report.stats.push_back(g.stats());
  for (std::size_t t = 1; t < report.stats.size(); ++t) {
    const auto& prev = report.stats[t - 1];
    const auto& cur = report.stats[t];
    if (cur.beta != prev.mu) {
      report.flags.push_back({SequenceFlag::Kind::sibships_differ_from_parent_marriages, t, prev.mu, cur.beta});
    }
    if (cur.mu > prev.mu) {
      report.flags.push_back({SequenceFlag::Kind::marriages_increase, t, prev.mu, cur.mu});
    }
  }
  return report;
}

namespace {

// Portable draws: std::uniform_*_distribution differ across standard libraries.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void require_feasible(const Transform& rule) {
  const auto report = validate_transform(rule);
  if (!report.valid) {
    const auto& v = report.violations.front();
    throw Error(Errc::infeasible_rule, "rule allows a transition from C_" + std::to_string(v.from + 1) +
                                           " to C_" + std::to_string(v.to + 1) + " raising mu from " +
                                           std::to_string(v.mu_from) + " to " + std::to_string(v.mu_to));
  }
}

template <typename Weight>
Trajectory walk(std::size_t n, std::size_t start, std::size_t steps, std::uint64_t seed, Weight weight) {
  if (start >= n) {
    throw Error(Errc::index_out_of_range, "start index " + std::to_string(start + 1) + " outside 1.." +
                                              std::to_string(n));
  }
  std::mt19937_64 rng(seed);
  Trajectory out;
  out.seed = seed;
  out.path.push_back(start);
  std::vector<double> weights(n);
  for (std::size_t step = 0; step < steps; ++step) {
    const std::size_t from = out.path.back();
    double total = 0.0;
    for (std::size_t to = 0; to < n; ++to) total += weights[to] = weight(to, from);
    if (total <= 0.0) {
      out.dead_end = true;
      break;
    }
    const double target = unit_draw(rng) * total;
    std::size_t chosen = n;
    double acc = 0.0;
    for (std::size_t to = 0; to < n; ++to) {
      if (weights[to] <= 0.0) continue;
      chosen = to;
      acc += weights[to];
      if (target < acc) break;
    }
    out.path.push_back(chosen);
  }
  return out;
}

}  // namespace

Trajectory simulate_descent(const Transform& rule, std::size_t start, std::size_t steps, std::uint64_t seed) {
  require_feasible(rule);
  return walk(rule.size(), start, steps, seed,
              [&](std::size_t to, std::size_t from) { return rule(to, from) ? 1.0 : 0.0; });
}

Trajectory simulate_descent(const PossibilityTransform& rule, std::size_t start, std::size_t steps,
                            std::uint64_t seed) {
  require_feasible(rule.support());
  return walk(rule.size(), start, steps, seed,
              [&](std::size_t to, std::size_t from) { return rule(to, from); });
}

}  // namespace cultrule
