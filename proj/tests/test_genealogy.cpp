#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "cultrule/genealogy.hpp"
#include "support/genealogies.hpp"
#include "support/generators.hpp"

using namespace cultrule;

namespace {

std::vector<Violation> violations_of(auto&& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e.violations();
  }
  FAIL("expected a ValidationError");
  return {};
}

bool has_kind(const std::vector<Violation>& vs, const std::string& kind) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.kind == kind; });
}

std::vector<std::string> names(const EvolutionaryStructure& s, const std::vector<std::size_t>& ids) {
  std::vector<std::string> out;
  for (auto i : ids) out.push_back(s.individuals()[i]);
  std::sort(out.begin(), out.end());
  return out;
}

Configuration config(std::initializer_list<std::pair<const int, std::int64_t>> c) {
  return Configuration(Configuration::Counts(c));
}

// A single generation of `people` individuals with marriages and sibship
// cells given directly as 0-based index pairs.
struct FlatGeneration {
  EvolutionaryStructure s;
  Generation g;
};

FlatGeneration flat(std::size_t people, std::vector<std::pair<std::size_t, std::size_t>> marriages,
                    std::vector<std::vector<std::size_t>> cells) {
  GenealogyInput in;
  for (std::size_t i = 0; i < people; ++i) in.individuals.push_back("i" + std::to_string(i + 1));
  for (auto [a, b] : marriages) in.marriage.emplace_back(in.individuals[a], in.individuals[b]);
  FlatGeneration out{derive_and_validate(in), {}};
  for (std::size_t i = 0; i < people; ++i) out.g.members.push_back(i);
  out.g.marriages = std::move(marriages);
  out.g.sibships = std::move(cells);
  return out;
}

}  // namespace

TEST_CASE("nuclear family") {
  const auto s = derive_and_validate(fixture::nuclear());
  const auto k1 = *s.index_of("k1"), k2 = *s.index_of("k2");
  CHECK(names(s, s.parents_of(k1)) == std::vector<std::string>{"p1", "p2"});
  CHECK(names(s, s.parents_of(k2)) == std::vector<std::string>{"p1", "p2"});
  REQUIRE(s.sibships().size() == 1);
  CHECK(names(s, s.sibships()[0]) == std::vector<std::string>{"k1", "k2"});
  CHECK(s.siblings(k1, k2));
  CHECK(s.siblings(k2, k1));

  const auto ds = partition_generations(s);
  REQUIRE(ds.generations.size() == 2);
  CHECK(names(s, ds.generations[0].members) == std::vector<std::string>{"p1", "p2"});
  CHECK(names(s, ds.generations[1].members) == std::vector<std::string>{"k1", "k2"});
}

TEST_CASE("descent is closed transitively and reduced to immediate links") {
  const auto s = derive_and_validate(fixture::stationary_m2());
  const auto a1 = *s.index_of("a1"), c1 = *s.index_of("c1"), e1 = *s.index_of("e1");
  CHECK(s.descends_from(e1, a1));
  CHECK(s.descends_from(e1, c1));
  CHECK_FALSE(s.descends_from(a1, e1));
  CHECK(names(s, s.parents_of(e1)) == std::vector<std::string>{"c1", "d1"});

  GenealogyInput redundant = fixture::stationary_m2();
  redundant.descent.emplace_back("a1", "e1");
  const auto r = derive_and_validate(redundant);
  CHECK(names(r, r.parents_of(*r.index_of("e1"))) == std::vector<std::string>{"c1", "d1"});
}

TEST_CASE("axiom violations name the axiom") {
  CHECK(has_kind(violations_of([] { derive_and_validate(fixture::axiom1_violation()); }), "axiom1"));
  CHECK(has_kind(violations_of([] { derive_and_validate(fixture::axiom2_violation()); }), "axiom2"));
  const auto four = violations_of([] { derive_and_validate(fixture::axiom4_violation()); });
  CHECK(has_kind(four, "axiom4"));
  CHECK(std::find(four[0].individuals.begin(), four[0].individuals.end(), "b") != four[0].individuals.end());
  CHECK(has_kind(violations_of([] { derive_and_validate(fixture::axiom4_violation(), SpouseBound::two_partners); }),
                 "axiom4"));

  GenealogyInput two;
  for (const char* p : {"b", "w1", "w2"}) two.individuals.push_back(p);
  two.marriage = {{"b", "w1"}, {"b", "w2"}};
  CHECK(has_kind(violations_of([&] { derive_and_validate(two); }), "axiom4"));
  CHECK_NOTHROW(derive_and_validate(two, SpouseBound::two_partners));
}

TEST_CASE("malformed genealogies") {
  auto code = [](const GenealogyInput& in) {
    try {
      derive_and_validate(in);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::genealogy_axiom;
  };
  GenealogyInput unknown = fixture::nuclear();
  unknown.descent.emplace_back("p1", "nobody");
  CHECK(code(unknown) == Errc::malformed_input);
  GenealogyInput dup = fixture::nuclear();
  dup.individuals.push_back("p1");
  CHECK(code(dup) == Errc::malformed_input);
  CHECK(code(GenealogyInput{}) == Errc::malformed_input);
}

TEST_CASE("generation assignment errors") {
  const auto s = derive_and_validate(fixture::inconsistent_parents());
  CHECK(has_kind(violations_of([&] { partition_generations(s); }), "inconsistent_descent"));

  const auto d = derive_and_validate(fixture::darwinian());
  const auto vs = violations_of([&] { partition_generations(d); });
  REQUIRE(has_kind(vs, "darwinian"));
  CHECK(vs.back().individuals == std::vector<std::string>{"z"});

  GenealogyInput incest = fixture::nuclear();
  incest.marriage = {{"p1", "k1"}};
  CHECK(has_kind(violations_of([&] { partition_generations(derive_and_validate(incest)); }),
                 "cross_generation_marriage"));
}

TEST_CASE("partition is disjoint and exhaustive") {
  for (int n = 2; n <= 5; ++n) {
    const auto s = derive_and_validate(fixture::regular(n, 2));
    const auto ds = partition_generations(s);
    std::set<std::size_t> seen;
    std::size_t total = 0;
    for (std::size_t t = 0; t < ds.generations.size(); ++t)
      for (auto i : ds.generations[t].members) {
        seen.insert(i);
        ++total;
        CHECK(ds.generation_of[i] == t);
        for (auto p : s.parents_of(i)) CHECK(ds.generation_of[p] + 1 == t);
      }
    CHECK(total == s.size());
    CHECK(seen.size() == s.size());
    for (const auto& cell : s.sibships())
      for (auto i : cell) {
        CHECK(ds.generation_of[i] == ds.generation_of[cell.front()]);
        for (auto j : cell) CHECK(s.siblings(i, j) == s.siblings(j, i));
      }
  }
}

TEST_CASE("extract_configuration: listed instances") {
  const auto m2 = flat(4, {{0, 1}, {2, 3}}, {{0, 2}, {1, 3}});
  CHECK(extract_configuration(m2.g, m2.s) == config({{2, 1}}));

  const auto m3 = flat(6, {{0, 1}, {2, 3}, {4, 5}}, {{1, 2}, {3, 4}, {5, 0}});
  CHECK(extract_configuration(m3.g, m3.s) == config({{3, 1}}));

  const auto open = flat(4, {{0, 1}, {2, 3}}, {{1, 2}});
  CHECK(has_kind(violations_of([&] { extract_configuration(open.g, open.s); }), "irregular_generation"));

  const auto bachelors = flat(6, {{0, 1}, {2, 3}}, {{0, 2}, {1, 3}, {4, 5}});
  CHECK(extract_configuration(bachelors.g, bachelors.s) == config({{2, 1}}));

  const auto m2_low = flat(4, {{0, 1}, {2, 3}}, {{0, 2}, {1, 3}});
  CHECK(has_kind(violations_of([&] { extract_configuration(m2_low.g, m2_low.s, 3); }), "irregular_generation"));
}

TEST_CASE("M_n figures round trip through genealogy data") {
  for (int n = 2; n <= 5; ++n)
    for (int k = 1; k <= 4; ++k) {
      const auto s = derive_and_validate(fixture::regular(n, k));
      const auto ds = partition_generations(s);
      REQUIRE(ds.generations.size() == 2);
      CHECK(extract_configuration(ds.generations[1], s) == config({{n, k}}));
      CHECK(has_kind(violations_of([&] { extract_configuration(ds.generations[0], s); }), "irregular_generation"));
    }
}

TEST_CASE("open chain extracted from genealogy data is irregular") {
  const auto s = derive_and_validate(fixture::open_chain());
  const auto ds = partition_generations(s);
  REQUIRE(ds.generations.size() == 2);
  const auto vs = violations_of([&] { extract_configuration(ds.generations[1], s); });
  REQUIRE(vs.size() == 1);
  CHECK(vs[0].kind == "irregular_generation");
  CHECK(vs[0].individuals.size() == 4);
}

TEST_CASE("sequence_report") {
  const auto s = derive_and_validate(fixture::stationary_m2());
  const auto ds = partition_generations(s);
  const auto r = sequence_report(ds);
  REQUIRE(r.stats.size() == 3);
  for (const auto& st : r.stats) {
    CHECK(st.mu == 2);
    CHECK(st.gamma == 4);
  }
  CHECK(r.stats[0].beta == 0);
  CHECK(r.stats[1].beta == 2);
  CHECK(r.stats[2].beta == 2);
  CHECK(r.ok());
  for (std::size_t t = 1; t < 3; ++t) CHECK(extract_configuration(ds.generations[t], s) == config({{2, 1}}));

  const auto grow = sequence_report(partition_generations(derive_and_validate(fixture::growing())));
  REQUIRE(grow.flags.size() == 1);
  CHECK(grow.flags[0].kind == SequenceFlag::Kind::marriages_increase);
  CHECK(grow.flags[0].generation == 1);
  CHECK(grow.flags[0].expected == 3);
  CHECK(grow.flags[0].actual == 4);

  GenealogyInput couple;
  couple.individuals = {"p1", "p2"};
  couple.marriage = {{"p1", "p2"}};
  const auto single = sequence_report(partition_generations(derive_and_validate(couple)));
  CHECK(single.stats.size() == 1);
  CHECK(single.ok());
}

TEST_CASE("sequence_report flags beta against previous mu") {
  auto g = fixture::stationary_m2();
  g.individuals.push_back("o1");
  g.individuals.push_back("lone");
  g.descent.emplace_back("o1", "lone");
  const auto r = sequence_report(partition_generations(derive_and_validate(g)));
  REQUIRE(r.flags.size() == 1);
  CHECK(r.flags[0].kind == SequenceFlag::Kind::sibships_differ_from_parent_marriages);
  CHECK(r.flags[0].generation == 1);
  CHECK(r.flags[0].expected == 2);
  CHECK(r.flags[0].actual == 3);
}

TEST_CASE("simulation: pure systems are constant") {
  for (int s = 2; s <= 8; ++s) {
    const auto space = std::make_shared<const ConfigurationSpace>(enumerate_configurations(s));
    for (std::size_t m = 0; m < space->size(); ++m) {
      const auto pure = build_pure_system(space, m);
      const auto t = simulate_descent(pure.possibility, m, 20, 99);
      CHECK(t.path == std::vector<std::size_t>(21, m));
      CHECK_FALSE(t.dead_end);
      CHECK(simulate_descent(pure.rule, m, 5, 1).path == std::vector<std::size_t>(6, m));
    }
  }
}

TEST_CASE("simulation: determinism, dead ends, errors") {
  gen::Rng rng(59);
  const auto space = gen::mixed_space(6);
  const auto rule = gen::random_feasible_transform(rng, space);
  CHECK(simulate_descent(rule, 5, 50, 7).path == simulate_descent(rule, 5, 50, 7).path);
  const auto p = build_possibility(rule);
  CHECK(simulate_descent(p, 5, 50, 7).path == simulate_descent(p, 5, 50, 7).path);

  const auto dead = simulate_descent(Transform::zeros(space), 2, 10, 3);
  CHECK(dead.dead_end);
  CHECK(dead.path == std::vector<std::size_t>{2});

  const Transform up(gen::mixed_space(2), BoolMatrix{{0, 0}, {1, 0}});
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::malformed_input;
  };
  CHECK(code([&] { simulate_descent(up, 0, 3, 1); }) == Errc::infeasible_rule);
  CHECK(code([&] { simulate_descent(rule, 6, 3, 1); }) == Errc::index_out_of_range);
}

TEST_CASE("simulation: mu never increases under feasible rules") {
  gen::Rng rng(61);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto space = gen::mixed_space(gen::uniform(rng, 1, 8));
    const auto rule = gen::random_feasible_transform(rng, space);
    const auto start = gen::uniform(rng, 0, space->size() - 1);
    const auto t = trial % 2 ? simulate_descent(rule, start, 30, trial)
                             : simulate_descent(gen::random_possibility(rng, rule), start, 30, trial);
    CHECK(t.path.front() == start);
    for (std::size_t k = 1; k < t.path.size(); ++k) {
      CHECK(space->mu(t.path[k]) <= space->mu(t.path[k - 1]));
      CHECK(rule(t.path[k], t.path[k - 1]));
    }
  }
}

TEST_CASE("simulation: possibility weights steer the draw") {
  const auto space = gen::flat_space(2);
  const auto p = PossibilityTransform::from_matrix(space, Matrix{{0.9, 0.0}, {0.1, 0.9}});
  const auto t = simulate_descent(p, 0, 4000, 5);
  std::size_t stays = 0, leaves = 0;
  for (std::size_t k = 1; k < t.path.size(); ++k)
    if (t.path[k - 1] == 0) (t.path[k] == 0 ? stays : leaves)++;
  CHECK(leaves == 1);
  CHECK(stays > 10);
}
