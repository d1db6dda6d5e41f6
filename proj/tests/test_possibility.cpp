#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cultrule/error.hpp"
#include "cultrule/possibility.hpp"
#include "support/generators.hpp"

using namespace cultrule;
using doctest::Approx;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::malformed_input;
}

PossibilityTransform constant_half() {
  return PossibilityTransform::from_matrix(gen::flat_space(2), Matrix{{0.5, 0.5}, {0.5, 0.5}});
}

SpacePtr order(int s) { return std::make_shared<const ConfigurationSpace>(enumerate_configurations(s)); }

}  // namespace

TEST_CASE("build_possibility with uniform rows") {
  const auto space = gen::mixed_space(3);
  const auto id = build_possibility(Transform::identity(space));
  CHECK(id.entries() == Matrix::identity(3));

  const Transform split(space, BoolMatrix{{1, 1, 0}, {0, 1, 0}, {0, 0, 0}});
  const auto p = build_possibility(split);
  CHECK(p(0, 0) == 0.5);
  CHECK(p(0, 1) == 0.5);
  CHECK(p(1, 1) == 1.0);
  CHECK(p.entries().row_sum(2) == 0.0);
}

TEST_CASE("support match is enforced in both directions") {
  const auto space = gen::flat_space(2);
  const Transform diag = Transform::identity(space);
  CHECK(code_of([&] { PossibilityTransform(diag, Matrix{{0.6, 0.3}, {0.0, 1.0}}); }) == Errc::support_mismatch);
  CHECK(code_of([&] { PossibilityTransform(diag, Matrix{{1.0, 0.0}, {0.0, 0.0}}); }) == Errc::support_mismatch);
  try {
    PossibilityTransform(diag, Matrix{{0.7, 0.3}, {0.0, 1.0}});
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("(1,2)") != std::string::npos);
  }
  CHECK(code_of([&] { PossibilityTransform(diag, Matrix{{1.5, 0.0}, {0.0, 1.0}}); }) == Errc::invalid_weights);
  const Transform full(space, BoolMatrix::ones(2));
  CHECK(code_of([&] { PossibilityTransform(full, Matrix{{0.6, 0.6}, {0.5, 0.5}}); }) == Errc::invalid_weights);

  gen::Rng rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = gen::mixed_space(gen::uniform(rng, 1, 8));
    const auto t = gen::random_feasible_transform(rng, s);
    for (const auto& p : {build_possibility(t), gen::random_possibility(rng, t)}) {
      for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = 0; j < t.size(); ++j) CHECK((p(i, j) > 0.0) == t(i, j));
    }
  }
}

TEST_CASE("density") {
  const auto half = constant_half();
  const auto left = density(half, ContentList({1, 1}), DensitySide::left);
  CHECK(left.values == std::vector<double>{0.5, 0.5});
  CHECK(left.w == 2);
  CHECK(left.axiom1);

  const auto id = PossibilityTransform::from_matrix(gen::flat_space(2), Matrix::identity(2));
  CHECK(density(id, ContentList({1, 1}), DensitySide::left).values == std::vector<double>{0.5, 0.5});

  const auto pure = build_pure_system(order(4), 1);
  CHECK(density(pure.possibility, ContentList::singleton(2, 1), DensitySide::left).values ==
        std::vector<double>{0.0, 1.0});

  // Left sums columns of xi, right sums rows of xi.
  const auto skew = PossibilityTransform::from_matrix(gen::flat_space(2), Matrix{{0.25, 0.75}, {0.0, 1.0}});
  const ContentList first({1, 0});
  CHECK(density(skew, first, DensitySide::left).values == std::vector<double>{0.25, 0.0});
  CHECK(density(skew, first, DensitySide::right).values == std::vector<double>{0.25, 0.75});

  CHECK(code_of([&] { density(half, ContentList(2), DensitySide::left); }) == Errc::zero_source);
  CHECK(code_of([&] { density(half, ContentList(3), DensitySide::left); }) == Errc::dimension_mismatch);
}

TEST_CASE("density is linear under mixing") {
  gen::Rng rng(29);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = gen::flat_space(gen::uniform(rng, 1, 8));
    const auto a = gen::random_possibility(rng, gen::random_transform(rng, s));
    const auto b = gen::random_possibility(rng, gen::random_transform(rng, s));
    const double v = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const auto mix = convex_combine({{v, a}, {1.0 - v, b}});
    const auto xi = gen::random_content_list(rng, s->size(), false);
    for (auto side : {DensitySide::left, DensitySide::right}) {
      const auto dm = density(mix.mixture, xi, side);
      const auto da = density(a, xi, side), db = density(b, xi, side);
      for (std::size_t i = 0; i < s->size(); ++i) CHECK(dm.values[i] == Approx(v * da.values[i] + (1 - v) * db.values[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("inner product") {
  auto make = [](std::vector<double> v) {
    PossibilityDensity d;
    d.values = std::move(v);
    return d;
  };
  CHECK(inner_product(make({1, 0}), make({1, 0})) == 1.0);
  CHECK(inner_product(make({0.5, 0.5}), make({0.5, 0.5})) == 0.5);
  CHECK(inner_product(make({1, 0}), make({0, 1})) == 0.0);
  CHECK(code_of([&] { inner_product(make({1}), make({1, 0})); }) == Errc::dimension_mismatch);
}

TEST_CASE("theorem1_report: listed instances") {
  const auto pure = build_pure_system(order(6), 2);
  const auto e = ContentList::singleton(pure.space->size(), 2);
  const auto r = theorem1_report(pure.possibility, pure.possibility, e, e);
  CHECK(r.all_conditions());
  CHECK(r.inner == 1.0);
  CHECK_FALSE(r.discrepancy());

  const auto zero = theorem1_report(pure.possibility, pure.possibility, e, ContentList(pure.space->size()));
  CHECK_FALSE(zero.phi_nonzero);
  CHECK(zero.inner == 0.0);
  CHECK_FALSE(zero.discrepancy());

  const auto half = constant_half();
  const auto h = theorem1_report(half, half, ContentList({1, 1}), ContentList({1, 1}));
  CHECK(h.all_conditions());
  CHECK(h.inner == 0.5);
  CHECK(h.discrepancy());
}

TEST_CASE("theorem1_report: unit inner product without phi == xi") {
  // Feasible in ascending-mu order; the report exposes the failed (iv).
  const auto space = gen::mixed_space(2);
  const auto pi = PossibilityTransform::from_matrix(space, Matrix::identity(2));
  const auto theta = PossibilityTransform::from_matrix(space, Matrix{{0.0, 1.0}, {0.0, 1.0}});
  CHECK(validate_transform(theta.support()).valid);
  const auto r = theorem1_report(pi, theta, ContentList({0, 1}), ContentList({1, 0}));
  CHECK(r.inner == 1.0);
  CHECK_FALSE(r.phi_equals_xi);
  CHECK(r.discrepancy());
}

TEST_CASE("theorem1_report: unit inner product forces w = 1") {
  gen::Rng rng(31);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto s = gen::mixed_space(gen::uniform(rng, 1, 6));
    const auto pi = gen::random_possibility(rng, gen::random_feasible_transform(rng, s));
    const auto theta = gen::random_possibility(rng, gen::random_feasible_transform(rng, s));
    const auto xi = gen::random_content_list(rng, s->size());
    const auto phi = gen::coin(rng, 0.5) ? xi : gen::random_content_list(rng, s->size());
    const auto r = theorem1_report(pi, theta, xi, phi);
    CHECK(r.inner <= 1.0 + 1e-12);
    if (r.inner_is_one()) {
      CHECK(xi.weight() == 1);
      CHECK(phi.weight() == 1);
    }
  }
}

TEST_CASE("reduce_form") {
  const Matrix m{{0.1, 0.2, 0.3}, {0.4, 0.5, 0.6}, {0.7, 0.8, 0.9}};
  const auto r = reduce_form(m, ContentList({1, 1, 0}));
  CHECK(r.matrix == Matrix{{0.1, 0.2}, {0.4, 0.5}});
  CHECK(r.index_map == std::vector<std::size_t>{0, 1});

  const auto skip = reduce_form(m, ContentList({1, 0, 1}));
  CHECK(skip.matrix == Matrix{{0.1, 0.3}, {0.7, 0.9}});
  CHECK(skip.index_map == std::vector<std::size_t>{0, 2});

  CHECK(reduce_form(m, ContentList::full(3)).matrix == m);

  const auto pure = build_pure_system(order(4), 0);
  CHECK(reduce_form(pure.possibility.entries(), ContentList::singleton(2, 0)).matrix == Matrix{{1.0}});
  CHECK(code_of([&] { reduce_form(m, ContentList(3)); }) == Errc::zero_source);
}

TEST_CASE("doubly_stochastic_check") {
  CHECK(doubly_stochastic_check(Matrix::identity(3)).doubly_stochastic);
  CHECK(doubly_stochastic_check(Matrix{{0.5, 0.5}, {0.5, 0.5}}).doubly_stochastic);
  const auto bad = doubly_stochastic_check(Matrix{{1, 0}, {1, 0}});
  CHECK_FALSE(bad.doubly_stochastic);
  CHECK(bad.col_sums == std::vector<double>{2.0, 0.0});
  CHECK(bad.row_sums == std::vector<double>{1.0, 1.0});
  CHECK_FALSE(doubly_stochastic_check(Matrix{{1.5, -0.5}, {-0.5, 1.5}}).doubly_stochastic);
  CHECK(code_of([] { doubly_stochastic_check(Matrix(2, 3)); }) == Errc::dimension_mismatch);
}

TEST_CASE("density sums and the axiom1 flag on doubly stochastic matrices") {
  gen::Rng rng(37);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = gen::uniform(rng, 1, 8);
    const auto s = gen::flat_space(n);
    const auto d = gen::random_doubly_stochastic(rng, n, gen::uniform(rng, 1, 6));
    REQUIRE(doubly_stochastic_check(d).doubly_stochastic);
    const auto p = PossibilityTransform::from_matrix(s, d);
    const auto full = ContentList::full(n);
    CHECK(density(p, full, DensitySide::left).sum() == Approx(1.0).epsilon(1e-9));
    CHECK(density(p, full, DensitySide::right).sum() == Approx(1.0).epsilon(1e-9));
    const auto xi = gen::random_content_list(rng, n, false);
    for (auto side : {DensitySide::left, DensitySide::right}) {
      CHECK(density(p, xi, side).sum() <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("pure systems") {
  const auto space = order(4);
  const auto pure = build_pure_system(space, 0);  // {2:2}
  CHECK((*space)[pure.index] == Configuration(Configuration::Counts{{2, 2}}));
  CHECK(pure.structural_number == 4);
  const auto& p = pure.possibility.entries();
  CHECK(p.trace() == 1.0);
  CHECK((p * p).trace() == 1.0);
  CHECK(p.symmetric());
  CHECK(compose(pure.rule, pure.rule) == pure.rule);
  const auto pi = density(pure.possibility, ContentList::singleton(2, 0), DensitySide::left);
  CHECK(pi.sum() == 1.0);
  CHECK(inner_product(pi, pi) == 1.0);
  CHECK(minimal_structures(pure.rule).indices == std::vector<std::size_t>{0});
  CHECK(as_cultural_structure(pure).pure());
  CHECK(as_cultural_structure(pure).order() == 4);

  CHECK(code_of([&] { build_pure_system(space, 2); }) == Errc::index_out_of_range);
  CHECK(code_of([] { build_pure_system(gen::mixed_space(3), 0); }) == Errc::invalid_configuration);
}

TEST_CASE("cultural structure membership") {
  const auto space = order(5);
  CHECK_FALSE(CulturalStructure(space, {Transform::identity(space)}, {}).pure());
  CHECK(code_of([&] { CulturalStructure(space, {Transform::identity(order(4))}, {}); }) ==
        Errc::dimension_mismatch);
}

TEST_CASE("convex combinations") {
  const auto space = order(6);
  const auto a = build_pure_system(space, 0), b = build_pure_system(space, 3);
  const auto mix = convex_combine({{0.5, a.possibility}, {0.5, b.possibility}});
  CHECK(mix.trace() == 1.0);
  for (std::size_t i = 0; i < space->size(); ++i) CHECK(mix.mixture.entries().row_sum(i) <= 1.0);

  const auto single = convex_combine({{1.0, a.possibility}});
  CHECK(single.mixture.entries() == a.possibility.entries());

  CHECK(code_of([&] { convex_combine({{0.7, a.possibility}, {0.7, b.possibility}}); }) == Errc::invalid_weights);
  CHECK(code_of([&] { convex_combine({{-0.5, a.possibility}, {1.5, b.possibility}}); }) == Errc::invalid_weights);
  CHECK(code_of([] { convex_combine({}); }) == Errc::invalid_weights);
  const auto other = build_pure_system(order(4), 0);
  CHECK(code_of([&] { convex_combine({{0.5, a.possibility}, {0.5, other.possibility}}); }) ==
        Errc::dimension_mismatch);
}

TEST_CASE("mixtures of pure systems have unit trace") {
  gen::Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const auto space = order(static_cast<int>(gen::uniform(rng, 2, 9)));
    const std::size_t k = gen::uniform(rng, 1, 5);
    const auto w = gen::random_simplex(rng, k);
    std::vector<ConvexTerm> terms;
    for (std::size_t t = 0; t < k; ++t) {
      terms.push_back({w[t], build_pure_system(space, gen::uniform(rng, 0, space->size() - 1)).possibility});
    }
    CHECK(convex_combine(terms).trace() == Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("ethnographer report") {
  const auto s2 = build_pure_system(order(2), 0);
  const auto s4 = build_pure_system(order(4), 1);
  const auto both = ethnographer_report({{0.5, s2}, {0.5, s4}});
  CHECK(both.trace == 1.0);
  REQUIRE(both.mean_structural_number.has_value());
  CHECK(*both.mean_structural_number == 3.0);
  CHECK(both.hypothesis_met);

  const auto one = ethnographer_report({{1.0, s2}});
  CHECK(*one.mean_structural_number == 2.0);
  CHECK(one.hypothesis_met);

  const auto space = order(4);
  const auto zero = PossibilityTransform(Transform::zeros(space), Matrix(2, 2));
  const auto mixed = ethnographer_report({{0.5, s4.possibility}, {0.5, zero}});
  CHECK(mixed.trace == 0.5);
  CHECK_FALSE(mixed.hypothesis_met);
  CHECK_FALSE(mixed.mean_structural_number.has_value());

  CHECK(code_of([&] { ethnographer_report({{0.7, s2}, {0.7, s4}}); }) == Errc::invalid_weights);
}
