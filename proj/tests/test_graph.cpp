// Copyright (c) canonring contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "canonring/generators.hpp"
#include "canonring/random.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace canonring;
using fx::divisor;
using fx::function;
using fx::throws_kind;

TEST_CASE("build_graph validates input") {
    const FiniteGraph theta = build_graph(2, {{0, 1}, {0, 1}, {0, 1}});
    CHECK(theta.vertex_count() == 2);
    CHECK(theta.edge_count() == 3);
    CHECK(throws_kind([] { (void)build_graph(2, {}); }, ErrorKind::Disconnected));
    CHECK(throws_kind([] { (void)build_graph(2, {{0, 2}}); }, ErrorKind::IndexOutOfRange));
    CHECK(throws_kind([] { (void)build_graph(0, {}); }, ErrorKind::InvalidInput));
    const GnGraph g2 = build_gn(2);
    CHECK(g2.graph.vertex_count() == 8);
    CHECK(g2.graph.edge_count() == 9);
}

TEST_CASE("canonical divisor counts loops twice") {
    CHECK(canonical_divisor(theta_graph()) == divisor({1, 1}));
    CHECK(canonical_divisor(build_graph(1, {{0, 0}})) == divisor({0}));
    const GnGraph g2 = build_gn(2);
    const Divisor k = canonical_divisor(g2.graph);
    for (Index v = 0; v < g2.graph.vertex_count(); ++v) CHECK(k[v] == ((v == g2.p || v == g2.q) ? 1 : 0));
}

TEST_CASE("ord_and_div examples") {
    CHECK(ord_and_div(theta_graph(), function({0, -1})) == divisor({-3, 3}));
    CHECK(ord_and_div(path_graph(3), function({0, -1, -2})) == divisor({-1, 0, 1}));
    CHECK(ord_and_div(complete_graph(4), RationalFunction::constant(4, 7)) == Divisor::zero(4));
    CHECK(throws_kind([] { (void)ord_and_div(theta_graph(), function({0, 1, 2})); }, ErrorKind::SizeMismatch));
}

TEST_CASE("loops contribute nothing to orders") {
    const FiniteGraph g = build_graph(2, {{0, 1}, {0, 0}, {1, 1}, {1, 1}});
    CHECK(ord_and_div(g, function({0, 5})) == divisor({5, -5}));
    CHECK(canonical_divisor(g) == divisor({1, 3}));
}

TEST_CASE("linear_equiv examples") {
    const FiniteGraph theta = theta_graph();
    const auto same = linear_equiv(theta, divisor({2, 5}), divisor({2, 5}));
    REQUIRE(same);
    CHECK(same->is_constant());
    CHECK_FALSE(linear_equiv(theta, divisor({2, 2}), divisor({1, 3})));
    CHECK_FALSE(linear_equiv(theta, divisor({2, 2}), divisor({1, 2})));

    const GnGraph g2 = build_gn(2);
    const Divisor two_k = Divisor(IntVector(2 * canonical_divisor(g2.graph).coeffs()));
    Divisor target = Divisor::unit(8, g2.p) + Divisor::unit(8, g2.r, 3);
    const auto w = linear_equiv(g2.graph, two_k, target);
    REQUIRE(w);
    CHECK(ord_and_div(g2.graph, *w) == two_k - target);
    CHECK(w->min_value() == 0);
}

TEST_CASE("genus") {
    CHECK(genus(theta_graph()) == 2);
    CHECK(genus(path_graph(5)) == 0);
    for (Index n = 1; n <= 5; ++n) CHECK(genus(build_gn(n).graph) == 2);
}

TEST_CASE("graph-core invariants on random multigraphs") {
    Rng rng(20261019);
    for (int t = 0; t < 300; ++t) {
        const Index n = 1 + static_cast<Index>(rng() % 6);
        const FiniteGraph g = random_graph(rng, n, static_cast<Index>(rng() % 5));
        const Divisor k = canonical_divisor(g);
        CHECK(k.degree() == 2 * genus(g) - 2);

        const auto lap = laplacian<Integer>(g);
        for (Index r = 0; r < n; ++r) CHECK(lap.row(r).sum() == 0);

        const RationalFunction f(IntVector(random_divisor(rng, n, -4, 4).coeffs()));
        const Divisor div = ord_and_div(g, f);
        CHECK(div.degree() == 0);
        CHECK(IntVector(lap * f.values()) == div.coeffs());
        const auto expected = oracle::divisor_of(g, oracle::values(f));
        for (Index v = 0; v < n; ++v) CHECK(div[v] == expected[static_cast<std::size_t>(v)]);

        const Divisor d = random_divisor(rng, n, -2, 3);
        const auto w = linear_equiv(g, d + div, d);
        REQUIRE(w);
        CHECK(ord_and_div(g, *w) == div);
    }
}
