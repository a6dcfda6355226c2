// Copyright (c) canonring contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "fixtures.hpp"
#include "properties.hpp"

using namespace canonring;

namespace {

void require_clean(const props::Tally& t) {
    for (const auto& [name, count] : t.failures) {
        INFO(name << ": " << count << " failures in " << t.cases.at(name) << " cases");
        CHECK(count == 0);
    }
}

}  // namespace

TEST_CASE("finite-graph properties") {
    std::vector<std::pair<std::string, FiniteGraph>> graphs = {
        {"theta", theta_graph()}, {"K4", complete_graph(4)}, {"G2", build_gn(2).graph}};
    Rng rng(1);
    for (int i = 0; i < 3; ++i) graphs.emplace_back("random" + std::to_string(i), random_graph(rng, 4, 3));
    std::uint64_t seed = 1000;
    for (const auto& [name, g] : graphs) {
        props::Tally t;
        props::finite_suite(g, canonical_divisor(g), seed++, 1000, t);
        INFO(name);
        require_clean(t);
        CHECK(t.cases["degree_zero"] == 1000);
        CHECK(t.cases["extremal_cover"] > 0);
    }
}

TEST_CASE("metric-graph properties") {
    std::vector<std::pair<std::string, MetricGraph>> graphs = {
        {"theta", theta_metric()},
        {"K4", complete_metric(4)},
        {"theta-mixed", MetricGraph::build(theta_graph(), {Rational(3, 2), 1, 2})}};
    Rng rng(2);
    graphs.emplace_back("random", random_metric_graph(rng, 4, 3));
    std::uint64_t seed = 2000;
    for (const auto& [name, g] : graphs) {
        props::Tally t;
        props::metric_suite(g, seed++, 1000, t);
        INFO(name);
        require_clean(t);
        CHECK(t.cases["metric_degree_zero"] == 1000);
        CHECK(t.cases["can_fire_halving"] > 100);
    }
}
