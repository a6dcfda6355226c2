// Copyright (c) canonring contributors.
// SPDX-License-Identifier: Apache-2.0
#include "canonring/random.hpp"

namespace canonring {

namespace {

Index uniform(Rng& rng, Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(rng); }

}  // namespace

FiniteGraph random_graph(Rng& rng, Index vertex_count, Index extra_edges) {
    if (vertex_count < 1) throw Error(ErrorKind::InvalidInput, "need at least one vertex");
    std::vector<FiniteGraph::Edge> edges;
    for (Index v = 1; v < vertex_count; ++v) edges.emplace_back(uniform(rng, 0, v - 1), v);
    for (Index i = 0; i < extra_edges; ++i)
        edges.emplace_back(uniform(rng, 0, vertex_count - 1), uniform(rng, 0, vertex_count - 1));
    return FiniteGraph::build(vertex_count, std::move(edges));
}

Divisor random_divisor(Rng& rng, Index vertex_count, int lo, int hi) {
    IntVector c(vertex_count);
    for (Index v = 0; v < vertex_count; ++v) c(v) = uniform(rng, lo, hi);
    return Divisor(std::move(c));
}

MetricGraph random_metric_graph(Rng& rng, Index max_vertices, Index max_extra_edges) {
    for (;;) {
        const Index n = uniform(rng, 1, max_vertices);
        const FiniteGraph g = random_graph(rng, n, uniform(rng, n == 1 ? 1 : 0, max_extra_edges));
        std::vector<Rational> lengths;
        for (Index e = 0; e < g.edge_count(); ++e) lengths.emplace_back(uniform(rng, 1, 4), 2);
        try {
            return MetricGraph::build(g, std::move(lengths));
        } catch (const Error&) {
            // Circles and edgeless graphs are redrawn.
        }
    }
}

PLFunction random_pl_function(Rng& rng, const MetricGraph& g, const Integer& q, int span) {
    const Refinement r = refine(g, q);
    IntVector values(r.graph().vertex_count());
    for (Index v = 0; v < values.size(); ++v) values(v) = uniform(rng, -span, span);
    return r.lift(RationalFunction(std::move(values)));
}

PointOnGraph random_point(Rng& rng, const MetricGraph& g, const Integer& q) {
    const Index e = uniform(rng, 0, g.edge_count() - 1);
    const auto steps = static_cast<Index>(floor(g.length(e) * q));
    return PointOnGraph::on_edge(g, e, Rational(Integer(uniform(rng, 0, steps))) / q);
}

}  // namespace canonring
