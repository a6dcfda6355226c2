// Copyright (c) canonring contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>

#include "canonring/metric.hpp"

namespace canonring {

using Rng = std::mt19937_64;

/// Connected multigraph: a random spanning tree plus `extra_edges` random edges,
/// loops and parallel edges included.
[[nodiscard]] FiniteGraph random_graph(Rng& rng, Index vertex_count, Index extra_edges);

/// Coefficients drawn uniformly from [lo, hi].
[[nodiscard]] Divisor random_divisor(Rng& rng, Index vertex_count, int lo, int hi);

/// Metric graph on a random model with lengths k/2, k in [1, 4]; not a circle.
[[nodiscard]] MetricGraph random_metric_graph(Rng& rng, Index max_vertices, Index max_extra_edges);

/// Lift of a random integer function on the 1/q refinement, values in [-span, span] / q.
[[nodiscard]] PLFunction random_pl_function(Rng& rng, const MetricGraph& g, const Integer& q, int span);

/// Random point whose offset is a multiple of 1/q.
[[nodiscard]] PointOnGraph random_point(Rng& rng, const MetricGraph& g, const Integer& q);

}  // namespace canonring
