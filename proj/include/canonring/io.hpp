// Copyright (c) canonring contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "canonring/generators.hpp"
#include "canonring/metric.hpp"
#include "canonring/witness.hpp"

namespace canonring::io {

using Json = nlohmann::ordered_json;

// Scalars: integers as numbers when they fit in 64 bits, otherwise decimal
// strings; rationals always as "p" or "p/q" strings.
[[nodiscard]] Json to_json(const Integer& z);
[[nodiscard]] Json to_json(const Rational& q);
[[nodiscard]] Integer integer_from_json(const Json& j);
[[nodiscard]] Rational rational_from_json(const Json& j);

/// {"vertices": n, "edges": [[u, v], ...], "labels": [...]}; labels optional.
[[nodiscard]] FiniteGraph graph_from_json(const Json& j);
[[nodiscard]] Json to_json(const FiniteGraph& g);

/// "K", {"coeffs": {"index": c}}, an array of coefficients, or an object mapping labels to coefficients.
/// Written as {"coeffs": {...}} with nonzero entries only.
[[nodiscard]] Divisor divisor_from_json(const FiniteGraph& g, const Json& j);
[[nodiscard]] Json to_json(const Divisor& d);
[[nodiscard]] RationalFunction function_from_json(const FiniteGraph& g, const Json& j);
[[nodiscard]] Json to_json(const RationalFunction& f);

/// A graph object plus "lengths": {"edge index": "p/q"} or an array; "refinement" optional.
[[nodiscard]] MetricGraph metric_graph_from_json(const Json& j);
[[nodiscard]] Json to_json(const MetricGraph& g);
/// {"edge": i, "offset": "p/q"} or {"vertex": v}.
[[nodiscard]] PointOnGraph point_from_json(const MetricGraph& g, const Json& j);
[[nodiscard]] Json to_json(const PointOnGraph& x);
/// "K" or an array of {"point": ..., "coeff": c}.
[[nodiscard]] MetricDivisor metric_divisor_from_json(const MetricGraph& g, const Json& j);
[[nodiscard]] Json to_json(const MetricDivisor& d);
/// Array per edge of [offset, value] pairs.
[[nodiscard]] PLFunction pl_function_from_json(const MetricGraph& g, const Json& j);
[[nodiscard]] Json to_json(const PLFunction& f);
[[nodiscard]] Json to_json(const MetricSubgraph& s);

/// {"graph": metric graph, "divisor": ..., "edge": e, "n": n, "witness": optional PL function}.
[[nodiscard]] WitnessInstance instance_from_json(const Json& j);

[[nodiscard]] Json to_json(const RgdElement& el);
[[nodiscard]] Json to_json(const GeneratorSet& gens);
[[nodiscard]] Json to_json(const GenerationCertificate& cert);
[[nodiscard]] Json to_json(const GnReport& rep);
[[nodiscard]] Json to_json(const HypothesisReport& rep);
[[nodiscard]] Json to_json(const WitnessResult& res);
[[nodiscard]] Json to_json(const NonFiniteCertificate& cert);

/// Vertices labelled with their names and divisor coefficients.
[[nodiscard]] std::string to_dot(const FiniteGraph& g, const Divisor* d = nullptr);
/// Model vertices plus marked interior points, edges labelled with lengths.
[[nodiscard]] std::string to_dot(const MetricGraph& g, const std::vector<std::pair<std::string, PointOnGraph>>& marks);

/// "path = value" lines, one per leaf.
[[nodiscard]] std::string to_text(const Json& j);

}  // namespace canonring::io
