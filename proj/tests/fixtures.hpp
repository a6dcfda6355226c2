// Copyright (c) canonring contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <initializer_list>

#include "canonring/witness.hpp"

namespace fx {

using namespace canonring;

inline IntVector ints(std::initializer_list<long> xs) {
    IntVector v(static_cast<Index>(xs.size()));
    Index i = 0;
    for (long x : xs) v(i++) = x;
    return v;
}

inline Divisor divisor(std::initializer_list<long> xs) { return Divisor(ints(xs)); }
inline RationalFunction function(std::initializer_list<long> xs) { return RationalFunction(ints(xs)); }
inline Rational q(long p, long d = 1) { return Rational(p, d); }

inline MetricDivisor at_vertex(Index v, long c = 1) { return MetricDivisor::point(PointOnGraph::vertex(v), c); }
inline MetricDivisor on_edge(const MetricGraph& g, Index e, const Rational& off, long c = 1) {
    return MetricDivisor::point(PointOnGraph::on_edge(g, e, off), c);
}

inline WitnessInstance theta_instance(Index edge = 0, const Rational& len = 1) {
    WitnessInstance inst;
    inst.graph = theta_metric(len);
    inst.divisor = canonical_divisor_metric(inst.graph);
    inst.edge = edge;
    inst.n = 1;
    return inst;
}

/// Does evaluating `expr` throw canonring::Error with the given kind?
template <class F>
bool throws_kind(F&& expr, ErrorKind kind) {
    try {
        expr();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}

}  // namespace fx
