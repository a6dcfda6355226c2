// Copyright (c) canonring contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Randomized property suites shared by the unit tests and the acceptance run.

#include <map>
#include <random>
#include <string>

#include "canonring/generators.hpp"
#include "canonring/random.hpp"
#include "oracles.hpp"

namespace props {

using namespace canonring;

/// Failure counts per property name, plus the number of cases run.
struct Tally {
    std::map<std::string, std::size_t> failures;
    std::map<std::string, std::size_t> cases;

    void record(const std::string& name, bool ok) {
        ++cases[name];
        if (!ok) ++failures[name];
        else failures.try_emplace(name, 0);
    }
    [[nodiscard]] std::size_t total_failures() const {
        std::size_t n = 0;
        for (const auto& [k, v] : failures) n += v;
        return n;
    }
};

inline long pick(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline RationalFunction random_function(Rng& rng, Index n, long span) {
    IntVector v(n);
    for (Index i = 0; i < n; ++i) v(i) = pick(rng, -span, span);
    return RationalFunction(std::move(v));
}

/// Finite-graph properties on `cases` random draws.
inline void finite_suite(const FiniteGraph& g, const Divisor& d, std::uint64_t seed, int cases, Tally& t) {
    Rng rng(seed);
    const Index n = g.vertex_count();
    std::vector<std::vector<RgdElement>> levels(4), ext(4);
    for (int m = 1; m <= 3; ++m) {
        levels[static_cast<std::size_t>(m)] = rgd_enumerate(g, d, m);
        ext[static_cast<std::size_t>(m)] = extremals(g, d, m);
    }
    // Lower-degree elements as generators for each target degree.
    std::vector<GeneratorSet> below(4);
    for (int m = 2; m <= 3; ++m)
        for (int j = 1; j < m; ++j)
            for (const auto& el : levels[static_cast<std::size_t>(j)]) below[static_cast<std::size_t>(m)].generators.push_back(el);
    std::map<std::pair<int, std::size_t>, bool> decomposable;

    for (int c = 0; c < cases; ++c) {
        const RationalFunction f = random_function(rng, n, 5);
        const RationalFunction h = random_function(rng, n, 5);
        const Divisor df = ord_and_div(g, f), dh = ord_and_div(g, h);
        t.record("degree_zero", df.degree() == 0);
        const auto expected = oracle::divisor_of(g, oracle::values(f));
        bool same = true;
        for (Index v = 0; v < n; ++v) same = same && df[v] == expected[static_cast<std::size_t>(v)];
        t.record("div_matches_oracle", same);
        t.record("div_product", ord_and_div(g, odot(f, h)) == df + dh);

        const int m1 = static_cast<int>(pick(rng, 1, 2)), m2 = static_cast<int>(pick(rng, 1, 2));
        const auto& l1 = levels[static_cast<std::size_t>(m1)];
        const auto& l2 = levels[static_cast<std::size_t>(m2)];
        if (!l1.empty() && !l2.empty()) {
            const auto& a = l1[static_cast<std::size_t>(pick(rng, 0, static_cast<long>(l1.size()) - 1))];
            const auto& b = l1[static_cast<std::size_t>(pick(rng, 0, static_cast<long>(l1.size()) - 1))];
            const auto& e = l2[static_cast<std::size_t>(pick(rng, 0, static_cast<long>(l2.size()) - 1))];
            const RationalFunction sum = oplus(scale(pick(rng, -3, 3), a.function), scale(pick(rng, -3, 3), b.function));
            t.record("oplus_closed", oracle::member(g, d, oracle::values(sum), m1));
            t.record("odot_closed", oracle::member(g, d, oracle::values(odot(a.function, e.function)), m1 + m2));
        }

        const int m = static_cast<int>(pick(rng, 1, 3));
        const auto& lm = levels[static_cast<std::size_t>(m)];
        if (lm.empty()) continue;
        const std::size_t idx = static_cast<std::size_t>(pick(rng, 0, static_cast<long>(lm.size()) - 1));
        const RgdElement& el = lm[idx];
        IntVector best = el.function.values();
        bool first = true;
        for (const auto& x : ext[static_cast<std::size_t>(m)]) {
            const Integer shift = (el.function.values() - x.function.values()).minCoeff();
            const IntVector cand = x.function.values().array() + shift;
            best = first ? cand : IntVector(best.cwiseMax(cand));
            first = false;
        }
        t.record("extremal_cover", !first && best == el.function.values());

        if (m >= 2 && !below[static_cast<std::size_t>(m)].generators.empty()) {
            DecomposeOptions opts;
            opts.product_cap = 2'000'000;
            const auto key = std::make_pair(m, idx);
            if (!decomposable.count(key))
                decomposable[key] = decompose(el, below[static_cast<std::size_t>(m)], opts).generated;
            RgdElement shifted = el;
            shifted.function = scale(pick(rng, -9, 9), el.function);
            const auto cert = decompose(shifted, below[static_cast<std::size_t>(m)], opts);
            bool ok = cert.generated == decomposable[key];
            if (cert.generated) ok = ok && evaluate(cert, below[static_cast<std::size_t>(m)]) == shifted.function;
            t.record("decompose_shift_invariant", ok);
        }
    }
}

/// Metric-graph properties on `cases` random draws.
inline void metric_suite(const MetricGraph& g, std::uint64_t seed, int cases, Tally& t) {
    Rng rng(seed);
    for (int c = 0; c < cases; ++c) {
        const Integer q = 2 * pick(rng, 1, 3);
        const PLFunction f = random_pl_function(rng, g, q, 3);
        const PLFunction h = random_pl_function(rng, g, 2, 3);
        const MetricDivisor df = ord_div_metric(g, f), dh = ord_div_metric(g, h);
        t.record("metric_degree_zero", df.degree() == 0);
        t.record("metric_div_product", ord_div_metric(g, tropical_product(f, h)) == df + dh);

        MetricDivisor d;
        for (const auto& [x, k] : df.terms())
            if (k < 0) d.add(x, -k);
        for (const auto& [x, k] : dh.terms())
            if (k < 0) d.add(x, -k);
        const PLFunction sum = tropical_sum(f.shifted(Rational(pick(rng, -4, 4), 2)), h);
        t.record("metric_oplus_closed", is_member_metric(g, d, sum));
        t.record("metric_odot_closed", is_member_metric(g, d + d, tropical_product(f, h)));

        MetricDivisor e;
        for (int i = 0; i < 4; ++i) e.add(random_point(rng, g, q), pick(rng, 0, 3));
        const auto sup = e.support();
        if (sup.empty()) continue;
        std::vector<PointOnGraph> chosen;
        for (const auto& x : sup)
            if (pick(rng, 0, 1)) chosen.push_back(x);
        if (chosen.empty()) chosen.push_back(sup.front());
        const MetricSubgraph sub = MetricSubgraph::points(g, chosen);
        if (sub.is_whole(g)) continue;
        const Rational l = firing_distance(g, e, sub);
        const bool base = can_fire(g, e, sub, l);
        t.record("can_fire_halving", base == can_fire(g, e, sub, l / 2) && base == can_fire(g, e, sub, l / 8));
    }
}

}  // namespace props
