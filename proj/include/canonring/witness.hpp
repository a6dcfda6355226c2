// Copyright (c) canonring contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "canonring/metric.hpp"

namespace canonring {

/// A Z-metric graph with a Z-divisor D, a non-bridge edge e = (p, q) and a
/// parameter n with n*D ~ (n*d/2)([p] + [q]).
struct WitnessInstance {
    MetricGraph graph;
    MetricDivisor divisor;
    Index edge = 0;
    Integer n = 1;
    /// Optional psi with div(psi) = n*D - (n*d/2)([p] + [q]); computed when absent.
    std::optional<PLFunction> hypothesis_witness;

    [[nodiscard]] Index p() const { return graph.model().edge(edge).first; }
    [[nodiscard]] Index q() const { return graph.model().edge(edge).second; }
    [[nodiscard]] const Rational& length() const { return graph.length(edge); }
    [[nodiscard]] Integer degree() const { return divisor.degree(); }
};

struct HypothesisReport {
    Integer genus;
    Integer degree;
    bool z_metric = false;
    bool z_divisor = false;
    bool genus_ok = false;
    bool degree_ok = false;
    bool not_bridge = false;
    bool nd_even = false;
    bool equivalent = false;
    std::optional<PLFunction> witness;

    [[nodiscard]] bool passed() const {
        return z_metric && z_divisor && genus_ok && degree_ok && not_bridge && nd_even && equivalent;
    }
};

/// Each hypothesis is reported separately; nothing throws on failure.
[[nodiscard]] HypothesisReport check_hypotheses(const WitnessInstance& inst);

struct ObstructionRow {
    Integer k;
    bool equivalent = false;  // k*D ~ k*d*[r]
};

struct WitnessResult {
    Integer s;
    Integer big_n;  // N = s * d
    Integer degree;  // 2 s L
    PointOnGraph r;
    PLFunction ftilde;
    PLFunction f;
    // Orders of ftilde at p, q, r.
    Integer ord_p, ord_q, ord_r;
    bool orders_match = false;
    bool divisor_matches = false;  // 2sL D + div(f) = [p] + (2LN-1)[r]
    bool r_off_lattice = false;
    bool extremal = false;
    std::vector<MetricSubgraph> firing_subgraphs;
    std::vector<ObstructionRow> obstruction;
    bool obstruction_holds = false;

    [[nodiscard]] bool passed() const {
        return orders_match && divisor_matches && r_off_lattice && extremal && obstruction_holds;
    }
};

/// Point at offset L*N/(2LN - 1) * L from p on e.
[[nodiscard]] PointOnGraph witness_point(const WitnessInstance& inst, const Integer& s);

/// Builds ftilde and f and checks the order formulas and extremality.
/// Throws HypothesisFailure if the hypotheses fail or s is not a positive
/// multiple of n, and VerificationFailure if a constructed object is wrong.
/// The obstruction rows are left empty.
[[nodiscard]] WitnessResult build_witness(const WitnessInstance& inst, const Integer& s);

/// k*D ~ k*d*[r] for k = 1 .. 2sL - 1; all false means f is not generated in lower degrees.
[[nodiscard]] std::vector<ObstructionRow> indecomposability_check(const WitnessInstance& inst, const Integer& s);

struct NonFiniteCertificate {
    HypothesisReport hypotheses;
    std::vector<WitnessResult> witnesses;

    /// Every degree bound is beaten by some witness in the list.
    [[nodiscard]] bool verified() const;
};

/// Witnesses of growing degree 2sL, one per s. Throws InvalidInput on an empty list.
[[nodiscard]] NonFiniteCertificate nonfinite_certificate(const WitnessInstance& inst, const std::vector<Integer>& s_list);

/// K_n with equal edge lengths, D = K, e = (0, 1), parameter 1 for odd n and 2 for even n.
[[nodiscard]] WitnessInstance complete_graph_instance(Index vertex_count, const Integer& edge_length = 1);

}  // namespace canonring
