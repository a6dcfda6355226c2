// Copyright (c) canonring contributors.
// SPDX-License-Identifier: Apache-2.0
#include "canonring/witness.hpp"

namespace canonring {

namespace {

MetricDivisor pq_divisor(const WitnessInstance& inst, const Integer& c) {
    return MetricDivisor::point(PointOnGraph::vertex(inst.p()), c) +
           MetricDivisor::point(PointOnGraph::vertex(inst.q()), c);
}

Integer length_integer(const WitnessInstance& inst) {
    if (!is_integral(inst.length())) throw Error(ErrorKind::HypothesisFailure, "edge length must be an integer");
    return numerator(inst.length());
}

}  // namespace

HypothesisReport check_hypotheses(const WitnessInstance& inst) {
    const MetricGraph& g = inst.graph;
    if (inst.edge < 0 || inst.edge >= g.edge_count()) throw Error(ErrorKind::IndexOutOfRange, "edge out of range");
    if (inst.n < 1) throw Error(ErrorKind::InvalidInput, "n must be positive");
    HypothesisReport rep;
    rep.genus = genus(g);
    rep.degree = inst.degree();
    rep.z_metric = g.is_z_metric();
    rep.z_divisor = inst.divisor.is_z_divisor();
    rep.genus_ok = rep.genus >= 2;
    rep.degree_ok = rep.degree >= 2;
    rep.not_bridge = !g.model().is_bridge(inst.edge) && !g.model().is_loop(inst.edge);
    rep.nd_even = (inst.n * rep.degree) % 2 == 0;
    if (!rep.nd_even) return rep;
    const MetricDivisor lhs = inst.n * inst.divisor;
    const MetricDivisor rhs = pq_divisor(inst, inst.n * rep.degree / 2);
    if (inst.hypothesis_witness) {
        rep.equivalent = ord_div_metric(g, *inst.hypothesis_witness) == lhs - rhs;
        if (rep.equivalent) rep.witness = inst.hypothesis_witness;
    } else {
        rep.witness = linear_equiv_metric(g, lhs, rhs);
        rep.equivalent = rep.witness.has_value();
    }
    return rep;
}

PointOnGraph witness_point(const WitnessInstance& inst, const Integer& s) {
    const Integer l = length_integer(inst);
    const Integer ln = l * s * inst.degree();
    return PointOnGraph::on_edge(inst.graph, inst.edge, Rational(ln, 2 * ln - 1) * inst.length());
}

WitnessResult build_witness(const WitnessInstance& inst, const Integer& s) {
    if (s < 1 || s % inst.n != 0)
        throw Error(ErrorKind::HypothesisFailure, "s = " + s.str() + " is not a positive multiple of n = " + inst.n.str());
    const HypothesisReport hyp = check_hypotheses(inst);
    if (!hyp.passed()) throw Error(ErrorKind::HypothesisFailure, "instance hypotheses do not hold");
    const MetricGraph& g = inst.graph;
    const Integer l = length_integer(inst);

    WitnessResult res;
    res.s = s;
    res.big_n = s * hyp.degree;
    res.degree = 2 * s * l;
    const Integer ln = l * res.big_n;
    const Rational len = inst.length();
    const Rational r_offset = Rational(ln, 2 * ln - 1) * len;
    res.r = PointOnGraph::on_edge(g, inst.edge, r_offset);
    res.r_off_lattice = !res.r.is_z_point();
    if (!res.r_off_lattice) throw Error(ErrorKind::VerificationFailure, "r is a Z-point");

    // ftilde: zero off e, linear on [p, r] and [r, q] with minimum at r.
    const Rational dip = -Rational(ln * (ln - 1), 2 * ln - 1) * len;
    std::vector<PLFunction::Piece> pieces;
    for (Index e = 0; e < g.edge_count(); ++e) {
        if (e == inst.edge) pieces.push_back({{Rational(0), Rational(0)}, {r_offset, dip}, {len, Rational(0)}});
        else pieces.push_back({{Rational(0), Rational(0)}, {g.length(e), Rational(0)}});
    }
    res.ftilde = PLFunction::build(g, std::move(pieces));
    const MetricDivisor div_tilde = ord_div_metric(g, res.ftilde);
    res.ord_p = div_tilde(PointOnGraph::vertex(inst.p()));
    res.ord_q = div_tilde(PointOnGraph::vertex(inst.q()));
    res.ord_r = div_tilde(res.r);
    res.orders_match = res.ord_p == -(ln - 1) && res.ord_q == -ln && res.ord_r == 2 * ln - 1 &&
                       div_tilde.terms().size() == 3;
    if (!res.orders_match) throw Error(ErrorKind::VerificationFailure, "orders of ftilde differ from the formulas");

    // s*D - (N/2)([p]+[q]) = div((s/n) psi), so f = ftilde - 2L (s/n) psi.
    res.f = (res.ftilde + (-(2 * l * (s / inst.n))) * *hyp.witness).normalized();
    const MetricDivisor big_d = res.degree * inst.divisor;
    const MetricDivisor target = MetricDivisor::point(PointOnGraph::vertex(inst.p())) +
                                 MetricDivisor::point(res.r, 2 * ln - 1);
    const MetricDivisor e = big_d + ord_div_metric(g, res.f);
    res.divisor_matches = e == target && e.degree() == 2 * ln;
    if (!res.divisor_matches) throw Error(ErrorKind::VerificationFailure, "2sL D + div(f) differs from [p] + (2LN-1)[r]");

    res.extremal = is_extremal_metric(g, big_d, res.f);
    if (!res.extremal) throw Error(ErrorKind::VerificationFailure, "f is not extremal");
    res.firing_subgraphs = firing_subgraphs_metric(g, e);
    return res;
}

std::vector<ObstructionRow> indecomposability_check(const WitnessInstance& inst, const Integer& s) {
    const Integer l = length_integer(inst);
    const Integer d = inst.degree();
    const Integer ln = l * s * d;
    const PointOnGraph r = witness_point(inst, s);
    std::vector<ObstructionRow> rows;
    for (Integer k = 1; k <= 2 * s * l - 1; ++k) {
        ObstructionRow row{k, false};
        row.equivalent = linear_equiv_metric(inst.graph, k * inst.divisor, MetricDivisor::point(r, k * d)).has_value();
        if (row.equivalent && k % (2 * ln - 1) != 0)
            throw Error(ErrorKind::VerificationFailure, "kD ~ kd[r] at k = " + k.str() + ", not a multiple of 2LN-1");
        rows.push_back(row);
    }
    return rows;
}

bool NonFiniteCertificate::verified() const {
    if (!hypotheses.passed() || witnesses.empty()) return false;
    for (const auto& w : witnesses)
        if (!w.passed()) return false;
    return true;
}

NonFiniteCertificate nonfinite_certificate(const WitnessInstance& inst, const std::vector<Integer>& s_list) {
    if (s_list.empty()) throw Error(ErrorKind::InvalidInput, "empty list of s values");
    NonFiniteCertificate cert;
    cert.hypotheses = check_hypotheses(inst);
    if (!cert.hypotheses.passed()) throw Error(ErrorKind::HypothesisFailure, "instance hypotheses do not hold");
    for (const auto& s : s_list) {
        WitnessResult w = build_witness(inst, s);
        w.obstruction = indecomposability_check(inst, s);
        w.obstruction_holds = true;
        for (const auto& row : w.obstruction) w.obstruction_holds = w.obstruction_holds && !row.equivalent;
        cert.witnesses.push_back(std::move(w));
    }
    return cert;
}

WitnessInstance complete_graph_instance(Index vertex_count, const Integer& edge_length) {
    if (vertex_count < 4) throw Error(ErrorKind::InvalidInput, "complete graph instance needs at least 4 vertices");
    if (edge_length < 1) throw Error(ErrorKind::InvalidInput, "edge length must be a positive integer");
    WitnessInstance inst;
    inst.graph = complete_metric(vertex_count, Rational(edge_length));
    inst.divisor = canonical_divisor_metric(inst.graph);
    inst.edge = 0;
    inst.n = vertex_count % 2 == 1 ? 1 : 2;
    if (!check_hypotheses(inst).passed())
        throw Error(ErrorKind::HypothesisFailure, "complete graph instance fails its hypotheses");
    return inst;
}

}  // namespace canonring
