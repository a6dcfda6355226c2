// Copyright (c) canonring contributors.
// SPDX-License-Identifier: Apache-2.0
#include "canonring/graph.hpp"

#include <algorithm>
#include <numeric>

#include "canonring/linalg.hpp"

namespace canonring {

namespace {

Index find_root(std::vector<Index>& parent, Index x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
        auto& p = parent[static_cast<std::size_t>(x)];
        p = parent[static_cast<std::size_t>(p)];
        x = p;
    }
    return x;
}

void check_size(Index expected, Index got, const char* what) {
    if (expected != got)
        throw Error(ErrorKind::SizeMismatch, std::string(what) + " has " + std::to_string(got) + " entries, graph has " +
                                                 std::to_string(expected) + " vertices");
}

}  // namespace

bool is_connected(Index vertex_count, const std::vector<FiniteGraph::Edge>& edges, std::optional<Index> skip_edge) {
    if (vertex_count <= 0) return false;
    std::vector<Index> parent(static_cast<std::size_t>(vertex_count));
    std::iota(parent.begin(), parent.end(), Index{0});
    Index components = vertex_count;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (skip_edge && static_cast<Index>(e) == *skip_edge) continue;
        Index a = find_root(parent, edges[e].first);
        Index b = find_root(parent, edges[e].second);
        if (a != b) {
            parent[static_cast<std::size_t>(a)] = b;
            --components;
        }
    }
    return components == 1;
}

FiniteGraph FiniteGraph::build(Index vertex_count, std::vector<Edge> edges, std::vector<std::string> labels) {
    if (vertex_count < 1) throw Error(ErrorKind::InvalidInput, "a graph needs at least one vertex");
    for (const auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
            throw Error(ErrorKind::IndexOutOfRange,
                        "edge (" + std::to_string(u) + "," + std::to_string(v) + ") with " +
                            std::to_string(vertex_count) + " vertices");
    }
    if (!labels.empty() && static_cast<Index>(labels.size()) != vertex_count)
        throw Error(ErrorKind::SizeMismatch, "label count differs from vertex count");
    if (!is_connected(vertex_count, edges)) throw Error(ErrorKind::Disconnected, "graph is not connected");

    FiniteGraph g;
    g.vertex_count_ = vertex_count;
    g.edges_ = std::move(edges);
    g.labels_ = std::move(labels);
    const auto n = static_cast<std::size_t>(vertex_count);
    g.valence_.assign(n, 0);
    g.loops_.assign(n, 0);
    g.incidence_.assign(n, {});
    for (std::size_t e = 0; e < g.edges_.size(); ++e) {
        const auto [u, v] = g.edges_[e];
        g.valence_[static_cast<std::size_t>(u)] += 1;
        g.valence_[static_cast<std::size_t>(v)] += 1;
        if (u == v) {
            g.loops_[static_cast<std::size_t>(u)] += 1;
            continue;
        }
        g.incidence_[static_cast<std::size_t>(u)].emplace_back(v, static_cast<Index>(e));
        g.incidence_[static_cast<std::size_t>(v)].emplace_back(u, static_cast<Index>(e));
    }
    return g;
}

std::string FiniteGraph::label(Index v) const {
    if (labels_.empty()) return std::to_string(v);
    return labels_.at(static_cast<std::size_t>(v));
}

bool FiniteGraph::is_bridge(Index e) const {
    if (e < 0 || e >= edge_count()) throw Error(ErrorKind::IndexOutOfRange, "edge " + std::to_string(e));
    if (is_loop(e)) return false;
    return !is_connected(vertex_count_, edges_, e);
}

FiniteGraph build_graph(Index vertex_count, const std::vector<FiniteGraph::Edge>& edges) {
    return FiniteGraph::build(vertex_count, edges);
}

// ---------------------------------------------------------------------------

Divisor Divisor::unit(Index n, Index v, const Integer& c) {
    if (v < 0 || v >= n) throw Error(ErrorKind::IndexOutOfRange, "vertex " + std::to_string(v));
    IntVector x = IntVector::Zero(n);
    x(v) = c;
    return Divisor(std::move(x));
}

Integer Divisor::degree() const { return coeffs_.sum(); }

Integer Divisor::positive_degree() const {
    Integer out = 0;
    for (Index i = 0; i < size(); ++i)
        if (coeffs_(i) > 0) out += coeffs_(i);
    return out;
}

bool Divisor::is_effective() const {
    for (Index i = 0; i < size(); ++i)
        if (coeffs_(i) < 0) return false;
    return true;
}

std::vector<Index> Divisor::support() const {
    std::vector<Index> out;
    for (Index i = 0; i < size(); ++i)
        if (coeffs_(i) != 0) out.push_back(i);
    return out;
}

Divisor operator+(const Divisor& a, const Divisor& b) {
    check_size(a.size(), b.size(), "divisor");
    return Divisor(IntVector(a.coeffs_ + b.coeffs_));
}

Divisor operator-(const Divisor& a, const Divisor& b) {
    check_size(a.size(), b.size(), "divisor");
    return Divisor(IntVector(a.coeffs_ - b.coeffs_));
}

Divisor operator*(const Integer& k, const Divisor& d) { return Divisor(IntVector(d.coeffs_ * k)); }

// ---------------------------------------------------------------------------

Integer RationalFunction::min_value() const { return values_.size() ? values_.minCoeff() : Integer(0); }
Integer RationalFunction::max_value() const { return values_.size() ? values_.maxCoeff() : Integer(0); }

RationalFunction RationalFunction::normalized() const {
    const Integer m = min_value();
    return RationalFunction(IntVector(values_.array() - m));
}

bool RationalFunction::is_constant() const { return min_value() == max_value(); }

bool operator<(const RationalFunction& a, const RationalFunction& b) {
    return std::lexicographical_compare(a.values_.data(), a.values_.data() + a.size(), b.values_.data(),
                                        b.values_.data() + b.size());
}

// ---------------------------------------------------------------------------

Divisor canonical_divisor(const FiniteGraph& g) {
    IntVector k(g.vertex_count());
    for (Index v = 0; v < g.vertex_count(); ++v) k(v) = Integer(g.valence(v) - 2);
    return Divisor(std::move(k));
}

Divisor ord_and_div(const FiniteGraph& g, const RationalFunction& f) {
    check_size(g.vertex_count(), f.size(), "rational function");
    IntVector ord = IntVector::Zero(g.vertex_count());
    for (const auto& [u, v] : g.edges()) {
        if (u == v) continue;
        ord(u) += f[v] - f[u];
        ord(v) += f[u] - f[v];
    }
    return Divisor(std::move(ord));
}

std::optional<RationalFunction> linear_equiv(const FiniteGraph& g, const Divisor& d, const Divisor& d_prime) {
    check_size(g.vertex_count(), d.size(), "divisor");
    check_size(g.vertex_count(), d_prime.size(), "divisor");
    const Divisor diff = d - d_prime;
    if (diff.degree() != 0) return std::nullopt;
    auto x = solve_integer<Integer>(laplacian<Integer>(g), diff.coeffs());
    if (!x) return std::nullopt;
    RationalFunction f = RationalFunction(std::move(*x)).normalized();
    if (ord_and_div(g, f) != diff) throw Error(ErrorKind::VerificationFailure, "integer solve returned a non-solution");
    return f;
}

Integer genus(const FiniteGraph& g) { return Integer(g.edge_count() - g.vertex_count() + 1); }

std::vector<Integer> jacobian_invariants(const FiniteGraph& g) {
    SmithOptions opts;
    opts.track_left = false;
    opts.track_right = false;
    auto snf = smith_normal_form<Integer>(laplacian<Integer>(g), opts);
    std::vector<Integer> out;
    for (Index i = 0; i < snf.rank; ++i)
        if (snf.diagonal(i, i) != 1) out.push_back(snf.diagonal(i, i));
    return out;
}

FiniteGraph theta_graph() { return FiniteGraph::build(2, {{0, 1}, {0, 1}, {0, 1}}, {"p", "q"}); }

FiniteGraph path_graph(Index vertex_count) {
    std::vector<FiniteGraph::Edge> edges;
    for (Index i = 0; i + 1 < vertex_count; ++i) edges.emplace_back(i, i + 1);
    return FiniteGraph::build(vertex_count, std::move(edges));
}

FiniteGraph complete_graph(Index vertex_count) {
    std::vector<FiniteGraph::Edge> edges;
    for (Index i = 0; i < vertex_count; ++i)
        for (Index j = i + 1; j < vertex_count; ++j) edges.emplace_back(i, j);
    return FiniteGraph::build(vertex_count, std::move(edges));
}

}  // namespace canonring
