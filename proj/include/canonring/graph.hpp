// Copyright (c) canonring contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "canonring/error.hpp"
#include "canonring/scalar.hpp"

namespace canonring {

/// Connected multigraph. Loops and parallel edges are allowed.
class FiniteGraph {
  public:
    using Edge = std::pair<Index, Index>;
    // (neighbor, edge id) for every non-loop edge end at a vertex.
    using Incidence = std::vector<std::pair<Index, Index>>;

    FiniteGraph() = default;

    /// Validates indices and connectivity. Throws IndexOutOfRange or Disconnected.
    static FiniteGraph build(Index vertex_count, std::vector<Edge> edges, std::vector<std::string> labels = {});

    [[nodiscard]] Index vertex_count() const { return vertex_count_; }
    [[nodiscard]] Index edge_count() const { return static_cast<Index>(edges_.size()); }
    [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
    [[nodiscard]] const Edge& edge(Index e) const { return edges_.at(static_cast<std::size_t>(e)); }
    [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
    [[nodiscard]] std::string label(Index v) const;

    /// Number of edge ends at v; a loop counts twice.
    [[nodiscard]] Index valence(Index v) const { return valence_[static_cast<std::size_t>(v)]; }
    [[nodiscard]] Index loop_count(Index v) const { return loops_[static_cast<std::size_t>(v)]; }
    [[nodiscard]] const Incidence& incidence(Index v) const { return incidence_[static_cast<std::size_t>(v)]; }
    /// Non-loop edge ends at v.
    [[nodiscard]] Index outdegree(Index v) const { return static_cast<Index>(incidence(v).size()); }

    [[nodiscard]] bool is_loop(Index e) const { return edge(e).first == edge(e).second; }
    /// True when removing e disconnects the graph.
    [[nodiscard]] bool is_bridge(Index e) const;

    friend bool operator==(const FiniteGraph& a, const FiniteGraph& b) {
        return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
    }

  private:
    Index vertex_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::string> labels_;
    std::vector<Index> valence_;
    std::vector<Index> loops_;
    std::vector<Incidence> incidence_;
};

[[nodiscard]] bool is_connected(Index vertex_count, const std::vector<FiniteGraph::Edge>& edges,
                                std::optional<Index> skip_edge = std::nullopt);

/// Finite formal sum of vertices with integer coefficients, stored densely.
class Divisor {
  public:
    Divisor() = default;
    explicit Divisor(IntVector coeffs) : coeffs_(std::move(coeffs)) {}

    static Divisor zero(Index n) { return Divisor(IntVector::Zero(n)); }
    static Divisor unit(Index n, Index v, const Integer& c = 1);

    [[nodiscard]] Index size() const { return coeffs_.size(); }
    [[nodiscard]] const IntVector& coeffs() const { return coeffs_; }
    [[nodiscard]] const Integer& operator[](Index v) const { return coeffs_(v); }

    [[nodiscard]] Integer degree() const;
    /// Sum of the positive coefficients.
    [[nodiscard]] Integer positive_degree() const;
    [[nodiscard]] bool is_effective() const;
    [[nodiscard]] std::vector<Index> support() const;

    friend Divisor operator+(const Divisor& a, const Divisor& b);
    friend Divisor operator-(const Divisor& a, const Divisor& b);
    friend Divisor operator*(const Integer& k, const Divisor& d);
    friend bool operator==(const Divisor& a, const Divisor& b) {
        return a.size() == b.size() && a.coeffs_ == b.coeffs_;
    }

  private:
    IntVector coeffs_;
};

/// Integer labelling of the vertices.
class RationalFunction {
  public:
    RationalFunction() = default;
    explicit RationalFunction(IntVector values) : values_(std::move(values)) {}
    static RationalFunction constant(Index n, const Integer& c = 0) {
        return RationalFunction(IntVector::Constant(n, c));
    }

    [[nodiscard]] Index size() const { return values_.size(); }
    [[nodiscard]] const IntVector& values() const { return values_; }
    [[nodiscard]] const Integer& operator[](Index v) const { return values_(v); }

    [[nodiscard]] Integer min_value() const;
    [[nodiscard]] Integer max_value() const;
    /// Representative of the constant-shift orbit with minimum value 0.
    [[nodiscard]] RationalFunction normalized() const;
    [[nodiscard]] bool is_constant() const;

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.size() == b.size() && a.values_ == b.values_;
    }
    friend bool operator<(const RationalFunction& a, const RationalFunction& b);

  private:
    IntVector values_;
};

[[nodiscard]] FiniteGraph build_graph(Index vertex_count, const std::vector<FiniteGraph::Edge>& edges);

/// Laplacian with off-diagonal edge multiplicities and minus the non-loop
/// degree on the diagonal, so that `laplacian(g) * f == div(f)`.
template <typename Scalar>
[[nodiscard]] Matrix<Scalar> laplacian(const FiniteGraph& g) {
    const Index n = g.vertex_count();
    Matrix<Scalar> m = Matrix<Scalar>::Zero(n, n);
    for (const auto& [u, v] : g.edges()) {
        if (u == v) continue;
        m(u, v) += Scalar(1);
        m(v, u) += Scalar(1);
        m(u, u) -= Scalar(1);
        m(v, v) -= Scalar(1);
    }
    return m;
}

/// K_G = sum (val(x) - 2)[x].
[[nodiscard]] Divisor canonical_divisor(const FiniteGraph& g);

/// div(f); loops contribute nothing.
[[nodiscard]] Divisor ord_and_div(const FiniteGraph& g, const RationalFunction& f);

/// Some f with div(f) == d - d_prime, normalized to minimum 0, if one exists.
[[nodiscard]] std::optional<RationalFunction> linear_equiv(const FiniteGraph& g, const Divisor& d,
                                                           const Divisor& d_prime);

/// First Betti number |E| - |V| + 1.
[[nodiscard]] Integer genus(const FiniteGraph& g);

/// Invariant factors of the Jacobian (cokernel of the Laplacian), trivial ones dropped.
[[nodiscard]] std::vector<Integer> jacobian_invariants(const FiniteGraph& g);

// Small named graphs.
[[nodiscard]] FiniteGraph theta_graph();
[[nodiscard]] FiniteGraph path_graph(Index vertex_count);
[[nodiscard]] FiniteGraph complete_graph(Index vertex_count);

}  // namespace canonring
