// Copyright (c) canonring contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "canonring/graph.hpp"

namespace canonring {

/// Compact metric graph given by a model and positive rational edge lengths.
class MetricGraph {
  public:
    /// Where an input edge ended up after 2-valent vertices were suppressed.
    struct EdgeImage {
        Index edge;
        Rational start;  // offset of the input edge's first endpoint on `edge`
        bool reversed;
    };

    MetricGraph() = default;

    /// Suppresses 2-valent vertices unless `refinement` is set. Rejects circles,
    /// non-positive lengths and size mismatches.
    static MetricGraph build(const FiniteGraph& model, std::vector<Rational> lengths, bool refinement = false);

    [[nodiscard]] const FiniteGraph& model() const { return model_; }
    [[nodiscard]] const std::vector<Rational>& lengths() const { return lengths_; }
    [[nodiscard]] const Rational& length(Index e) const { return lengths_.at(static_cast<std::size_t>(e)); }
    [[nodiscard]] bool is_refinement() const { return refinement_; }
    [[nodiscard]] bool is_z_metric() const;
    [[nodiscard]] Index vertex_count() const { return model_.vertex_count(); }
    [[nodiscard]] Index edge_count() const { return model_.edge_count(); }
    /// Indexed by input edge id.
    [[nodiscard]] const std::vector<EdgeImage>& edge_map() const { return edge_map_; }
    /// Indexed by input vertex id; nullopt for suppressed vertices.
    [[nodiscard]] const std::vector<std::optional<Index>>& vertex_map() const { return vertex_map_; }

  private:
    FiniteGraph model_;
    std::vector<Rational> lengths_;
    bool refinement_ = false;
    std::vector<EdgeImage> edge_map_;
    std::vector<std::optional<Index>> vertex_map_;
};

/// Point of a metric graph in canonical form: a model vertex, or an interior
/// point (edge, offset) with 0 < offset < length.
class PointOnGraph {
  public:
    PointOnGraph() = default;
    static PointOnGraph vertex(Index v) { return PointOnGraph(v, -1, Rational(0)); }
    /// Maps offsets 0 and length to the edge endpoints. Throws IndexOutOfRange.
    static PointOnGraph on_edge(const MetricGraph& g, Index e, const Rational& offset);

    [[nodiscard]] bool is_vertex() const { return edge_ < 0; }
    [[nodiscard]] Index vertex_id() const { return vertex_; }
    [[nodiscard]] Index edge() const { return edge_; }
    [[nodiscard]] const Rational& offset() const { return offset_; }
    /// Integral distance to the model vertices.
    [[nodiscard]] bool is_z_point() const { return is_vertex() || is_integral(offset_); }

    friend bool operator==(const PointOnGraph& a, const PointOnGraph& b) {
        return a.vertex_ == b.vertex_ && a.edge_ == b.edge_ && a.offset_ == b.offset_;
    }
    friend bool operator<(const PointOnGraph& a, const PointOnGraph& b);

  private:
    PointOnGraph(Index v, Index e, Rational offset) : vertex_(v), edge_(e), offset_(std::move(offset)) {}
    Index vertex_ = 0;
    Index edge_ = -1;
    Rational offset_;
};

/// Finite formal sum of points with nonzero integer coefficients.
class MetricDivisor {
  public:
    using Map = std::map<PointOnGraph, Integer>;

    MetricDivisor() = default;
    static MetricDivisor point(const PointOnGraph& x, const Integer& c = 1);

    [[nodiscard]] const Map& terms() const { return terms_; }
    [[nodiscard]] Integer operator()(const PointOnGraph& x) const;
    void add(const PointOnGraph& x, const Integer& c);

    [[nodiscard]] Integer degree() const;
    [[nodiscard]] bool is_effective() const;
    [[nodiscard]] bool is_z_divisor() const;
    [[nodiscard]] std::vector<PointOnGraph> support() const;

    friend MetricDivisor operator+(MetricDivisor a, const MetricDivisor& b);
    friend MetricDivisor operator-(MetricDivisor a, const MetricDivisor& b);
    friend MetricDivisor operator*(const Integer& k, const MetricDivisor& d);
    friend bool operator==(const MetricDivisor&, const MetricDivisor&) = default;

  private:
    Map terms_;
};

/// Divisor on the model vertices viewed on the metric graph.
[[nodiscard]] MetricDivisor from_vertex_divisor(const Divisor& d);

/// Continuous piecewise-linear function with integer slopes.
class PLFunction {
  public:
    struct Breakpoint {
        Rational offset;
        Rational value;
        friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
    };
    using Piece = std::vector<Breakpoint>;

    PLFunction() = default;
    /// Validates endpoints, ordering, continuity and slope integrality. Throws InvalidPL.
    static PLFunction build(const MetricGraph& g, std::vector<Piece> pieces);
    static PLFunction constant(const MetricGraph& g, const Rational& c = 0);
    /// Linear on every edge. Throws InvalidPL if a slope is not an integer.
    static PLFunction interpolate(const MetricGraph& g, const std::vector<Rational>& vertex_values);

    [[nodiscard]] const std::vector<Piece>& pieces() const { return pieces_; }
    [[nodiscard]] const Piece& piece(Index e) const { return pieces_.at(static_cast<std::size_t>(e)); }
    [[nodiscard]] Rational vertex_value(const MetricGraph& g, Index v) const;
    [[nodiscard]] Rational value_at(const MetricGraph& g, const PointOnGraph& x) const;
    [[nodiscard]] Rational min_value() const;
    [[nodiscard]] Rational max_value() const;
    /// Integer slope of every segment of edge e, in increasing offset order.
    [[nodiscard]] std::vector<Integer> slopes(Index e) const;

    /// Removes breakpoints where the slope does not change.
    [[nodiscard]] PLFunction simplified() const;
    [[nodiscard]] PLFunction shifted(const Rational& c) const;
    /// Representative with minimum value 0.
    [[nodiscard]] PLFunction normalized() const { return shifted(-min_value()); }

    friend PLFunction operator+(const PLFunction& a, const PLFunction& b);
    friend PLFunction operator-(const PLFunction& a);
    friend PLFunction operator*(const Integer& k, const PLFunction& f);
    friend bool operator==(const PLFunction&, const PLFunction&) = default;

  private:
    explicit PLFunction(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {}
    std::vector<Piece> pieces_;

    friend PLFunction tropical_sum(const PLFunction& a, const PLFunction& b);
};

/// Pointwise maximum.
[[nodiscard]] PLFunction tropical_sum(const PLFunction& a, const PLFunction& b);
/// Pointwise sum.
[[nodiscard]] inline PLFunction tropical_product(const PLFunction& a, const PLFunction& b) { return a + b; }

/// div(f): the sum of outgoing slopes at every point. Throws InvalidPL.
[[nodiscard]] MetricDivisor ord_div_metric(const MetricGraph& g, const PLFunction& f);
[[nodiscard]] MetricDivisor canonical_divisor_metric(const MetricGraph& g);
[[nodiscard]] Integer genus(const MetricGraph& g);
/// D + div(f) is effective.
[[nodiscard]] bool is_member_metric(const MetricGraph& g, const MetricDivisor& d, const PLFunction& f);

/// Uniform subdivision of every edge into segments of length 1/q.
class Refinement {
  public:
    [[nodiscard]] const FiniteGraph& graph() const { return graph_; }
    [[nodiscard]] const Integer& scale() const { return scale_; }
    /// Refined vertex at a point whose offset is a multiple of 1/q. Throws NonIntegralRefinement.
    [[nodiscard]] Index vertex_of(const PointOnGraph& x) const;
    [[nodiscard]] PointOnGraph point_of(Index refined_vertex) const;

    [[nodiscard]] Divisor transport(const MetricDivisor& d) const;
    [[nodiscard]] MetricDivisor lift(const Divisor& d) const;
    /// Values times q at refined vertices; requires breakpoints on the grid and q*f integral there.
    [[nodiscard]] RationalFunction transport(const PLFunction& f) const;
    /// Values divided by q, linear between refined vertices.
    [[nodiscard]] PLFunction lift(const RationalFunction& f) const;

  private:
    friend Refinement refine(const MetricGraph& g, const Integer& q);
    const MetricGraph* metric_ = nullptr;
    FiniteGraph graph_;
    Integer scale_;
    // For every edge, the refined vertices at offsets 0, 1/q, ..., length.
    std::vector<std::vector<Index>> chains_;
    std::vector<PointOnGraph> points_;
};

/// The refinement keeps a pointer to g, which must outlive it.
/// Throws NonIntegralRefinement unless q * length is an integer for every edge.
[[nodiscard]] Refinement refine(const MetricGraph& g, const Integer& q);

/// Smallest q that puts every edge length and every support point of the divisors on the 1/q grid.
[[nodiscard]] Integer common_denominator(const MetricGraph& g, const std::vector<const MetricDivisor*>& divisors);

/// Some f with div(f) == d - d_prime, normalized to minimum 0, if one exists.
///
/// If div(f) is supported on 1/q-points then f has no breakpoints elsewhere,
/// so f is the lift of a rational function on the 1/q refinement and the
/// question reduces to an integer solve on that finite graph.
[[nodiscard]] std::optional<PLFunction> linear_equiv_metric(const MetricGraph& g, const MetricDivisor& d,
                                                            const MetricDivisor& d_prime);

/// Compact subset made of closed edge intervals and vertices, in canonical form.
class MetricSubgraph {
  public:
    using Interval = std::pair<Rational, Rational>;

    MetricSubgraph() = default;
    /// Intervals are clamped to [0, length] and merged; touching an end adds the vertex.
    static MetricSubgraph build(const MetricGraph& g, std::vector<std::vector<Interval>> intervals,
                                std::set<Index> vertices);
    static MetricSubgraph points(const MetricGraph& g, const std::vector<PointOnGraph>& xs);
    /// The whole graph minus the open interval (a, b) of edge e.
    static MetricSubgraph complement_of_open_interval(const MetricGraph& g, Index e, const Rational& a,
                                                      const Rational& b);

    [[nodiscard]] const std::vector<std::vector<Interval>>& intervals() const { return intervals_; }
    [[nodiscard]] const std::set<Index>& vertices() const { return vertices_; }
    [[nodiscard]] bool empty() const;
    [[nodiscard]] bool is_whole(const MetricGraph& g) const;
    [[nodiscard]] bool contains(const MetricGraph& g, const PointOnGraph& x) const;
    /// Interval endpoints and isolated points that are not model vertices, plus vertices with an
    /// incident direction leaving the subgraph.
    [[nodiscard]] std::vector<PointOnGraph> boundary(const MetricGraph& g) const;

    friend bool operator==(const MetricSubgraph&, const MetricSubgraph&) = default;
    friend bool operator<(const MetricSubgraph& a, const MetricSubgraph& b) {
        return std::tie(a.vertices_, a.intervals_) < std::tie(b.vertices_, b.intervals_);
    }

  private:
    std::vector<std::vector<Interval>> intervals_;
    std::set<Index> vertices_;
};

/// CF(sub, l)(x) = -min(l, dist(x, sub)). Throws EmptySubgraph for empty or whole subgraphs.
[[nodiscard]] PLFunction cf_move(const MetricGraph& g, const MetricSubgraph& sub, const Rational& l);
/// One third of the smallest gap between support points, boundary points and vertices along any edge.
[[nodiscard]] Rational firing_distance(const MetricGraph& g, const MetricDivisor& e, const MetricSubgraph& sub);
[[nodiscard]] bool can_fire(const MetricGraph& g, const MetricDivisor& e, const MetricSubgraph& sub);
[[nodiscard]] bool can_fire(const MetricGraph& g, const MetricDivisor& e, const MetricSubgraph& sub,
                            const Rational& l);

/// Proper subgraphs with boundary in supp(e) that fire on the effective divisor e.
/// Exhaustive over unions of components of the complement of supp(e); throws BudgetExceeded
/// beyond `max_nodes` support points plus components.
[[nodiscard]] std::vector<MetricSubgraph> firing_subgraphs_metric(const MetricGraph& g, const MetricDivisor& e,
                                                                  Index max_nodes = 20);

/// No two proper firing subgraphs cover the graph. Throws NotMember.
[[nodiscard]] bool is_extremal_metric(const MetricGraph& g, const MetricDivisor& d, const PLFunction& f);

// Named metric graphs with all edges of the given length.
[[nodiscard]] MetricGraph theta_metric(const Rational& length = 1);
[[nodiscard]] MetricGraph complete_metric(Index vertex_count, const Rational& length = 1);

}  // namespace canonring
