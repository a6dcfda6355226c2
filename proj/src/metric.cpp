// Copyright (c) canonring contributors.
// SPDX-License-Identifier: Apache-2.0
#include "canonring/metric.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace canonring {

namespace {

std::size_t at(Index i) { return static_cast<std::size_t>(i); }

void check_edge(const MetricGraph& g, Index e) {
    if (e < 0 || e >= g.edge_count())
        throw Error(ErrorKind::IndexOutOfRange, "edge " + std::to_string(e) + " out of range");
}

// Linear interpolation on a validated piece.
Rational eval_piece(const PLFunction::Piece& piece, const Rational& t) {
    auto it = std::lower_bound(piece.begin(), piece.end(), t,
                               [](const PLFunction::Breakpoint& b, const Rational& x) { return b.offset < x; });
    if (it == piece.end()) throw Error(ErrorKind::InvalidPL, "offset beyond edge");
    if (it->offset == t) return it->value;
    if (it == piece.begin()) throw Error(ErrorKind::InvalidPL, "offset before edge");
    const auto& lo = *(it - 1);
    return lo.value + (it->value - lo.value) * (t - lo.offset) / (it->offset - lo.offset);
}

std::vector<Rational> merged_offsets(const PLFunction::Piece& a, const PLFunction::Piece& b) {
    std::vector<Rational> out;
    for (const auto& x : a) out.push_back(x.offset);
    for (const auto& x : b) out.push_back(x.offset);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

PLFunction::Piece simplify_piece(const PLFunction::Piece& piece) {
    PLFunction::Piece out;
    for (const auto& b : piece) {
        if (out.size() >= 2) {
            const auto& p0 = out[out.size() - 2];
            const auto& p1 = out.back();
            if ((p1.value - p0.value) * (b.offset - p1.offset) == (b.value - p1.value) * (p1.offset - p0.offset))
                out.pop_back();
        }
        out.push_back(b);
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------

MetricGraph MetricGraph::build(const FiniteGraph& model, std::vector<Rational> lengths, bool refinement) {
    const Index ne = model.edge_count();
    const Index nv = model.vertex_count();
    if (static_cast<Index>(lengths.size()) != ne) throw Error(ErrorKind::SizeMismatch, "one length per edge expected");
    if (ne == 0) throw Error(ErrorKind::InvalidInput, "a metric graph needs at least one edge");
    for (const auto& l : lengths)
        if (l <= 0) throw Error(ErrorKind::InvalidInput, "edge lengths must be positive");
    bool all_two = true;
    for (Index v = 0; v < nv; ++v) all_two = all_two && model.valence(v) == 2;
    if (all_two) throw Error(ErrorKind::InvalidInput, "metric graph is a circle");

    MetricGraph out;
    out.refinement_ = refinement;
    if (refinement) {
        out.model_ = model;
        out.lengths_ = std::move(lengths);
        for (Index e = 0; e < ne; ++e) out.edge_map_.push_back({e, Rational(0), false});
        for (Index v = 0; v < nv; ++v) out.vertex_map_.emplace_back(v);
        return out;
    }

    // Working edges are chains of (input edge, reversed) from `ends.first` to `ends.second`.
    struct Chain {
        std::pair<Index, Index> ends;
        std::vector<std::pair<Index, bool>> parts;
        bool alive = true;
    };
    std::vector<Chain> chains;
    for (Index e = 0; e < ne; ++e) chains.push_back({model.edge(e), {{e, false}}, true});
    std::vector<std::vector<Index>> at_vertex(at(nv));
    for (Index e = 0; e < ne; ++e) {
        at_vertex[at(model.edge(e).first)].push_back(e);
        at_vertex[at(model.edge(e).second)].push_back(e);
    }
    std::vector<bool> removed(at(nv), false);
    auto reverse_chain = [](Chain& c) {
        std::swap(c.ends.first, c.ends.second);
        std::reverse(c.parts.begin(), c.parts.end());
        for (auto& p : c.parts) p.second = !p.second;
    };
    for (Index v = 0; v < nv; ++v) {
        if (model.valence(v) != 2 || model.loop_count(v) != 0) continue;
        auto& inc = at_vertex[at(v)];
        std::sort(inc.begin(), inc.end());
        const Index a = inc[0], b = inc[1];
        Chain& first = chains[at(a)];
        Chain& second = chains[at(b)];
        if (first.ends.second != v) reverse_chain(first);
        if (second.ends.first != v) reverse_chain(second);
        first.ends.second = second.ends.second;
        first.parts.insert(first.parts.end(), second.parts.begin(), second.parts.end());
        second.alive = false;
        removed[at(v)] = true;
        // The far end of b now belongs to chain a.
        const Index far = first.ends.second;
        auto& far_inc = at_vertex[at(far)];
        std::replace(far_inc.begin(), far_inc.end(), b, a);
    }

    out.vertex_map_.assign(at(nv), std::nullopt);
    std::vector<std::string> labels;
    Index next = 0;
    for (Index v = 0; v < nv; ++v) {
        if (removed[at(v)]) continue;
        out.vertex_map_[at(v)] = next++;
        labels.push_back(model.label(v));
    }
    std::vector<FiniteGraph::Edge> edges;
    out.edge_map_.assign(at(ne), {-1, Rational(0), false});
    for (const auto& c : chains) {
        if (!c.alive) continue;
        const Index id = static_cast<Index>(edges.size());
        edges.emplace_back(*out.vertex_map_[at(c.ends.first)], *out.vertex_map_[at(c.ends.second)]);
        Rational offset = 0;
        for (const auto& [e, rev] : c.parts) {
            const Rational& l = lengths[at(e)];
            out.edge_map_[at(e)] = {id, rev ? offset + l : offset, rev};
            offset += l;
        }
        out.lengths_.push_back(offset);
    }
    out.model_ = FiniteGraph::build(next, std::move(edges), std::move(labels));
    return out;
}

bool MetricGraph::is_z_metric() const {
    return std::all_of(lengths_.begin(), lengths_.end(), [](const Rational& l) { return is_integral(l); });
}

PointOnGraph PointOnGraph::on_edge(const MetricGraph& g, Index e, const Rational& offset) {
    check_edge(g, e);
    if (offset < 0 || offset > g.length(e))
        throw Error(ErrorKind::IndexOutOfRange, "offset " + to_string(offset) + " outside edge " + std::to_string(e));
    if (offset == 0) return vertex(g.model().edge(e).first);
    if (offset == g.length(e)) return vertex(g.model().edge(e).second);
    return PointOnGraph(0, e, offset);
}

bool operator<(const PointOnGraph& a, const PointOnGraph& b) {
    return std::tie(a.edge_, a.vertex_, a.offset_) < std::tie(b.edge_, b.vertex_, b.offset_);
}

// ---------------------------------------------------------------------------

MetricDivisor MetricDivisor::point(const PointOnGraph& x, const Integer& c) {
    MetricDivisor d;
    d.add(x, c);
    return d;
}

Integer MetricDivisor::operator()(const PointOnGraph& x) const {
    auto it = terms_.find(x);
    return it == terms_.end() ? Integer(0) : it->second;
}

void MetricDivisor::add(const PointOnGraph& x, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(x, c);
    if (inserted) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

Integer MetricDivisor::degree() const {
    Integer s = 0;
    for (const auto& [x, c] : terms_) s += c;
    return s;
}

bool MetricDivisor::is_effective() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second > 0; });
}

bool MetricDivisor::is_z_divisor() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.is_z_point(); });
}

std::vector<PointOnGraph> MetricDivisor::support() const {
    std::vector<PointOnGraph> out;
    for (const auto& [x, c] : terms_) out.push_back(x);
    return out;
}

MetricDivisor operator+(MetricDivisor a, const MetricDivisor& b) {
    for (const auto& [x, c] : b.terms_) a.add(x, c);
    return a;
}

MetricDivisor operator-(MetricDivisor a, const MetricDivisor& b) {
    for (const auto& [x, c] : b.terms_) a.add(x, -c);
    return a;
}

MetricDivisor operator*(const Integer& k, const MetricDivisor& d) {
    MetricDivisor out;
    for (const auto& [x, c] : d.terms_) out.add(x, k * c);
    return out;
}

MetricDivisor from_vertex_divisor(const Divisor& d) {
    MetricDivisor out;
    for (Index v = 0; v < d.size(); ++v) out.add(PointOnGraph::vertex(v), d[v]);
    return out;
}

// ---------------------------------------------------------------------------

PLFunction PLFunction::build(const MetricGraph& g, std::vector<Piece> pieces) {
    if (static_cast<Index>(pieces.size()) != g.edge_count())
        throw Error(ErrorKind::InvalidPL, "one breakpoint list per edge expected");
    std::vector<std::optional<Rational>> at_vertex(at(g.vertex_count()));
    auto meet = [&](Index v, const Rational& value, Index e) {
        auto& slot = at_vertex[at(v)];
        if (!slot) slot = value;
        else if (*slot != value)
            throw Error(ErrorKind::InvalidPL, "discontinuity at vertex " + g.model().label(v) + " on edge " +
                                                  std::to_string(e));
    };
    for (Index e = 0; e < g.edge_count(); ++e) {
        const Piece& piece = pieces[at(e)];
        if (piece.size() < 2) throw Error(ErrorKind::InvalidPL, "edge " + std::to_string(e) + " needs two breakpoints");
        if (piece.front().offset != 0 || piece.back().offset != g.length(e))
            throw Error(ErrorKind::InvalidPL, "edge " + std::to_string(e) + " breakpoints must span the edge");
        for (std::size_t i = 1; i < piece.size(); ++i) {
            const Rational run = piece[i].offset - piece[i - 1].offset;
            if (run <= 0) throw Error(ErrorKind::InvalidPL, "breakpoints must increase along edge " + std::to_string(e));
            if (!is_integral((piece[i].value - piece[i - 1].value) / run))
                throw Error(ErrorKind::InvalidPL, "non-integer slope on edge " + std::to_string(e));
        }
        meet(g.model().edge(e).first, piece.front().value, e);
        meet(g.model().edge(e).second, piece.back().value, e);
    }
    return PLFunction(std::move(pieces));
}

PLFunction PLFunction::constant(const MetricGraph& g, const Rational& c) {
    std::vector<Piece> pieces;
    for (Index e = 0; e < g.edge_count(); ++e) pieces.push_back({{Rational(0), c}, {g.length(e), c}});
    return PLFunction(std::move(pieces));
}

PLFunction PLFunction::interpolate(const MetricGraph& g, const std::vector<Rational>& vertex_values) {
    if (static_cast<Index>(vertex_values.size()) != g.vertex_count())
        throw Error(ErrorKind::SizeMismatch, "one value per vertex expected");
    std::vector<Piece> pieces;
    for (Index e = 0; e < g.edge_count(); ++e) {
        const auto [u, v] = g.model().edge(e);
        pieces.push_back({{Rational(0), vertex_values[at(u)]}, {g.length(e), vertex_values[at(v)]}});
    }
    return build(g, std::move(pieces));
}

Rational PLFunction::vertex_value(const MetricGraph& g, Index v) const {
    for (Index e = 0; e < g.edge_count(); ++e) {
        if (g.model().edge(e).first == v) return piece(e).front().value;
        if (g.model().edge(e).second == v) return piece(e).back().value;
    }
    throw Error(ErrorKind::IndexOutOfRange, "vertex " + std::to_string(v) + " out of range");
}

Rational PLFunction::value_at(const MetricGraph& g, const PointOnGraph& x) const {
    if (x.is_vertex()) return vertex_value(g, x.vertex_id());
    return eval_piece(piece(x.edge()), x.offset());
}

Rational PLFunction::min_value() const {
    Rational best = pieces_.at(0).front().value;
    for (const auto& p : pieces_)
        for (const auto& b : p) best = std::min(best, b.value);
    return best;
}

Rational PLFunction::max_value() const {
    Rational best = pieces_.at(0).front().value;
    for (const auto& p : pieces_)
        for (const auto& b : p) best = std::max(best, b.value);
    return best;
}

std::vector<Integer> PLFunction::slopes(Index e) const {
    const Piece& p = piece(e);
    std::vector<Integer> out;
    for (std::size_t i = 1; i < p.size(); ++i)
        out.push_back(numerator(Rational((p[i].value - p[i - 1].value) / (p[i].offset - p[i - 1].offset))));
    return out;
}

PLFunction PLFunction::simplified() const {
    std::vector<Piece> out;
    for (const auto& p : pieces_) out.push_back(simplify_piece(p));
    return PLFunction(std::move(out));
}

PLFunction PLFunction::shifted(const Rational& c) const {
    PLFunction out = *this;
    for (auto& p : out.pieces_)
        for (auto& b : p) b.value += c;
    return out;
}

PLFunction operator+(const PLFunction& a, const PLFunction& b) {
    if (a.pieces_.size() != b.pieces_.size()) throw Error(ErrorKind::SizeMismatch, "PL functions on different graphs");
    std::vector<PLFunction::Piece> out;
    for (std::size_t e = 0; e < a.pieces_.size(); ++e) {
        PLFunction::Piece piece;
        for (const auto& t : merged_offsets(a.pieces_[e], b.pieces_[e]))
            piece.push_back({t, eval_piece(a.pieces_[e], t) + eval_piece(b.pieces_[e], t)});
        out.push_back(simplify_piece(piece));
    }
    return PLFunction(std::move(out));
}

PLFunction operator-(const PLFunction& a) { return Integer(-1) * a; }

PLFunction operator*(const Integer& k, const PLFunction& f) {
    PLFunction out = f;
    for (auto& p : out.pieces_)
        for (auto& b : p) b.value *= k;
    return k == 0 ? out.simplified() : out;
}

PLFunction tropical_sum(const PLFunction& a, const PLFunction& b) {
    if (a.pieces_.size() != b.pieces_.size()) throw Error(ErrorKind::SizeMismatch, "PL functions on different graphs");
    std::vector<PLFunction::Piece> out;
    for (std::size_t e = 0; e < a.pieces_.size(); ++e) {
        const auto offsets = merged_offsets(a.pieces_[e], b.pieces_[e]);
        PLFunction::Piece piece;
        for (std::size_t i = 0; i < offsets.size(); ++i) {
            const Rational& t = offsets[i];
            const Rational va = eval_piece(a.pieces_[e], t), vb = eval_piece(b.pieces_[e], t);
            if (i > 0) {
                // Crossing strictly inside the previous interval.
                const Rational& s = offsets[i - 1];
                const Rational da = eval_piece(a.pieces_[e], s) - eval_piece(b.pieces_[e], s);
                const Rational db = va - vb;
                if ((da < 0 && db > 0) || (da > 0 && db < 0)) {
                    const Rational c = s + (t - s) * da / (da - db);
                    piece.push_back({c, eval_piece(a.pieces_[e], c)});
                }
            }
            piece.push_back({t, std::max(va, vb)});
        }
        out.push_back(simplify_piece(piece));
    }
    return PLFunction(std::move(out));
}

// ---------------------------------------------------------------------------

MetricDivisor ord_div_metric(const MetricGraph& g, const PLFunction& f) {
    if (static_cast<Index>(f.pieces().size()) != g.edge_count())
        throw Error(ErrorKind::InvalidPL, "PL function has the wrong number of edges");
    MetricDivisor out;
    for (Index e = 0; e < g.edge_count(); ++e) {
        const auto& p = f.piece(e);
        if (p.size() < 2 || p.front().offset != 0 || p.back().offset != g.length(e))
            throw Error(ErrorKind::InvalidPL, "PL function does not match edge " + std::to_string(e));
        const auto s = f.slopes(e);
        out.add(PointOnGraph::vertex(g.model().edge(e).first), s.front());
        out.add(PointOnGraph::vertex(g.model().edge(e).second), -s.back());
        for (std::size_t i = 1; i < s.size(); ++i)
            out.add(PointOnGraph::on_edge(g, e, p[i].offset), s[i] - s[i - 1]);
    }
    return out;
}

MetricDivisor canonical_divisor_metric(const MetricGraph& g) {
    MetricDivisor out;
    for (Index v = 0; v < g.vertex_count(); ++v) out.add(PointOnGraph::vertex(v), Integer(g.model().valence(v) - 2));
    return out;
}

Integer genus(const MetricGraph& g) { return genus(g.model()); }

bool is_member_metric(const MetricGraph& g, const MetricDivisor& d, const PLFunction& f) {
    return (d + ord_div_metric(g, f)).is_effective();
}

// ---------------------------------------------------------------------------

Refinement refine(const MetricGraph& g, const Integer& q) {
    if (q < 1) throw Error(ErrorKind::InvalidInput, "refinement scale must be positive");
    Refinement r;
    r.metric_ = &g;
    r.scale_ = q;
    Index next = g.vertex_count();
    for (Index v = 0; v < next; ++v) r.points_.push_back(PointOnGraph::vertex(v));
    std::vector<FiniteGraph::Edge> edges;
    for (Index e = 0; e < g.edge_count(); ++e) {
        const Rational steps = g.length(e) * q;
        if (!is_integral(steps))
            throw Error(ErrorKind::NonIntegralRefinement, "edge " + std::to_string(e) + " of length " +
                                                              to_string(g.length(e)) + " is not a multiple of 1/" +
                                                              q.str());
        const auto count = static_cast<Index>(numerator(steps));
        const auto [u, v] = g.model().edge(e);
        std::vector<Index> chain{u};
        for (Index k = 1; k < count; ++k) {
            chain.push_back(next++);
            r.points_.push_back(PointOnGraph::on_edge(g, e, Rational(k) / q));
        }
        chain.push_back(v);
        for (std::size_t k = 1; k < chain.size(); ++k) edges.emplace_back(chain[k - 1], chain[k]);
        r.chains_.push_back(std::move(chain));
    }
    r.graph_ = FiniteGraph::build(next, std::move(edges));
    return r;
}

Index Refinement::vertex_of(const PointOnGraph& x) const {
    if (x.is_vertex()) return x.vertex_id();
    const Rational k = x.offset() * scale_;
    if (!is_integral(k))
        throw Error(ErrorKind::NonIntegralRefinement, "point at offset " + to_string(x.offset()) +
                                                          " is not on the 1/" + scale_.str() + " grid");
    return chains_.at(at(x.edge())).at(static_cast<std::size_t>(numerator(k)));
}

PointOnGraph Refinement::point_of(Index refined_vertex) const { return points_.at(at(refined_vertex)); }

Divisor Refinement::transport(const MetricDivisor& d) const {
    IntVector c = IntVector::Zero(graph_.vertex_count());
    for (const auto& [x, k] : d.terms()) c(vertex_of(x)) += k;
    return Divisor(std::move(c));
}

MetricDivisor Refinement::lift(const Divisor& d) const {
    if (d.size() != graph_.vertex_count()) throw Error(ErrorKind::SizeMismatch, "divisor size");
    MetricDivisor out;
    for (Index v = 0; v < d.size(); ++v) out.add(points_[at(v)], d[v]);
    return out;
}

RationalFunction Refinement::transport(const PLFunction& f) const {
    IntVector values(graph_.vertex_count());
    for (Index e = 0; e < static_cast<Index>(chains_.size()); ++e) {
        for (const auto& b : f.piece(e))
            if (!is_integral(b.offset * scale_))
                throw Error(ErrorKind::NonIntegralRefinement, "breakpoint " + to_string(b.offset) +
                                                                  " is not on the 1/" + scale_.str() + " grid");
        const auto& chain = chains_[at(e)];
        for (std::size_t k = 0; k < chain.size(); ++k) {
            const Rational v = eval_piece(f.piece(e), Rational(Integer(k)) / scale_) * scale_;
            if (!is_integral(v))
                throw Error(ErrorKind::NonIntegralRefinement, "value times " + scale_.str() + " is not an integer");
            values(chain[k]) = numerator(v);
        }
    }
    return RationalFunction(std::move(values));
}

PLFunction Refinement::lift(const RationalFunction& f) const {
    if (f.size() != graph_.vertex_count()) throw Error(ErrorKind::SizeMismatch, "function size");
    std::vector<PLFunction::Piece> pieces;
    for (const auto& chain : chains_) {
        PLFunction::Piece piece;
        for (std::size_t k = 0; k < chain.size(); ++k)
            piece.push_back({Rational(Integer(k)) / scale_, Rational(f[chain[k]]) / scale_});
        pieces.push_back(simplify_piece(piece));
    }
    return PLFunction::build(*metric_, std::move(pieces));
}

Integer common_denominator(const MetricGraph& g, const std::vector<const MetricDivisor*>& divisors) {
    Integer q = 1;
    for (const auto& l : g.lengths()) q = lcm(q, denominator(l));
    for (const auto* d : divisors)
        for (const auto& [x, c] : d->terms())
            if (!x.is_vertex()) q = lcm(q, denominator(x.offset()));
    return q;
}

std::optional<PLFunction> linear_equiv_metric(const MetricGraph& g, const MetricDivisor& d,
                                              const MetricDivisor& d_prime) {
    if (d.degree() != d_prime.degree()) return std::nullopt;
    const Refinement r = refine(g, common_denominator(g, {&d, &d_prime}));
    auto f = linear_equiv(r.graph(), r.transport(d), r.transport(d_prime));
    if (!f) return std::nullopt;
    PLFunction out = r.lift(*f).normalized();
    if (ord_div_metric(g, out) != d - d_prime)
        throw Error(ErrorKind::VerificationFailure, "lifted witness has the wrong divisor");
    return out;
}

// ---------------------------------------------------------------------------

MetricSubgraph MetricSubgraph::build(const MetricGraph& g, std::vector<std::vector<Interval>> intervals,
                                     std::set<Index> vertices) {
    const Index ne = g.edge_count();
    if (intervals.empty()) intervals.resize(at(ne));
    if (static_cast<Index>(intervals.size()) != ne) throw Error(ErrorKind::SizeMismatch, "one interval list per edge");
    for (Index v : vertices)
        if (v < 0 || v >= g.vertex_count()) throw Error(ErrorKind::IndexOutOfRange, "subgraph vertex out of range");
    MetricSubgraph out;
    out.intervals_.resize(at(ne));
    for (Index e = 0; e < ne; ++e) {
        auto list = std::move(intervals[at(e)]);
        const Rational& len = g.length(e);
        for (auto& [a, b] : list) {
            a = std::max(a, Rational(0));
            b = std::min(b, len);
            if (a > b) throw Error(ErrorKind::InvalidInput, "empty interval on edge " + std::to_string(e));
        }
        std::sort(list.begin(), list.end());
        std::vector<Interval> merged;
        for (const auto& iv : list) {
            if (!merged.empty() && iv.first <= merged.back().second)
                merged.back().second = std::max(merged.back().second, iv.second);
            else
                merged.push_back(iv);
        }
        std::vector<Interval> kept;
        for (const auto& [a, b] : merged) {
            if (a == 0) vertices.insert(g.model().edge(e).first);
            if (b == len) vertices.insert(g.model().edge(e).second);
            if (a == b && (a == 0 || a == len)) continue;
            kept.emplace_back(a, b);
        }
        out.intervals_[at(e)] = std::move(kept);
    }
    out.vertices_ = std::move(vertices);
    return out;
}

MetricSubgraph MetricSubgraph::points(const MetricGraph& g, const std::vector<PointOnGraph>& xs) {
    std::vector<std::vector<Interval>> intervals(at(g.edge_count()));
    std::set<Index> vertices;
    for (const auto& x : xs) {
        if (x.is_vertex()) vertices.insert(x.vertex_id());
        else intervals[at(x.edge())].emplace_back(x.offset(), x.offset());
    }
    return build(g, std::move(intervals), std::move(vertices));
}

MetricSubgraph MetricSubgraph::complement_of_open_interval(const MetricGraph& g, Index e, const Rational& a,
                                                           const Rational& b) {
    check_edge(g, e);
    std::vector<std::vector<Interval>> intervals(at(g.edge_count()));
    for (Index i = 0; i < g.edge_count(); ++i) {
        if (i == e) {
            intervals[at(i)] = {{Rational(0), a}, {b, g.length(i)}};
        } else {
            intervals[at(i)] = {{Rational(0), g.length(i)}};
        }
    }
    std::set<Index> vertices;
    for (Index v = 0; v < g.vertex_count(); ++v) vertices.insert(v);
    return build(g, std::move(intervals), std::move(vertices));
}

bool MetricSubgraph::empty() const {
    return vertices_.empty() &&
           std::all_of(intervals_.begin(), intervals_.end(), [](const auto& list) { return list.empty(); });
}

bool MetricSubgraph::is_whole(const MetricGraph& g) const {
    for (Index e = 0; e < g.edge_count(); ++e) {
        const auto& list = intervals_[at(e)];
        if (list.size() != 1 || list[0].first != 0 || list[0].second != g.length(e)) return false;
    }
    return true;
}

bool MetricSubgraph::contains(const MetricGraph& g, const PointOnGraph& x) const {
    (void)g;
    if (x.is_vertex()) return vertices_.count(x.vertex_id()) > 0;
    for (const auto& [a, b] : intervals_.at(at(x.edge())))
        if (a <= x.offset() && x.offset() <= b) return true;
    return false;
}

std::vector<PointOnGraph> MetricSubgraph::boundary(const MetricGraph& g) const {
    std::vector<PointOnGraph> out;
    std::set<Index> open_vertices;
    for (Index e = 0; e < g.edge_count(); ++e) {
        const auto& list = intervals_[at(e)];
        const auto [u, v] = g.model().edge(e);
        if (list.empty() || list.front().first != 0) open_vertices.insert(u);
        if (list.empty() || list.back().second != g.length(e)) open_vertices.insert(v);
        for (const auto& [a, b] : list) {
            if (a > 0) out.push_back(PointOnGraph::on_edge(g, e, a));
            if (b < g.length(e)) out.push_back(PointOnGraph::on_edge(g, e, b));
        }
    }
    for (Index v : vertices_)
        if (open_vertices.count(v)) out.push_back(PointOnGraph::vertex(v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------------

PLFunction cf_move(const MetricGraph& g, const MetricSubgraph& sub, const Rational& l) {
    if (sub.empty()) throw Error(ErrorKind::EmptySubgraph, "firing subgraph is empty");
    if (sub.is_whole(g)) throw Error(ErrorKind::EmptySubgraph, "firing subgraph is the whole graph");
    if (l <= 0) throw Error(ErrorKind::InvalidInput, "firing distance must be positive");
    const FiniteGraph& m = g.model();
    const Index nv = g.vertex_count();

    // Vertex distances to the subgraph.
    std::vector<std::optional<Rational>> dist(at(nv));
    auto relax = [&](Index v, const Rational& d) {
        if (!dist[at(v)] || d < *dist[at(v)]) dist[at(v)] = d;
    };
    for (Index v : sub.vertices()) relax(v, Rational(0));
    for (Index e = 0; e < g.edge_count(); ++e)
        for (const auto& [a, b] : sub.intervals()[at(e)]) {
            relax(m.edge(e).first, a);
            relax(m.edge(e).second, g.length(e) - b);
        }
    std::vector<bool> done(at(nv), false);
    for (;;) {
        Index best = -1;
        for (Index v = 0; v < nv; ++v)
            if (!done[at(v)] && dist[at(v)] && (best < 0 || *dist[at(v)] < *dist[at(best)])) best = v;
        if (best < 0) break;
        done[at(best)] = true;
        for (const auto& [w, e] : m.incidence(best)) relax(w, *dist[at(best)] + g.length(e));
    }

    // On each edge the distance is a min of lines of slope +-1 and clamped intervals,
    // so every breakpoint of CF is a pairwise crossing of the lines involved.
    std::vector<PLFunction::Piece> pieces;
    for (Index e = 0; e < g.edge_count(); ++e) {
        const Rational& len = g.length(e);
        const auto [u, v] = m.edge(e);
        const auto& list = sub.intervals()[at(e)];
        std::vector<std::pair<int, Rational>> lines{{0, Rational(0)}, {0, l}};
        lines.emplace_back(1, *dist[at(u)]);
        lines.emplace_back(-1, len + *dist[at(v)]);
        for (const auto& [a, b] : list) {
            lines.emplace_back(-1, a);
            lines.emplace_back(1, -b);
        }
        std::vector<Rational> ts{Rational(0), len};
        for (const auto& [a, b] : list) {
            ts.push_back(a);
            ts.push_back(b);
        }
        for (std::size_t i = 0; i < lines.size(); ++i)
            for (std::size_t j = i + 1; j < lines.size(); ++j) {
                if (lines[i].first == lines[j].first) continue;
                const Rational t = (lines[j].second - lines[i].second) / Rational(lines[i].first - lines[j].first);
                if (t > 0 && t < len) ts.push_back(t);
            }
        std::sort(ts.begin(), ts.end());
        ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
        auto distance = [&](const Rational& t) {
            Rational d = std::min<Rational>(t + *dist[at(u)], len - t + *dist[at(v)]);
            for (const auto& [a, b] : list) {
                if (t < a) d = std::min<Rational>(d, a - t);
                else if (t > b) d = std::min<Rational>(d, t - b);
                else d = 0;
            }
            return d;
        };
        PLFunction::Piece piece;
        for (const auto& t : ts) piece.push_back({t, -std::min(l, distance(t))});
        pieces.push_back(simplify_piece(piece));
    }
    return PLFunction::build(g, std::move(pieces));
}

Rational firing_distance(const MetricGraph& g, const MetricDivisor& e, const MetricSubgraph& sub) {
    std::vector<std::vector<Rational>> marks(at(g.edge_count()));
    for (Index i = 0; i < g.edge_count(); ++i) {
        marks[at(i)] = {Rational(0), g.length(i)};
        for (const auto& [a, b] : sub.intervals()[at(i)]) {
            marks[at(i)].push_back(a);
            marks[at(i)].push_back(b);
        }
    }
    for (const auto& [x, c] : e.terms())
        if (!x.is_vertex()) marks[at(x.edge())].push_back(x.offset());
    std::optional<Rational> gap;
    for (auto& list : marks) {
        std::sort(list.begin(), list.end());
        for (std::size_t k = 1; k < list.size(); ++k) {
            const Rational d = list[k] - list[k - 1];
            if (d > 0 && (!gap || d < *gap)) gap = d;
        }
    }
    return *gap / 3;
}

bool can_fire(const MetricGraph& g, const MetricDivisor& e, const MetricSubgraph& sub) {
    return can_fire(g, e, sub, firing_distance(g, e, sub));
}

bool can_fire(const MetricGraph& g, const MetricDivisor& e, const MetricSubgraph& sub, const Rational& l) {
    return (e + ord_div_metric(g, cf_move(g, sub, l))).is_effective();
}

// ---------------------------------------------------------------------------

namespace {

// Support points of an effective divisor and the connected components of their complement.
struct SupportComponents {
    std::vector<PointOnGraph> support;
    std::vector<Integer> chips;
    Index component_count = 0;
    // directions[s][c]: germs at support point s pointing into component c.
    std::vector<std::vector<Index>> directions;
    std::vector<std::vector<std::tuple<Index, Rational, Rational>>> segments;

    [[nodiscard]] Index node_count() const { return static_cast<Index>(support.size()) + component_count; }
};

SupportComponents support_components(const MetricGraph& g, const MetricDivisor& e) {
    SupportComponents sc;
    sc.support = e.support();
    for (const auto& x : sc.support) sc.chips.push_back(e(x));
    const Index ns = static_cast<Index>(sc.support.size());
    std::map<PointOnGraph, Index> s_index;
    for (Index i = 0; i < ns; ++i) s_index[sc.support[at(i)]] = i;

    const FiniteGraph& m = g.model();
    const Index nv = g.vertex_count();
    // Union-find over vertices [0, nv) and open segments [nv, ...).
    std::vector<Index> parent(at(nv));
    std::iota(parent.begin(), parent.end(), Index(0));
    std::function<Index(Index)> find = [&](Index x) {
        while (parent[at(x)] != x) x = parent[at(x)] = parent[at(parent[at(x)])];
        return x;
    };
    struct Segment {
        Index edge;
        Rational a, b;
        std::optional<Index> left_s, right_s;
    };
    std::vector<Segment> segs;
    for (Index e_id = 0; e_id < g.edge_count(); ++e_id) {
        const auto [u, v] = m.edge(e_id);
        std::vector<Rational> cuts{Rational(0)};
        for (const auto& x : sc.support)
            if (!x.is_vertex() && x.edge() == e_id) cuts.push_back(x.offset());
        cuts.push_back(g.length(e_id));
        for (std::size_t k = 1; k < cuts.size(); ++k) {
            Segment s{e_id, cuts[k - 1], cuts[k], std::nullopt, std::nullopt};
            const PointOnGraph left = PointOnGraph::on_edge(g, e_id, s.a);
            const PointOnGraph right = PointOnGraph::on_edge(g, e_id, s.b);
            const Index node = static_cast<Index>(parent.size());
            parent.push_back(node);
            if (auto it = s_index.find(left); it != s_index.end()) s.left_s = it->second;
            else parent[at(find(node))] = find(u);
            if (auto it = s_index.find(right); it != s_index.end()) s.right_s = it->second;
            else parent[at(find(node))] = find(v);
            segs.push_back(std::move(s));
        }
    }
    std::map<Index, Index> component_of_root;
    auto component = [&](Index node) {
        const Index root = find(node);
        auto [it, inserted] = component_of_root.emplace(root, sc.component_count);
        if (inserted) {
            ++sc.component_count;
            sc.segments.emplace_back();
        }
        return it->second;
    };
    sc.directions.assign(at(ns), {});
    std::vector<Index> seg_component;
    for (std::size_t k = 0; k < segs.size(); ++k) seg_component.push_back(component(nv + static_cast<Index>(k)));
    for (auto& d : sc.directions) d.assign(at(sc.component_count), 0);
    for (std::size_t k = 0; k < segs.size(); ++k) {
        const Index c = seg_component[k];
        sc.segments[at(c)].emplace_back(segs[k].edge, segs[k].a, segs[k].b);
        if (segs[k].left_s) ++sc.directions[at(*segs[k].left_s)][at(c)];
        if (segs[k].right_s) ++sc.directions[at(*segs[k].right_s)][at(c)];
    }
    return sc;
}

// Node ids: support points first, then components.
using NodeSet = std::vector<bool>;

bool closed_and_firing(const SupportComponents& sc, const NodeSet& chosen) {
    const Index ns = static_cast<Index>(sc.support.size());
    for (Index s = 0; s < ns; ++s) {
        Integer outward = 0;
        for (Index c = 0; c < sc.component_count; ++c) {
            const Index dirs = sc.directions[at(s)][at(c)];
            if (dirs == 0) continue;
            const bool in_c = chosen[at(ns + c)];
            if (in_c && !chosen[at(s)]) return false;
            if (!in_c) outward += dirs;
        }
        if (chosen[at(s)] && sc.chips[at(s)] < outward) return false;
    }
    return true;
}

// Largest closed firing node set avoiding `excluded`.
NodeSet maximal_firing_nodes(const SupportComponents& sc, Index excluded) {
    const Index ns = static_cast<Index>(sc.support.size());
    NodeSet chosen(at(sc.node_count()), true);
    chosen[at(excluded)] = false;
    if (excluded < ns)
        for (Index c = 0; c < sc.component_count; ++c)
            if (sc.directions[at(excluded)][at(c)] > 0) chosen[at(ns + c)] = false;
    for (bool changed = true; changed;) {
        changed = false;
        for (Index s = 0; s < ns; ++s) {
            if (!chosen[at(s)]) continue;
            Integer outward = 0;
            for (Index k = 0; k < sc.component_count; ++k)
                if (!chosen[at(ns + k)]) outward += sc.directions[at(s)][at(k)];
            if (sc.chips[at(s)] >= outward) continue;
            chosen[at(s)] = false;
            for (Index c = 0; c < sc.component_count; ++c)
                if (sc.directions[at(s)][at(c)] > 0) chosen[at(ns + c)] = false;
            changed = true;
        }
    }
    return chosen;
}

MetricSubgraph to_subgraph(const MetricGraph& g, const SupportComponents& sc, const NodeSet& chosen) {
    const Index ns = static_cast<Index>(sc.support.size());
    std::vector<std::vector<MetricSubgraph::Interval>> intervals(at(g.edge_count()));
    std::set<Index> vertices;
    for (Index s = 0; s < ns; ++s) {
        if (!chosen[at(s)]) continue;
        const auto& x = sc.support[at(s)];
        if (x.is_vertex()) vertices.insert(x.vertex_id());
        else intervals[at(x.edge())].emplace_back(x.offset(), x.offset());
    }
    for (Index c = 0; c < sc.component_count; ++c) {
        if (!chosen[at(ns + c)]) continue;
        for (const auto& [e, a, b] : sc.segments[at(c)]) intervals[at(e)].emplace_back(a, b);
    }
    return MetricSubgraph::build(g, std::move(intervals), std::move(vertices));
}

}  // namespace

std::vector<MetricSubgraph> firing_subgraphs_metric(const MetricGraph& g, const MetricDivisor& e, Index max_nodes) {
    if (!e.is_effective()) throw Error(ErrorKind::NotMember, "divisor is not effective");
    const SupportComponents sc = support_components(g, e);
    const Index n = sc.node_count();
    if (n > max_nodes || n > 62)
        throw Error(ErrorKind::BudgetExceeded, std::to_string(n) + " candidate nodes exceed the budget of " +
                                                   std::to_string(max_nodes));
    std::vector<MetricSubgraph> out;
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t mask = 1; mask < full; ++mask) {
        NodeSet chosen(at(n));
        for (Index i = 0; i < n; ++i) chosen[at(i)] = (mask >> i) & 1U;
        if (!closed_and_firing(sc, chosen)) continue;
        out.push_back(to_subgraph(g, sc, chosen));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_extremal_metric(const MetricGraph& g, const MetricDivisor& d, const PLFunction& f) {
    const MetricDivisor e = d + ord_div_metric(g, f);
    if (!e.is_effective()) throw Error(ErrorKind::NotMember, "D + div(f) is not effective");
    const SupportComponents sc = support_components(g, e);
    const Index n = sc.node_count();
    // Every proper firing subgraph misses some node and so lies inside that node's maximal set.
    std::vector<NodeSet> maximal;
    for (Index x = 0; x < n; ++x) {
        NodeSet m = maximal_firing_nodes(sc, x);
        if (std::find(m.begin(), m.end(), true) != m.end()) maximal.push_back(std::move(m));
    }
    for (std::size_t i = 0; i < maximal.size(); ++i)
        for (std::size_t j = i; j < maximal.size(); ++j) {
            bool covers = true;
            for (Index x = 0; x < n && covers; ++x) covers = maximal[i][at(x)] || maximal[j][at(x)];
            if (covers) return false;
        }
    return true;
}

MetricGraph theta_metric(const Rational& length) {
    return MetricGraph::build(theta_graph(), {length, length, length});
}

MetricGraph complete_metric(Index vertex_count, const Rational& length) {
    const FiniteGraph k = complete_graph(vertex_count);
    return MetricGraph::build(k, std::vector<Rational>(at(k.edge_count()), length));
}

}  // namespace canonring
