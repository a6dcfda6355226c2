// Copyright (c) canonring contributors.
// SPDX-License-Identifier: Apache-2.0
#include "canonring/linear_system.hpp"

#include <algorithm>
#include <deque>

#include "canonring/linalg.hpp"

namespace canonring {

namespace {

void check_size(Index expected, Index got, const char* what) {
    if (expected != got)
        throw Error(ErrorKind::SizeMismatch, std::string(what) + " has " + std::to_string(got) +
                                                 " entries, expected " + std::to_string(expected));
}

// Non-loop neighbours with multiplicity.
struct Neighbourhood {
    std::vector<std::vector<std::pair<Index, Index>>> adj;
    std::vector<Index> degree;
};

Neighbourhood neighbourhood(const FiniteGraph& g) {
    Neighbourhood nb;
    const auto n = static_cast<std::size_t>(g.vertex_count());
    nb.adj.assign(n, {});
    nb.degree.assign(n, 0);
    for (Index v = 0; v < g.vertex_count(); ++v) {
        std::vector<Index> nbrs;
        for (const auto& [w, e] : g.incidence(v)) nbrs.push_back(w);
        std::sort(nbrs.begin(), nbrs.end());
        for (std::size_t i = 0; i < nbrs.size();) {
            std::size_t j = i;
            while (j < nbrs.size() && nbrs[j] == nbrs[i]) ++j;
            nb.adj[static_cast<std::size_t>(v)].emplace_back(nbrs[i], static_cast<Index>(j - i));
            i = j;
        }
        nb.degree[static_cast<std::size_t>(v)] = g.outdegree(v);
    }
    return nb;
}

// Depth-first preorder from vertex 0: long paths are completed before the
// scan branches elsewhere, so their constraints close early.
std::vector<Index> scan_order(const FiniteGraph& g) {
    std::vector<Index> order;
    std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
    std::vector<Index> stack{0};
    while (!stack.empty()) {
        Index v = stack.back();
        stack.pop_back();
        if (seen[static_cast<std::size_t>(v)]) continue;
        seen[static_cast<std::size_t>(v)] = true;
        order.push_back(v);
        const auto& inc = g.incidence(v);
        for (auto it = inc.rbegin(); it != inc.rend(); ++it)
            if (!seen[static_cast<std::size_t>(it->first)]) stack.push_back(it->first);
    }
    return order;
}

template <typename T>
T floor_div(const T& a, const T& b) {
    T q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

template <typename T>
T ceil_div(const T& a, const T& b) {
    T q = a / b;
    if ((a % b != 0) && ((a < 0) == (b < 0))) q += 1;
    return q;
}

// Depth-first lattice scan of {x : laplacian*x + rhs >= 0, x_0 = 0, lo <= x <= hi}.
// Vertices are assigned in depth-first order; each assignment range is narrowed by the
// vertex's own constraint and by the constraints of already-assigned neighbours,
// with unassigned neighbours replaced by their upper bounds.
template <typename T>
class LatticeScan {
  public:
    LatticeScan(const FiniteGraph& g, std::vector<T> rhs, std::vector<T> lo, std::vector<T> hi, std::size_t cap)
        : nb_(neighbourhood(g)), order_(scan_order(g)), rhs_(std::move(rhs)), lo_(std::move(lo)), hi_(std::move(hi)),
          cap_(cap) {
        const auto n = order_.size();
        value_.assign(n, T(0));
        assigned_.assign(n, false);
    }

    std::vector<std::vector<T>> run() {
        descend(0);
        return std::move(found_);
    }

  private:
    T effective(Index y) const {
        const auto i = static_cast<std::size_t>(y);
        return assigned_[i] ? value_[i] : hi_[i];
    }

    // Slack of y's constraint with unassigned neighbours (other than `skip`) at their upper bounds.
    T optimistic_slack(Index y, Index skip) const {
        const auto iy = static_cast<std::size_t>(y);
        T s = rhs_[iy];
        for (const auto& [z, c] : nb_.adj[iy]) {
            if (z == skip) continue;
            s += T(c) * (effective(z) - value_[iy]);
        }
        return s;
    }

    void descend(std::size_t depth) {
        if (depth == order_.size()) {
            if (found_.size() >= cap_)
                throw Error(ErrorKind::BudgetExceeded,
                            "more than " + std::to_string(cap_) + " lattice points; raise the element budget");
            found_.push_back(value_);
            return;
        }
        const Index v = order_[depth];
        const auto iv = static_cast<std::size_t>(v);
        T low = lo_[iv];
        T high = hi_[iv];
        if (nb_.degree[iv] > 0) {
            T s = rhs_[iv];
            for (const auto& [y, c] : nb_.adj[iv]) s += T(c) * effective(y);
            T bound = floor_div(s, T(nb_.degree[iv]));
            if (bound < high) high = bound;
        } else if (rhs_[iv] < 0) {
            return;
        }
        for (const auto& [y, c] : nb_.adj[iv]) {
            const auto iy = static_cast<std::size_t>(y);
            if (!assigned_[iy]) continue;
            // c*(x_v - x_y) + slack_without_v >= 0
            T rest = optimistic_slack(y, v);
            T bound = value_[iy] + ceil_div(T(-rest), T(c));
            if (bound > low) low = bound;
        }
        assigned_[iv] = true;
        for (T x = low; x <= high; ++x) {
            value_[iv] = x;
            descend(depth + 1);
        }
        assigned_[iv] = false;
        value_[iv] = T(0);
    }

    Neighbourhood nb_;
    std::vector<Index> order_;
    std::vector<T> rhs_;
    std::vector<T> lo_;
    std::vector<T> hi_;
    std::size_t cap_;
    std::vector<T> value_;
    std::vector<bool> assigned_;
    std::vector<std::vector<T>> found_;
};

// Solves laplacian*x = b (deg b == 0) with x_0 = 0 over the rationals.
class SliceSolver {
  public:
    explicit SliceSolver(const FiniteGraph& g) : n_(g.vertex_count()) {
        if (n_ > 1) {
            RatMatrix lap = laplacian<Integer>(g).cast<Rational>();
            // Reduced Laplacian is invertible exactly when the graph is connected;
            // this is what makes every slice polytope bounded.
            reduced_inverse_ = exact_inverse<Rational>(lap.bottomRightCorner(n_ - 1, n_ - 1));
        }
    }

    RatVector solve(const IntVector& b) const {
        RatVector x = RatVector::Zero(n_);
        if (n_ > 1) x.tail(n_ - 1) = reduced_inverse_ * b.tail(n_ - 1).cast<Rational>();
        return x;
    }

  private:
    Index n_;
    RatMatrix reduced_inverse_;
};

template <typename T>
std::vector<std::vector<T>> scan(const FiniteGraph& g, const IntVector& rhs, const std::vector<Integer>& lo,
                                 const std::vector<Integer>& hi, std::size_t cap) {
    const auto n = static_cast<std::size_t>(g.vertex_count());
    std::vector<T> r(n), l(n), h(n);
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = static_cast<T>(rhs(static_cast<Index>(i)));
        l[i] = static_cast<T>(lo[i]);
        h[i] = static_cast<T>(hi[i]);
    }
    return LatticeScan<T>(g, std::move(r), std::move(l), std::move(h), cap).run();
}

RgdElement element_from_slice(IntVector slice, const Integer& m) {
    RgdElement out;
    out.function = RationalFunction(slice).normalized();
    out.degree = m;
    out.slice = std::move(slice);
    return out;
}

}  // namespace

bool is_member(const FiniteGraph& g, const Divisor& d, const RationalFunction& f, const Integer& m) {
    check_size(g.vertex_count(), d.size(), "divisor");
    return (m * d + ord_and_div(g, f)).is_effective();
}

RgdElement make_element(const FiniteGraph& g, const Divisor& d, const RationalFunction& f, const Integer& m) {
    if (!is_member(g, d, f, m)) throw Error(ErrorKind::NotMember, "div(f) + m*D is not effective");
    return element_from_slice(IntVector(f.values().array() - f[0]), m);
}

std::vector<RatVector> slice_vertices(const FiniteGraph& g, const Divisor& d, const Integer& m) {
    check_size(g.vertex_count(), d.size(), "divisor");
    const Integer deg = m * d.degree();
    if (deg < 0) return {};
    SliceSolver solver(g);
    const IntVector base = -(m * d).coeffs();
    if (deg == 0) return {solver.solve(base)};
    std::vector<RatVector> out;
    for (Index j = 0; j < g.vertex_count(); ++j) {
        IntVector b = base;
        b(j) += deg;
        out.push_back(solver.solve(b));
    }
    return out;
}

std::vector<RgdElement> rgd_enumerate(const FiniteGraph& g, const Divisor& d, const Integer& m,
                                      const EnumerationOptions& opts) {
    check_size(g.vertex_count(), d.size(), "divisor");
    if (m < 0) throw Error(ErrorKind::InvalidInput, "negative degree");
    const auto verts = slice_vertices(g, d, m);
    if (verts.empty()) return {};
    const Index n = g.vertex_count();
    const IntVector rhs = (m * d).coeffs();

    if (m * d.degree() == 0) {
        // The slice is the single point solving laplacian*x = -m*d, if integral.
        const RatVector& v = verts.front();
        IntVector x(n);
        for (Index i = 0; i < n; ++i) {
            if (!is_integral(v(i))) return {};
            x(i) = numerator(v(i));
        }
        return {element_from_slice(std::move(x), m)};
    }

    // Exact per-coordinate LP bounds: extremes of a linear form over a simplex
    // are attained at its vertices.
    std::vector<Integer> lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n));
    Integer magnitude = rhs.size() ? rhs.cwiseAbs().maxCoeff() : Integer(0);
    for (Index i = 0; i < n; ++i) {
        Rational mn = verts[0](i), mx = verts[0](i);
        for (const auto& v : verts) {
            mn = std::min(mn, v(i));
            mx = std::max(mx, v(i));
        }
        lo[static_cast<std::size_t>(i)] = ceil(mn);
        hi[static_cast<std::size_t>(i)] = floor(mx);
        magnitude = std::max({magnitude, Integer(abs(lo[static_cast<std::size_t>(i)])),
                              Integer(abs(hi[static_cast<std::size_t>(i)]))});
    }
    // Partial sums stay below (max degree + 1) * magnitude; keep a wide margin for int64.
    const Integer worst = magnitude * Integer(4 * (g.edge_count() + 1));
    std::vector<IntVector> points;
    if (worst < (Integer(1) << 60)) {
        for (auto& p : scan<std::int64_t>(g, rhs, lo, hi, opts.max_elements)) {
            IntVector x(n);
            for (Index i = 0; i < n; ++i) x(i) = p[static_cast<std::size_t>(i)];
            points.push_back(std::move(x));
        }
    } else {
        for (auto& p : scan<Integer>(g, rhs, lo, hi, opts.max_elements)) {
            IntVector x(n);
            for (Index i = 0; i < n; ++i) x(i) = p[static_cast<std::size_t>(i)];
            points.push_back(std::move(x));
        }
    }
    std::vector<RgdElement> out;
    out.reserve(points.size());
    for (auto& p : points) out.push_back(element_from_slice(std::move(p), m));
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------

FiringSubset::FiringSubset(Index vertex_count, const std::vector<Index>& members)
    : in_(static_cast<std::size_t>(vertex_count), false) {
    for (Index v : members) {
        if (v < 0 || v >= vertex_count) throw Error(ErrorKind::IndexOutOfRange, "vertex " + std::to_string(v));
        in_[static_cast<std::size_t>(v)] = true;
    }
    const auto count = std::count(in_.begin(), in_.end(), true);
    if (count == 0 || count == vertex_count)
        throw Error(ErrorKind::EmptyOrFullSubset, "firing subset must be proper and nonempty");
}

FiringSubset FiringSubset::from_mask(Index vertex_count, std::uint64_t mask) {
    std::vector<Index> members;
    for (Index v = 0; v < vertex_count; ++v)
        if (mask >> v & 1U) members.push_back(v);
    return FiringSubset(vertex_count, members);
}

std::vector<Index> FiringSubset::members() const {
    std::vector<Index> out;
    for (std::size_t i = 0; i < in_.size(); ++i)
        if (in_[i]) out.push_back(static_cast<Index>(i));
    return out;
}

RationalFunction cf_move(const FiringSubset& subset) {
    IntVector x(subset.vertex_count());
    for (Index v = 0; v < subset.vertex_count(); ++v) x(v) = subset.contains(v) ? 0 : -1;
    return RationalFunction(std::move(x));
}

bool can_fire(const FiniteGraph& g, const Divisor& e, const FiringSubset& subset) {
    check_size(g.vertex_count(), e.size(), "divisor");
    check_size(g.vertex_count(), subset.vertex_count(), "firing subset");
    return (e + ord_and_div(g, cf_move(subset))).is_effective();
}

std::vector<bool> maximal_firing_subset(const FiniteGraph& g, const Divisor& e, std::vector<bool> allowed) {
    const auto n = static_cast<std::size_t>(g.vertex_count());
    std::vector<Index> outside(n, 0);
    for (std::size_t v = 0; v < n; ++v)
        for (const auto& [w, id] : g.incidence(static_cast<Index>(v)))
            if (!allowed[static_cast<std::size_t>(w)]) ++outside[v];
    // Dhar-style peeling: a vertex that cannot pay for its outgoing edges can
    // never belong to a firing subset of the current set.
    std::deque<Index> queue;
    for (std::size_t v = 0; v < n; ++v)
        if (allowed[v] && e[static_cast<Index>(v)] < outside[v]) queue.push_back(static_cast<Index>(v));
    while (!queue.empty()) {
        const Index v = queue.front();
        queue.pop_front();
        if (!allowed[static_cast<std::size_t>(v)]) continue;
        allowed[static_cast<std::size_t>(v)] = false;
        for (const auto& [w, id] : g.incidence(v)) {
            const auto iw = static_cast<std::size_t>(w);
            ++outside[iw];
            if (allowed[iw] && e[w] < outside[iw]) queue.push_back(w);
        }
    }
    return allowed;
}

std::optional<std::pair<FiringSubset, FiringSubset>> covering_firing_pair(const FiniteGraph& g, const Divisor& e) {
    check_size(g.vertex_count(), e.size(), "divisor");
    const Index n = g.vertex_count();
    if (n < 2) return std::nullopt;
    // Firing subsets are closed under union, so a covering pair exists iff the
    // maximal firing subsets avoiding some x and some y cover V.
    std::vector<std::vector<bool>> avoiding;
    for (Index x = 0; x < n; ++x) {
        std::vector<bool> allowed(static_cast<std::size_t>(n), true);
        allowed[static_cast<std::size_t>(x)] = false;
        avoiding.push_back(maximal_firing_subset(g, e, std::move(allowed)));
    }
    auto to_subset = [&](const std::vector<bool>& s) {
        std::vector<Index> members;
        for (Index v = 0; v < n; ++v)
            if (s[static_cast<std::size_t>(v)]) members.push_back(v);
        return FiringSubset(n, members);
    };
    for (Index x = 0; x < n; ++x) {
        const auto& a = avoiding[static_cast<std::size_t>(x)];
        if (std::none_of(a.begin(), a.end(), [](bool b) { return b; })) continue;
        for (Index y = x + 1; y < n; ++y) {
            const auto& b = avoiding[static_cast<std::size_t>(y)];
            bool covers = true;
            for (Index v = 0; v < n && covers; ++v) covers = a[static_cast<std::size_t>(v)] || b[static_cast<std::size_t>(v)];
            if (covers && std::any_of(b.begin(), b.end(), [](bool t) { return t; }))
                return std::make_pair(to_subset(a), to_subset(b));
        }
    }
    return std::nullopt;
}

std::vector<FiringSubset> firing_subsets(const FiniteGraph& g, const Divisor& e) {
    check_size(g.vertex_count(), e.size(), "divisor");
    const Index n = g.vertex_count();
    if (n > kMaxExhaustiveVertices)
        throw Error(ErrorKind::BudgetExceeded, "exhaustive firing-subset scan is capped at " +
                                                   std::to_string(kMaxExhaustiveVertices) + " vertices");
    std::vector<FiringSubset> out;
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t mask = 1; mask < full; ++mask) {
        bool fires = true;
        for (Index v = 0; v < n && fires; ++v) {
            const bool in = mask >> v & 1U;
            Integer delta = 0;
            for (const auto& [w, id] : g.incidence(v)) {
                const bool win = mask >> w & 1U;
                if (in && !win) delta -= 1;
                if (!in && win) delta += 1;
            }
            fires = e[v] + delta >= 0;
        }
        if (fires) out.push_back(FiringSubset::from_mask(n, mask));
    }
    return out;
}

bool is_extremal(const FiniteGraph& g, const Divisor& d, const RationalFunction& f, const Integer& m) {
    check_size(g.vertex_count(), f.size(), "rational function");
    const Divisor e = m * d + ord_and_div(g, f);
    if (!e.is_effective()) throw Error(ErrorKind::NotMember, "f is not in R(G, mD)");
    return !covering_firing_pair(g, e).has_value();
}

std::vector<RgdElement> extremals(const FiniteGraph& g, const Divisor& d, const Integer& m,
                                  const EnumerationOptions& opts) {
    std::vector<RgdElement> out;
    for (auto& el : rgd_enumerate(g, d, m, opts))
        if (is_extremal(g, d, el.function, m)) out.push_back(std::move(el));
    return out;
}

// ---------------------------------------------------------------------------

RationalFunction oplus(const RationalFunction& f, const RationalFunction& g) {
    check_size(f.size(), g.size(), "rational function");
    return RationalFunction(IntVector(f.values().cwiseMax(g.values())));
}

RationalFunction odot(const RationalFunction& f, const RationalFunction& g) {
    check_size(f.size(), g.size(), "rational function");
    return RationalFunction(IntVector(f.values() + g.values()));
}

RationalFunction scale(const Integer& c, const RationalFunction& f) {
    return RationalFunction(IntVector(f.values().array() + c));
}

RgdElement odot(const RgdElement& f, const RgdElement& g) {
    check_size(f.slice.size(), g.slice.size(), "rational function");
    return element_from_slice(IntVector(f.slice + g.slice), f.degree + g.degree);
}

}  // namespace canonring
