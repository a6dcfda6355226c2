// Copyright (c) canonring contributors.
// SPDX-License-Identifier: Apache-2.0
#include "canonring/generators.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <set>

#include "canonring/linalg.hpp"

namespace canonring {

namespace {

struct LexLess {
    bool operator()(const IntVector& a, const IntVector& b) const {
        return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
    }
};

Integer height(const IntVector& slice_point) { return slice_point(slice_point.size() - 1); }

// Records which vertices a shifted product touches, i.e. where f - p attains its minimum.
struct Coverage {
    explicit Coverage(Index n) : covered(static_cast<std::size_t>(n), false), remaining(n) {}

    // Returns the shift when p touches at least one new vertex.
    std::optional<Integer> add(const IntVector& f, const IntVector& p) {
        const IntVector diff = f - p;
        const Integer c = diff.minCoeff();
        bool fresh = false;
        for (Index x = 0; x < diff.size(); ++x) {
            if (diff(x) != c || covered[static_cast<std::size_t>(x)]) continue;
            covered[static_cast<std::size_t>(x)] = true;
            --remaining;
            fresh = true;
        }
        if (!fresh) return std::nullopt;
        return c;
    }

    [[nodiscard]] bool complete() const { return remaining == 0; }

    std::vector<bool> covered;
    Index remaining;
};

}  // namespace

// ---------------------------------------------------------------------------

bool MonoidCone::contains(const IntVector& point) const {
    if (point.size() != vertex_count + 1) throw Error(ErrorKind::SizeMismatch, "cone point dimension");
    if (point(vertex_count) < 0) return false;
    const IntVector image = constraints * point;
    return (image.array() >= 0).all();
}

bool MonoidCone::contains_slice(const IntVector& point) const {
    if (point.size() != vertex_count) throw Error(ErrorKind::SizeMismatch, "slice point dimension");
    IntVector full(vertex_count + 1);
    full(0) = 0;
    full.tail(vertex_count) = point;
    return contains(full);
}

IntVector MonoidCone::to_slice(const RgdElement& el) const {
    if (el.slice.size() != vertex_count) throw Error(ErrorKind::SizeMismatch, "element size");
    IntVector out(vertex_count);
    out.head(vertex_count - 1) = el.slice.tail(vertex_count - 1);
    out(vertex_count - 1) = el.degree;
    return out;
}

RgdElement MonoidCone::from_slice(const IntVector& point) const {
    RgdElement el;
    el.slice = IntVector::Zero(vertex_count);
    el.slice.tail(vertex_count - 1) = point.head(vertex_count - 1);
    el.degree = height(point);
    el.function = RationalFunction(el.slice).normalized();
    return el;
}

MonoidCone graded_cone(const FiniteGraph& g, const Divisor& d) {
    const Index n = g.vertex_count();
    if (d.size() != n) throw Error(ErrorKind::SizeMismatch, "divisor size");
    MonoidCone cone;
    cone.vertex_count = n;
    cone.constraints.resize(n, n + 1);
    cone.constraints.leftCols(n) = laplacian<Integer>(g);
    cone.constraints.col(n) = d.coeffs();
    cone.lineality = IntVector::Ones(n + 1);
    cone.lineality(n) = 0;
    cone.divisor_degree = d.degree();
    // Rays through the vertices of the height-1 slice polytope.
    for (const RatVector& v : slice_vertices(g, d, 1)) {
        Integer scale = 1;
        for (Index i = 1; i < n; ++i) scale = lcm(scale, denominator(v(i)));
        IntVector ray(n);
        for (Index i = 1; i < n; ++i) ray(i - 1) = numerator(Rational(v(i) * scale));
        ray(n - 1) = scale;
        if (!cone.contains_slice(ray)) throw Error(ErrorKind::VerificationFailure, "extreme ray outside the cone");
        cone.rays.push_back(std::move(ray));
    }
    return cone;
}

std::vector<Integer> GeneratorSet::degrees() const {
    std::vector<Integer> out;
    for (const auto& el : generators) out.push_back(el.degree);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

GeneratorSet hilbert_basis(const MonoidCone& cone, const HilbertOptions& opts) {
    GeneratorSet out;
    if (cone.rays.empty()) return out;
    const Index dim = cone.slice_dimension();
    std::vector<IntVector> candidates = cone.rays;

    if (cone.rays.size() > 1) {
        if (static_cast<Index>(cone.rays.size()) != dim)
            throw Error(ErrorKind::DegenerateCone, "graded cone is not simplicial");
        IntMatrix rays(dim, dim);
        for (Index j = 0; j < dim; ++j) rays.col(j) = cone.rays[static_cast<std::size_t>(j)];
        SmithOptions so;
        so.track_left = false;
        so.track_right = false;
        so.track_left_inverse = true;
        const auto snf = smith_normal_form<Integer>(rays, so);
        if (snf.rank != dim) throw Error(ErrorKind::DegenerateCone, "extreme rays are linearly dependent");
        Integer det = 1;
        for (Index i = 0; i < dim; ++i) det *= snf.diagonal(i, i);
        if (det > opts.max_parallelepiped_points)
            throw Error(ErrorKind::BudgetExceeded, "fundamental parallelepiped has " + det.str() +
                                                       " lattice points, budget is " +
                                                       opts.max_parallelepiped_points.str());
        const RatMatrix inverse = exact_inverse<Rational>(rays.cast<Rational>());
        // Coset representatives of Z^dim / rays*Z^dim are left_inverse * a with 0 <= a_i < s_i.
        std::vector<Index> active;
        for (Index i = 0; i < dim; ++i)
            if (snf.diagonal(i, i) != 1) active.push_back(i);
        IntVector a = IntVector::Zero(dim);
        for (;;) {
            const IntVector z = snf.left_inverse * a;
            const RatVector lambda = inverse * z.cast<Rational>();
            IntVector shift(dim);
            for (Index i = 0; i < dim; ++i) shift(i) = floor(lambda(i));
            const IntVector point = z - rays * shift;
            if (!point.isZero()) candidates.push_back(point);
            std::size_t k = 0;
            for (; k < active.size(); ++k) {
                const Index i = active[k];
                a(i) += 1;
                if (a(i) < snf.diagonal(i, i)) break;
                a(i) = 0;
            }
            if (k == active.size()) break;
        }
    }

    std::sort(candidates.begin(), candidates.end(), [](const IntVector& x, const IntVector& y) {
        if (height(x) != height(y)) return height(x) < height(y);
        return LexLess{}(x, y);
    });
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    // z is reducible iff z - g lies in the cone for some candidate g of smaller height.
    std::vector<IntVector> irreducible;
    for (const auto& z : candidates) {
        if (!cone.contains_slice(z)) throw Error(ErrorKind::VerificationFailure, "parallelepiped point outside cone");
        bool reducible = false;
        for (const auto& g : candidates) {
            if (height(g) >= height(z)) break;
            if (cone.contains_slice(z - g)) {
                reducible = true;
                break;
            }
        }
        if (!reducible) irreducible.push_back(z);
    }
    for (const auto& z : irreducible) out.generators.push_back(cone.from_slice(z));
    std::sort(out.generators.begin(), out.generators.end());
    return out;
}

// ---------------------------------------------------------------------------

GenerationCertificate decompose(const RgdElement& f, const GeneratorSet& gens, const DecomposeOptions& opts) {
    if (f.degree > opts.max_degree)
        throw Error(ErrorKind::DegreeOverflow, "target degree " + f.degree.str() + " exceeds bound " +
                                                   opts.max_degree.str());
    GenerationCertificate cert;
    cert.target = f;
    const IntVector& target = f.function.values();
    const Index n = target.size();
    if (f.degree == 0) {
        // Degree 0 is the constants: units of the semi-ring.
        cert.generated = f.function.is_constant();
        if (cert.generated) cert.terms.push_back({target(0), {}});
        return cert;
    }
    for (const auto& g : gens.generators) {
        if (g.degree <= 0) throw Error(ErrorKind::InvalidInput, "generators must have positive degree");
        if (g.function.size() != n) throw Error(ErrorKind::SizeMismatch, "generator size");
    }

    Coverage coverage(n);
    std::vector<std::size_t> factors;
    IntVector product = IntVector::Zero(n);
    // Depth-first over multisets of generator indices (non-decreasing) with exact total degree.
    std::function<bool(std::size_t, const Integer&)> walk = [&](std::size_t start, const Integer& remaining) {
        if (remaining == 0) {
            if (!opts.allow_single_factor && factors.size() < 2) return false;
            if (++cert.products_examined > opts.product_cap)
                throw Error(ErrorKind::BudgetExceeded,
                            "more than " + std::to_string(opts.product_cap) + " products; raise the product cap");
            if (auto shift = coverage.add(target, product)) cert.terms.push_back({*shift, factors});
            return coverage.complete();
        }
        for (std::size_t i = start; i < gens.generators.size(); ++i) {
            const auto& g = gens.generators[i];
            if (g.degree > remaining) continue;
            factors.push_back(i);
            product += g.function.values();
            const bool done = walk(i, remaining - g.degree);
            product -= g.function.values();
            factors.pop_back();
            if (done) return true;
        }
        return false;
    };
    walk(0, f.degree);

    cert.generated = coverage.complete();
    if (!cert.generated) {
        cert.terms.clear();
        for (Index x = 0; x < n; ++x)
            if (!coverage.covered[static_cast<std::size_t>(x)]) cert.uncovered.push_back(x);
        return cert;
    }
    if (evaluate(cert, gens) != f.function)
        throw Error(ErrorKind::VerificationFailure, "decomposition does not re-evaluate to its target");
    return cert;
}

RationalFunction evaluate(const GenerationCertificate& cert, const GeneratorSet& gens) {
    const Index n = cert.target.function.size();
    std::optional<IntVector> acc;
    for (const auto& term : cert.terms) {
        IntVector p = IntVector::Constant(n, term.shift);
        for (std::size_t i : term.factors) p += gens.generators.at(i).function.values();
        acc = acc ? IntVector(acc->cwiseMax(p)) : p;
    }
    if (!acc) throw Error(ErrorKind::InvalidInput, "empty certificate");
    return RationalFunction(std::move(*acc));
}

std::optional<GenerationCertificate> monoid_decompose(const RgdElement& f, const GeneratorSet& basis,
                                                      const MonoidCone& cone) {
    std::vector<IntVector> points;
    for (const auto& g : basis.generators) points.push_back(cone.to_slice(g));
    std::set<IntVector, LexLess> dead;
    std::vector<std::size_t> factors;
    std::function<bool(const IntVector&)> walk = [&](const IntVector& y) {
        if (y.isZero()) return true;
        if (dead.count(y)) return false;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (height(points[i]) > height(y)) continue;
            const IntVector rest = y - points[i];
            if (!cone.contains_slice(rest)) continue;
            factors.push_back(i);
            if (walk(rest)) return true;
            factors.pop_back();
        }
        dead.insert(y);
        return false;
    };
    const IntVector y = cone.to_slice(f);
    if (!cone.contains_slice(y)) return std::nullopt;
    if (!walk(y)) return std::nullopt;

    GenerationCertificate cert;
    cert.target = f;
    cert.generated = true;
    IntVector p = IntVector::Zero(f.function.size());
    for (std::size_t i : factors) p += basis.generators[i].function.values();
    std::sort(factors.begin(), factors.end());
    cert.terms.push_back({f.function[0] - p(0), factors});
    if (evaluate(cert, basis) != f.function)
        throw Error(ErrorKind::VerificationFailure, "monoid certificate does not re-evaluate to its target");
    return cert;
}

std::optional<std::vector<ProductTerm>> oplus_cover(const RationalFunction& target,
                                                    const std::vector<RationalFunction>& family) {
    Coverage coverage(target.size());
    std::vector<ProductTerm> terms;
    for (std::size_t i = 0; i < family.size() && !coverage.complete(); ++i) {
        if (family[i].size() != target.size()) throw Error(ErrorKind::SizeMismatch, "family member size");
        if (auto shift = coverage.add(target.values(), family[i].values())) terms.push_back({*shift, {i}});
    }
    if (!coverage.complete()) return std::nullopt;
    return terms;
}

// ---------------------------------------------------------------------------

GnGraph build_gn(Index n) {
    if (n < 1) throw Error(ErrorKind::InvalidInput, "G_n needs n >= 1");
    const Index segment = 2 * n - 1;
    GnGraph out;
    out.n = n;
    out.p = 0;
    out.q = 1;
    std::vector<FiniteGraph::Edge> edges;
    std::vector<std::string> labels{"p", "q"};
    Index next = 2;
    std::array<Index, 3> second{1, 1, 1};
    for (int s = 0; s < 3; ++s) {
        Index prev = 0;
        for (Index i = 1; i < segment; ++i) {
            edges.emplace_back(prev, next);
            labels.push_back("s" + std::to_string(s) + "_" + std::to_string(i));
            if (i == 1) second[static_cast<std::size_t>(s)] = next;
            if (s == 0 && i == n) out.r = next;
            prev = next++;
        }
        edges.emplace_back(prev, 1);
    }
    // r is n edges from p on segment 0; for n = 1 that is q itself.
    if (n == 1) out.r = 1;
    out.u = second[1];
    out.w = second[2];
    if (out.r != 1) labels[static_cast<std::size_t>(out.r)] = "r";
    if (out.u != 1) labels[static_cast<std::size_t>(out.u)] = "u";
    if (out.w != 1) labels[static_cast<std::size_t>(out.w)] = "w";
    out.graph = FiniteGraph::build(next, std::move(edges), std::move(labels));
    return out;
}

bool GnReport::passed() const {
    if (vacuous) return true;
    if (!witness_valid || !extremal || generated_below) return false;
    for (const auto& row : obstruction)
        if (row.equivalent || row.candidates != 0) return false;
    return control_equivalent && identity_holds;
}

GnReport verify_gn(Index n, const GnOptions& opts) {
    GnReport report;
    report.n = n;
    report.gn = build_gn(n);
    if (n < 2) {
        report.vacuous = true;
        report.generated_below = false;
        return report;
    }
    const FiniteGraph& g = report.gn.graph;
    const Index nv = g.vertex_count();
    const Divisor k_div = canonical_divisor(g);
    const Index p = report.gn.p, r = report.gn.r;
    const Divisor target = Divisor::unit(nv, p) + Divisor::unit(nv, r, Integer(2 * n - 1));

    // Leg 1: nK + div(f) = [p] + (2n-1)[r].
    auto f = linear_equiv(g, target, Integer(n) * k_div);
    if (!f) throw Error(ErrorKind::VerificationFailure, "nK is not equivalent to [p] + (2n-1)[r]");
    report.witness = *f;
    report.witness_valid = (Integer(n) * k_div + ord_and_div(g, *f)) == target;

    // Leg 2: extremality.
    report.extremal = is_extremal(g, k_div, *f, n);

    // Leg 3: no decomposition over everything of degree <= n-1.
    GeneratorSet lower;
    std::vector<std::vector<RgdElement>> levels;
    for (Index j = 1; j < n; ++j) {
        levels.push_back(rgd_enumerate(g, k_div, j, opts.enumeration));
        report.elements_per_degree.push_back(levels.back().size());
        lower.generators.insert(lower.generators.end(), levels.back().begin(), levels.back().end());
    }
    report.certificate = decompose(make_element(g, k_div, *f, n), lower, opts.decompose);
    report.generated_below = report.certificate.generated;

    // Cross-validation of the integrality obstruction.
    auto identity = [&](const RationalFunction& h, const Integer& k) {
        const Integer lhs = 3 * h[p] - 2 * h[report.gn.u] - h[report.gn.w];
        return k == Integer(2 * n - 1) * lhs;
    };
    for (Index j = 1; j < n; ++j) {
        GnObstructionRow row;
        row.k = j;
        const Divisor concentrated = Divisor::unit(nv, r, Integer(2 * j));
        for (const auto& h : levels[static_cast<std::size_t>(j - 1)]) {
            if (Integer(j) * k_div + ord_and_div(g, h.function) != concentrated) continue;
            ++row.candidates;
            if (!identity(h.function, j))
                throw Error(ErrorKind::VerificationFailure, "integrality identity fails on a candidate");
        }
        row.equivalent = linear_equiv(g, concentrated, Integer(j) * k_div).has_value();
        report.obstruction.push_back(row);
    }
    report.control_k = Integer(3 * (2 * n - 1));
    if (auto h = linear_equiv(g, Divisor::unit(nv, r, 2 * report.control_k), report.control_k * k_div)) {
        report.control_equivalent = true;
        report.identity_holds = identity(*h, report.control_k);
    }
    return report;
}

std::vector<Integer> min_generator_degrees(const FiniteGraph& g, const Divisor& d, const Integer& m_max,
                                           const GeneratorDegreeOptions& opts) {
    if (m_max < 1) throw Error(ErrorKind::InvalidInput, "m_max must be at least 1");
    std::vector<std::vector<RgdElement>> levels{{}};  // index = degree; degree 0 unused
    std::vector<Integer> out;
    std::size_t work = 0;
    for (Integer m = 1; m <= m_max; ++m) {
        levels.push_back(rgd_enumerate(g, d, m, opts.enumeration));
        const auto mi = static_cast<std::size_t>(m);
        bool irreducible_found = false;
        for (const auto& f : levels[mi]) {
            // Lower degrees are complete graded pieces, closed under ⊙, so
            // products of two elements of degrees l and m-l suffice.
            Coverage coverage(f.function.size());
            for (std::size_t l = 1; 2 * l <= mi && !coverage.complete(); ++l) {
                for (const auto& a : levels[l]) {
                    for (const auto& b : levels[mi - l]) {
                        if (++work > opts.product_cap)
                            throw Error(ErrorKind::BudgetExceeded, "product budget exhausted");
                        coverage.add(f.function.values(), IntVector(a.function.values() + b.function.values()));
                        if (coverage.complete()) break;
                    }
                    if (coverage.complete()) break;
                }
            }
            if (!coverage.complete()) {
                irreducible_found = true;
                break;
            }
        }
        if (irreducible_found) out.push_back(m);
    }
    return out;
}

}  // namespace canonring
