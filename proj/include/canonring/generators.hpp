// Copyright (c) canonring contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "canonring/linear_system.hpp"

namespace canonring {

/// The cone {(x, m) : laplacian*x + m*d >= 0, m >= 0} over the polyhedron
/// of R(G, D), together with its all-ones lineality direction.
///
/// Modulo lineality every lattice point is represented in slice coordinates
/// (x_1 - x_0, ..., x_{n-1} - x_0, m); lattice points at height m are exactly
/// the orbits of R(G, mD), and adding slice points is the tropical product.
struct MonoidCone {
    Index vertex_count = 0;
    IntMatrix constraints;           // n x (n+1), columns: vertices then height
    IntVector lineality;             // (1, ..., 1, 0)
    std::vector<IntVector> rays;     // primitive extreme rays, slice coordinates
    Integer divisor_degree;

    [[nodiscard]] Index slice_dimension() const { return vertex_count; }
    [[nodiscard]] bool contains(const IntVector& point) const;        // full coordinates (x, m)
    [[nodiscard]] bool contains_slice(const IntVector& point) const;  // slice coordinates
    [[nodiscard]] IntVector to_slice(const RgdElement& el) const;
    [[nodiscard]] RgdElement from_slice(const IntVector& point) const;
};

[[nodiscard]] MonoidCone graded_cone(const FiniteGraph& g, const Divisor& d);

/// Graded generators of positive degree; degree-0 constants act as units.
struct GeneratorSet {
    std::vector<RgdElement> generators;

    [[nodiscard]] std::vector<Integer> degrees() const;  // distinct, ascending
    [[nodiscard]] std::size_t size() const { return generators.size(); }
};

struct HilbertOptions {
    // Lattice points of the fundamental parallelepiped (= |det| of the ray matrix).
    Integer max_parallelepiped_points = 200'000;
};

/// Hilbert basis of the lattice-point monoid of a graded cone.
///
/// The cone is simplicial whenever deg D > 0, so the lattice points of the
/// half-open parallelepiped spanned by the primitive rays, together with the
/// rays, generate the monoid; the basis is the set of irreducibles among them.
[[nodiscard]] GeneratorSet hilbert_basis(const MonoidCone& cone, const HilbertOptions& opts = {});

/// One ⊕-summand: shift ⊙ (product of the listed generators, with repetition).
struct ProductTerm {
    Integer shift;
    std::vector<std::size_t> factors;
};

/// Either an expression (⊕ of shifted ⊙-products) evaluating to the target,
/// or a record that the exhaustive search over all degree-exact products failed.
struct GenerationCertificate {
    RgdElement target;
    bool generated = false;
    std::vector<ProductTerm> terms;
    std::size_t products_examined = 0;
    std::vector<Index> uncovered;  // vertices no product touches, when absent
};

struct DecomposeOptions {
    Integer max_degree = 64;
    std::size_t product_cap = 5'000'000;
    // When false, products of a single generator are skipped (used to test
    // whether a generator is itself decomposable).
    bool allow_single_factor = true;
};

/// Decides whether `f` lies in the sub-semi-ring generated by `gens`.
///
/// f is a ⊕ of shifted degree-exact products iff every vertex x is touched
/// by some product p: after the largest shift with p <= f, p(x) == f(x).
/// Monoid (⊙-only) generation is stronger; ⊕ can only make fewer generators
/// necessary, which is why minimal generator degrees use this test and not
/// the Hilbert basis alone.
[[nodiscard]] GenerationCertificate decompose(const RgdElement& f, const GeneratorSet& gens,
                                              const DecomposeOptions& opts = {});

/// Pure ⊙-certificate of f over a Hilbert basis of `cone`.
[[nodiscard]] std::optional<GenerationCertificate> monoid_decompose(const RgdElement& f, const GeneratorSet& basis,
                                                                    const MonoidCone& cone);

/// Re-evaluates a certificate pointwise.
[[nodiscard]] RationalFunction evaluate(const GenerationCertificate& cert, const GeneratorSet& gens);

/// ⊕-cover of `target` by shifted members of `family`, if one exists.
/// Each term's factor list holds a single family index.
[[nodiscard]] std::optional<std::vector<ProductTerm>> oplus_cover(const RationalFunction& target,
                                                                  const std::vector<RationalFunction>& family);

// ---------------------------------------------------------------------------

/// The theta graph with each edge subdivided into 2n-1 edges.
struct GnGraph {
    Index n = 0;
    FiniteGraph graph;
    Index p = 0, q = 0, r = 0, u = 0, w = 0;
};

[[nodiscard]] GnGraph build_gn(Index n);

struct GnObstructionRow {
    Integer k;
    std::size_t candidates = 0;  // h in R(G_n, kK) with kK + div(h) = 2k[r]
    bool equivalent = false;     // kK ~ 2k[r]
};

struct GnReport {
    Index n = 0;
    bool vacuous = false;
    GnGraph gn;
    RationalFunction witness;  // nK + div(f) = [p] + (2n-1)[r]
    bool witness_valid = false;
    bool extremal = false;
    bool generated_below = true;
    GenerationCertificate certificate;
    std::vector<std::size_t> elements_per_degree;  // |R(G_n, jK)| for j = 1..n-1
    std::vector<GnObstructionRow> obstruction;
    // Positive control at k = 3(2n-1): kK ~ 2k[r] holds there and the
    // integrality identity k = (2n-1)(3h(p) - 2h(u) - h(w)) is checked on its witness.
    Integer control_k;
    bool control_equivalent = false;
    bool identity_holds = false;

    [[nodiscard]] bool passed() const;
};

struct GnOptions {
    EnumerationOptions enumeration;
    DecomposeOptions decompose;
};

[[nodiscard]] GnReport verify_gn(Index n, const GnOptions& opts = {});

struct GeneratorDegreeOptions {
    EnumerationOptions enumeration;
    std::size_t product_cap = 50'000'000;
};

/// Degrees m <= m_max carrying an element not generated by lower degrees.
[[nodiscard]] std::vector<Integer> min_generator_degrees(const FiniteGraph& g, const Divisor& d, const Integer& m_max,
                                                         const GeneratorDegreeOptions& opts = {});

}  // namespace canonring
