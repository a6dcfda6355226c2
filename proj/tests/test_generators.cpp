// Copyright (c) canonring contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <deque>
#include <random>

#include "canonring/generators.hpp"
#include "canonring/random.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace canonring;
using fx::divisor;
using fx::function;
using fx::ints;
using fx::throws_kind;

namespace {

std::set<std::vector<Integer>> slice_set(const std::vector<IntVector>& pts) {
    std::set<std::vector<Integer>> out;
    for (const auto& p : pts) out.insert(std::vector<Integer>(p.data(), p.data() + p.size()));
    return out;
}

std::vector<std::vector<Integer>> oracle_points(const FiniteGraph& g, const Divisor& d, int max_height) {
    std::vector<std::vector<Integer>> out;
    for (Integer m = 1; m <= max_height; ++m)
        for (auto f : oracle::brute_rgd(g, d, m)) {
            std::vector<Integer> p;
            for (std::size_t v = 1; v < f.size(); ++v) p.push_back(f[v] - f[0]);
            p.push_back(m);
            out.push_back(p);
        }
    return out;
}

std::set<std::vector<Integer>> basis_points(const MonoidCone& cone, const GeneratorSet& gens) {
    std::set<std::vector<Integer>> out;
    for (const auto& el : gens.generators) {
        const IntVector s = cone.to_slice(el);
        out.insert(std::vector<Integer>(s.data(), s.data() + s.size()));
    }
    return out;
}

// All products of generators with total degree exactly m.
std::vector<RationalFunction> products_of_degree(const GeneratorSet& gens, const Integer& m) {
    std::vector<RationalFunction> out;
    const Index n = gens.generators.front().function.size();
    std::vector<std::size_t> stack;
    auto rec = [&](auto&& self, std::size_t start, const Integer& left, const IntVector& acc) -> void {
        if (left == 0) {
            out.emplace_back(acc);
            return;
        }
        for (std::size_t i = start; i < gens.size(); ++i)
            if (gens.generators[i].degree <= left)
                self(self, i, left - gens.generators[i].degree, IntVector(acc + gens.generators[i].function.values()));
    };
    rec(rec, 0, m, IntVector::Zero(n));
    return out;
}

GeneratorSet elements_up_to(const FiniteGraph& g, const Divisor& d, const Integer& m_max) {
    GeneratorSet gens;
    for (Integer m = 1; m <= m_max; ++m)
        for (auto& el : rgd_enumerate(g, d, m)) gens.generators.push_back(el);
    return gens;
}

}  // namespace

TEST_CASE("graded cone rays") {
    const FiniteGraph theta = theta_graph();
    const MonoidCone c = graded_cone(theta, canonical_divisor(theta));
    CHECK(c.slice_dimension() == 2);
    CHECK(slice_set(c.rays) == std::set<std::vector<Integer>>{{1, 3}, {-1, 3}});
    CHECK(c.contains_slice(ints({0, 1})));
    CHECK_FALSE(c.contains_slice(ints({1, 2})));

    const MonoidCone p = graded_cone(path_graph(2), divisor({1, 0}));
    CHECK(slice_set(p.rays) == std::set<std::vector<Integer>>{{0, 1}, {-1, 1}});
}

TEST_CASE("height-m lattice points are exactly the enumerated orbits") {
    const std::vector<std::pair<FiniteGraph, Divisor>> cases = {
        {theta_graph(), divisor({1, 1})}, {path_graph(2), divisor({1, 0})},
        {path_graph(3), divisor({1, 0, 1})}, {build_graph(3, {{0, 1}, {1, 2}, {2, 0}, {0, 1}}), divisor({0, 1, 1})}};
    for (const auto& [g, d] : cases) {
        const MonoidCone cone = graded_cone(g, d);
        const Index n = g.vertex_count();
        for (Integer m = 1; m <= 4; ++m) {
            std::set<std::vector<Integer>> enumerated;
            for (const auto& el : rgd_enumerate(g, d, m)) {
                const IntVector s = cone.to_slice(el);
                CHECK(cone.contains_slice(s));
                CHECK(cone.from_slice(s) == el);
                enumerated.insert(std::vector<Integer>(s.data(), s.data() + s.size()));
            }
            // Scan a box that contains every orbit (values lie in [0, B]).
            const Integer b = oracle::box_bound(g, d, m);
            std::set<std::vector<Integer>> scanned;
            std::vector<Integer> x(static_cast<std::size_t>(n - 1), -b);
            while (true) {
                IntVector s(n);
                for (Index i = 0; i + 1 < n; ++i) s(i) = x[static_cast<std::size_t>(i)];
                s(n - 1) = m;
                if (cone.contains_slice(s)) scanned.insert(std::vector<Integer>(s.data(), s.data() + n));
                std::size_t i = 0;
                while (i < x.size() && x[i] == b) x[i++] = -b;
                if (i == x.size()) break;
                ++x[i];
            }
            CHECK(scanned == enumerated);
        }
    }
}

TEST_CASE("Hilbert basis of the single-edge path") {
    const FiniteGraph g = path_graph(2);
    const Divisor d = divisor({1, 0});
    const MonoidCone cone = graded_cone(g, d);
    const GeneratorSet basis = hilbert_basis(cone);
    CHECK(basis.degrees() == std::vector<Integer>{1});
    CHECK(basis_points(cone, basis) == std::set<std::vector<Integer>>{{0, 1}, {-1, 1}});
    CHECK(basis_points(cone, basis) == oracle::irreducible_points(oracle_points(g, d, 8)));
}

TEST_CASE("Hilbert basis of theta with the canonical divisor") {
    const FiniteGraph g = theta_graph();
    const Divisor k = canonical_divisor(g);
    const MonoidCone cone = graded_cone(g, k);
    const GeneratorSet basis = hilbert_basis(cone);
    CHECK(basis.degrees() == std::vector<Integer>{1, 3});
    CHECK(basis_points(cone, basis) == std::set<std::vector<Integer>>{{0, 1}, {1, 3}, {-1, 3}});
    CHECK(basis_points(cone, basis) == oracle::irreducible_points(oracle_points(g, k, 8)));
    // Deterministic order.
    CHECK(hilbert_basis(cone).generators == basis.generators);
}

TEST_CASE("Hilbert basis with the zero divisor is the degree-one constant") {
    const FiniteGraph g = complete_graph(3);
    const MonoidCone cone = graded_cone(g, Divisor::zero(3));
    const GeneratorSet basis = hilbert_basis(cone);
    REQUIRE(basis.size() == 1);
    CHECK(basis.generators[0].degree == 1);
    CHECK(basis.generators[0].function.is_constant());
}

TEST_CASE("Hilbert basis respects the parallelepiped budget") {
    const FiniteGraph g = complete_graph(4);
    const MonoidCone cone = graded_cone(g, canonical_divisor(g));
    HilbertOptions tiny;
    tiny.max_parallelepiped_points = 1;
    CHECK(throws_kind([&] { (void)hilbert_basis(cone, tiny); }, ErrorKind::BudgetExceeded));
}

TEST_CASE("every element up to degree 8 has a product certificate over the basis") {
    const std::vector<std::pair<FiniteGraph, Divisor>> cases = {{theta_graph(), divisor({1, 1})},
                                                                {path_graph(2), divisor({1, 0})}};
    for (const auto& [g, d] : cases) {
        const MonoidCone cone = graded_cone(g, d);
        const GeneratorSet basis = hilbert_basis(cone);
        for (Integer m = 1; m <= 8; ++m)
            for (const auto& el : rgd_enumerate(g, d, m)) {
                const auto cert = monoid_decompose(el, basis, cone);
                REQUIRE(cert);
                CHECK(cert->generated);
                CHECK(cert->terms.size() == 1);
                CHECK(evaluate(*cert, basis) == el.function);
                const auto semi = decompose(el, basis);
                CHECK(semi.generated);
                CHECK(evaluate(semi, basis) == el.function);
            }
    }
}

TEST_CASE("decompose examples on theta") {
    const FiniteGraph g = theta_graph();
    const Divisor k = canonical_divisor(g);
    const GeneratorSet basis = hilbert_basis(graded_cone(g, k));

    const RgdElement f = make_element(g, k, function({0, 1}), 4);
    const auto cert = decompose(f, basis);
    REQUIRE(cert.generated);
    CHECK(evaluate(cert, basis) == f.function);
    bool found = false;
    for (const auto& t : cert.terms) {
        std::vector<Integer> degs;
        for (std::size_t i : t.factors) degs.push_back(basis.generators[i].degree);
        std::sort(degs.begin(), degs.end());
        found = found || degs == std::vector<Integer>{1, 3};
    }
    CHECK(found);

    const GeneratorSet low = elements_up_to(g, k, 2);
    const auto absent = decompose(make_element(g, k, function({0, 1}), 3), low);
    CHECK_FALSE(absent.generated);
    CHECK(absent.products_examined > 0);

    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto self = decompose(basis.generators[i], basis);
        REQUIRE(self.generated);
        CHECK(evaluate(self, basis) == basis.generators[i].function);
    }

    DecomposeOptions small;
    small.max_degree = 3;
    CHECK(throws_kind([&] { (void)decompose(f, basis, small); }, ErrorKind::DegreeOverflow));
    small.max_degree = 64;
    small.product_cap = 1;
    CHECK(throws_kind([&] { (void)decompose(make_element(g, k, function({0, 1}), 3), low, small); },
                      ErrorKind::BudgetExceeded));
}

TEST_CASE("decompose agrees with the subset oracle and ignores constant shifts") {
    Rng rng(314);
    int compared = 0;
    for (int t = 0; t < 200; ++t) {
        const Index n = 2 + static_cast<Index>(rng() % 3);
        const FiniteGraph g = random_graph(rng, n, static_cast<Index>(rng() % 3));
        const Divisor d = random_divisor(rng, n, 0, 2);
        const GeneratorSet gens = elements_up_to(g, d, 2);
        if (gens.size() == 0 || gens.size() > 12) continue;
        const auto products = products_of_degree(gens, 3);
        if (products.empty() || products.size() > 16) continue;
        for (const auto& f : rgd_enumerate(g, d, 3)) {
            const auto cert = decompose(f, gens);
            CHECK(cert.generated == oracle::generated_by_subsets(f.function, products));
            if (cert.generated) CHECK(evaluate(cert, gens) == f.function);
            RgdElement shifted = f;
            shifted.function = scale(7, f.function);
            const auto cert2 = decompose(shifted, gens);
            CHECK(cert2.generated == cert.generated);
            if (cert2.generated) CHECK(evaluate(cert2, gens) == shifted.function);
            ++compared;
        }
    }
    CHECK(compared > 50);
}

TEST_CASE("G_n layout") {
    for (Index n = 1; n <= 5; ++n) {
        const GnGraph gn = build_gn(n);
        CHECK(gn.graph.vertex_count() == 6 * n - 4);
        CHECK(gn.graph.edge_count() == 6 * n - 3);
        // Breadth-first distances from p.
        std::vector<Index> dist(static_cast<std::size_t>(gn.graph.vertex_count()), -1);
        std::deque<Index> todo{gn.p};
        dist[static_cast<std::size_t>(gn.p)] = 0;
        while (!todo.empty()) {
            const Index v = todo.front();
            todo.pop_front();
            for (const auto& [u, e] : gn.graph.incidence(v))
                if (dist[static_cast<std::size_t>(u)] < 0) {
                    dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(v)] + 1;
                    todo.push_back(u);
                }
        }
        CHECK(dist[static_cast<std::size_t>(gn.q)] == 2 * n - 1);
        if (n >= 2) {
            CHECK(dist[static_cast<std::size_t>(gn.r)] == n);
            CHECK(dist[static_cast<std::size_t>(gn.u)] == 1);
            CHECK(dist[static_cast<std::size_t>(gn.w)] == 1);
            CHECK(gn.u != gn.w);
        }
    }
    CHECK(build_gn(1).graph.edge_count() == 3);
}

TEST_CASE("verify_gn") {
    CHECK(verify_gn(1).vacuous);
    for (Index n = 2; n <= 3; ++n) {
        const GnReport rep = verify_gn(n);
        CHECK(rep.witness_valid);
        CHECK(rep.extremal);
        CHECK_FALSE(rep.generated_below);
        CHECK(rep.control_equivalent);
        CHECK(rep.identity_holds);
        for (const auto& row : rep.obstruction) CHECK_FALSE(row.equivalent);
        CHECK(rep.passed());
        const Divisor nk = Integer(n) * canonical_divisor(rep.gn.graph);
        const Divisor target = Divisor::unit(rep.gn.graph.vertex_count(), rep.gn.p) +
                               Divisor::unit(rep.gn.graph.vertex_count(), rep.gn.r, 2 * n - 1);
        CHECK(nk + ord_and_div(rep.gn.graph, rep.witness) == target);
    }
}

TEST_CASE("min_generator_degrees") {
    const FiniteGraph theta = theta_graph();
    CHECK(min_generator_degrees(theta, canonical_divisor(theta), 6) == std::vector<Integer>{1, 3});
    CHECK(min_generator_degrees(path_graph(2), divisor({1, 0}), 4) == std::vector<Integer>{1});
    const GnGraph g2 = build_gn(2);
    const auto degs = min_generator_degrees(g2.graph, canonical_divisor(g2.graph), 2);
    CHECK(std::find(degs.begin(), degs.end(), Integer(2)) != degs.end());
}
