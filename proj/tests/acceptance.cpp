// Copyright (c) canonring contributors.
// SPDX-License-Identifier: Apache-2.0

// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

#include "canonring/generators.hpp"
#include "canonring/witness.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace canonring;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream notes;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes << " [failed: " << what << "]";
        }
    }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Check&)>& body) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.notes << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " (" << timing << ")"
              << c.notes.str() << std::endl;
    if (!c.ok) ++failures;
}

std::set<std::vector<Integer>> orbit_set(const std::vector<RgdElement>& els) {
    std::set<std::vector<Integer>> out;
    for (const auto& el : els) out.insert(oracle::values(el.function));
    return out;
}

// Connected multigraphs with loops, up to isomorphism, as sorted edge lists.
std::vector<FiniteGraph> small_multigraphs(Index max_vertices, std::size_t max_edges) {
    std::vector<FiniteGraph> out;
    for (Index n = 1; n <= max_vertices; ++n) {
        std::vector<FiniteGraph::Edge> kinds;
        for (Index u = 0; u < n; ++u)
            for (Index v = u; v < n; ++v) kinds.emplace_back(u, v);
        std::vector<Index> perm(static_cast<std::size_t>(n));
        std::set<std::vector<FiniteGraph::Edge>> seen;
        std::vector<FiniteGraph::Edge> current;
        auto canonical = [&](const std::vector<FiniteGraph::Edge>& edges) {
            std::iota(perm.begin(), perm.end(), Index{0});
            std::vector<FiniteGraph::Edge> best;
            do {
                std::vector<FiniteGraph::Edge> mapped;
                for (const auto& [u, v] : edges) {
                    const Index a = perm[static_cast<std::size_t>(u)], b = perm[static_cast<std::size_t>(v)];
                    mapped.emplace_back(std::min(a, b), std::max(a, b));
                }
                std::sort(mapped.begin(), mapped.end());
                if (best.empty() || mapped < best) best = mapped;
            } while (std::next_permutation(perm.begin(), perm.end()));
            return best;
        };
        std::function<void(std::size_t)> rec = [&](std::size_t start) {
            if (is_connected(n, current)) {
                const auto key = canonical(current);
                if (seen.insert(key).second) out.push_back(build_graph(n, key));
            }
            if (current.size() == max_edges) return;
            for (std::size_t k = start; k < kinds.size(); ++k) {
                current.push_back(kinds[k]);
                rec(k);
                current.pop_back();
            }
        };
        rec(0);
    }
    return out;
}

}  // namespace

int main() {
    criterion(1, "G_n has 6n-4 vertices and 6n-3 edges for n = 1..5", [](Check& c) {
        for (Index n = 1; n <= 5; ++n) {
            const GnGraph gn = build_gn(n);
            c.expect(gn.graph.vertex_count() == 6 * n - 4, "vertices at n=" + std::to_string(n));
            c.expect(gn.graph.edge_count() == 6 * n - 3, "edges at n=" + std::to_string(n));
        }
    });

    criterion(2, "verify_gn passes witness, extremality and absence legs for n = 2, 3, 4", [](Check& c) {
        for (Index n = 2; n <= 4; ++n) {
            const GnReport rep = verify_gn(n);
            const std::string at = " at n=" + std::to_string(n);
            c.expect(rep.witness_valid, "witness" + at);
            c.expect(rep.extremal, "extremal" + at);
            c.expect(!rep.generated_below, "absence" + at);
            c.expect(rep.passed(), "report" + at);
        }
    });

    criterion(3, "Hilbert bases of theta (K) and the single-edge path ([p]) certify every element up to degree 8",
              [](Check& c) {
                  const std::vector<std::tuple<std::string, FiniteGraph, Divisor>> cases = {
                      {"theta", theta_graph(), fx::divisor({1, 1})}, {"path", path_graph(2), fx::divisor({1, 0})}};
                  for (const auto& [name, g, d] : cases) {
                      const MonoidCone cone = graded_cone(g, d);
                      const GeneratorSet basis = hilbert_basis(cone);
                      std::size_t certified = 0;
                      for (Integer m = 1; m <= 8; ++m)
                          for (const auto& el : rgd_enumerate(g, d, m)) {
                              const auto cert = monoid_decompose(el, basis, cone);
                              c.expect(cert && evaluate(*cert, basis) == el.function, name + " element certificate");
                              ++certified;
                          }
                      // Brute-force irreducibility over heights <= 8.
                      std::vector<std::vector<Integer>> pts;
                      for (Integer m = 1; m <= 8; ++m)
                          for (const auto& f : oracle::brute_rgd(g, d, m)) {
                              std::vector<Integer> p;
                              for (std::size_t v = 1; v < f.size(); ++v) p.push_back(f[v] - f[0]);
                              p.push_back(m);
                              pts.push_back(p);
                          }
                      std::set<Integer> oracle_degrees;
                      for (const auto& p : oracle::irreducible_points(pts)) oracle_degrees.insert(p.back());
                      const auto degs = basis.degrees();
                      c.expect(std::set<Integer>(degs.begin(), degs.end()) == oracle_degrees, name + " degrees vs oracle");
                      if (name == "theta") c.expect(degs == std::vector<Integer>{1, 3}, "theta degrees {1,3}");
                      c.notes << " " << name << ": " << basis.size() << " generators, " << certified << " elements";
                  }
              });

    criterion(4, "theta witness with L=1, N=2 has orders (-1, -2, 3) and r at 2/3", [](Check& c) {
        const WitnessInstance inst = fx::theta_instance();
        const WitnessResult w = build_witness(inst, 1);
        c.expect(w.r == PointOnGraph::on_edge(inst.graph, 0, Rational(2, 3)), "r offset");
        c.expect(w.ord_p == -1 && w.ord_q == -2 && w.ord_r == 3, "orders");
        c.expect(w.ftilde.value_at(inst.graph, w.r) == Rational(-2, 3), "ftilde(r)");
        const MetricDivisor div = ord_div_metric(inst.graph, w.ftilde);
        c.expect(div.terms().size() == 3, "support size");
    });

    criterion(5, "f is extremal in R(theta, 2K) with firing subgraphs exactly {complement of (p,r), {r}}",
              [](Check& c) {
                  const WitnessInstance inst = fx::theta_instance();
                  const WitnessResult w = build_witness(inst, 1);
                  const MetricDivisor two_k = Integer(2) * inst.divisor;
                  c.expect(is_extremal_metric(inst.graph, two_k, w.f), "extremal");
                  const auto subs = firing_subgraphs_metric(inst.graph, two_k + ord_div_metric(inst.graph, w.f));
                  const std::set<MetricSubgraph> expected = {
                      MetricSubgraph::complement_of_open_interval(inst.graph, 0, 0, w.r.offset()),
                      MetricSubgraph::points(inst.graph, {w.r})};
                  c.expect(std::set<MetricSubgraph>(subs.begin(), subs.end()) == expected, "firing subgraphs");
              });

    criterion(6, "kK is not equivalent to kd[r] for k < 2sL on theta (s = 1, 2) and K4 (s = 2)", [](Check& c) {
        const std::vector<std::tuple<std::string, WitnessInstance, Integer, std::size_t>> cases = {
            {"theta s=1", fx::theta_instance(), 1, 1},
            {"theta s=2", fx::theta_instance(), 2, 3},
            {"K4 s=2", complete_graph_instance(4), 2, 3}};
        for (const auto& [name, inst, s, rows_expected] : cases) {
            const auto rows = indecomposability_check(inst, s);
            c.expect(rows.size() == rows_expected, name + " row count");
            const PointOnGraph r = witness_point(inst, s);
            for (const auto& row : rows) {
                c.expect(!row.equivalent, name + " k=" + row.k.str());
                const bool oracle_eq = oracle::metric_equivalent(
                    inst.graph, row.k * inst.divisor, MetricDivisor::point(r, row.k * inst.degree()));
                c.expect(oracle_eq == row.equivalent, name + " oracle k=" + row.k.str());
            }
        }
    });

    criterion(7, "K4: genus 3, deg K = 4, 2K ~ 4[v]+4[w]; K5: K ~ 5[v]+5[w]", [](Check& c) {
        const WitnessInstance k4 = complete_graph_instance(4);
        const HypothesisReport h4 = check_hypotheses(k4);
        c.expect(h4.genus == 3 && h4.degree == 4, "K4 genus and degree");
        c.expect(h4.witness.has_value(), "K4 witness");
        if (h4.witness) {
            const MetricDivisor target = fx::at_vertex(k4.p(), 4) + fx::at_vertex(k4.q(), 4);
            c.expect(ord_div_metric(k4.graph, *h4.witness) == Integer(2) * k4.divisor - target, "K4 witness divisor");
        }
        const WitnessInstance k5 = complete_graph_instance(5);
        const HypothesisReport h5 = check_hypotheses(k5);
        c.expect(h5.genus == 6 && h5.degree == 10, "K5 genus and degree");
        c.expect(h5.witness.has_value(), "K5 witness");
        if (h5.witness) {
            const MetricDivisor target = fx::at_vertex(k5.p(), 5) + fx::at_vertex(k5.q(), 5);
            c.expect(ord_div_metric(k5.graph, *h5.witness) == k5.divisor - target, "K5 witness divisor");
        }
    });

    criterion(8, "property suites, 1000 random cases per graph", [](Check& c) {
        props::Tally t;
        std::uint64_t seed = 1000;
        for (const FiniteGraph& g : {theta_graph(), complete_graph(4), build_gn(2).graph})
            props::finite_suite(g, canonical_divisor(g), seed++, 1000, t);
        seed = 2000;
        for (const MetricGraph& g : {theta_metric(), complete_metric(4),
                                     MetricGraph::build(theta_graph(), {Rational(3, 2), 1, 2})})
            props::metric_suite(g, seed++, 1000, t);
        for (const auto& [name, count] : t.failures) c.expect(count == 0, name + " (" + std::to_string(count) + ")");
        std::size_t cases = 0;
        for (const auto& [name, count] : t.cases) cases += count;
        c.notes << " " << t.cases.size() << " properties, " << cases << " checks";
    });

    criterion(9, "rgd_enumerate equals the box scan on connected multigraphs with <= 4 vertices, <= 6 edges, m <= 3",
              [](Check& c) {
                  const auto graphs = small_multigraphs(4, 6);
                  Rng rng(9);
                  std::size_t instances = 0, orbits = 0, mismatches = 0;
                  for (const auto& g : graphs) {
                      const Index n = g.vertex_count();
                      std::vector<Divisor> divisors = {canonical_divisor(g), Divisor::zero(n), Divisor::unit(n, 0),
                                                       Divisor::unit(n, n - 1, 2) - Divisor::unit(n, 0)};
                      IntVector r(n);
                      for (Index v = 0; v < n; ++v) r(v) = props::pick(rng, -1, 2);
                      divisors.emplace_back(r);
                      for (const auto& d : divisors)
                          for (Integer m = 1; m <= 3; ++m) {
                              const auto got = orbit_set(rgd_enumerate(g, d, m));
                              const auto want = oracle::brute_rgd(g, d, m);
                              ++instances;
                              orbits += want.size();
                              if (got != want) ++mismatches;
                          }
                  }
                  c.expect(mismatches == 0, std::to_string(mismatches) + " discrepancies");
                  c.notes << " " << graphs.size() << " graphs, " << instances << " instances, " << orbits
                          << " orbits";
              });

    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
    return failures == 0 ? 0 : 1;
}
