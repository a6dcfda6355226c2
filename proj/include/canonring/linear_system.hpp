// Copyright (c) canonring contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "canonring/graph.hpp"

namespace canonring {

/// Element of R(G, mD): a rational function f with div(f) + m*D >= 0.
///
/// `function` is the minimum-0 representative of the constant-shift orbit;
/// `slice` is the representative with value 0 at vertex 0, which is the
/// coordinate system used for polyhedral bounds and the graded cone.
struct RgdElement {
    RationalFunction function;
    Integer degree;
    IntVector slice;

    friend bool operator==(const RgdElement& a, const RgdElement& b) {
        return a.degree == b.degree && a.function == b.function;
    }
    friend bool operator<(const RgdElement& a, const RgdElement& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        return a.function < b.function;
    }
};

/// Wraps f after checking membership in R(G, m*D). Throws NotMember.
[[nodiscard]] RgdElement make_element(const FiniteGraph& g, const Divisor& d, const RationalFunction& f,
                                      const Integer& m = 1);
[[nodiscard]] bool is_member(const FiniteGraph& g, const Divisor& d, const RationalFunction& f,
                             const Integer& m = 1);

struct EnumerationOptions {
    // Hard cap on the number of returned orbits; exceeding it throws BudgetExceeded.
    std::size_t max_elements = 2'000'000;
};

/// Exact vertices of the slice {x : laplacian*x + m*d >= 0, x_0 = 0}.
///
/// For a connected graph and deg d > 0 this polytope is a simplex: vertex j
/// is the unique slice point where every constraint except row j is tight.
/// For deg d == 0 it is at most one point, for deg d < 0 it is empty.
[[nodiscard]] std::vector<RatVector> slice_vertices(const FiniteGraph& g, const Divisor& d, const Integer& m = 1);

/// All orbits of R(G, m*D) under constant shifts, sorted.
[[nodiscard]] std::vector<RgdElement> rgd_enumerate(const FiniteGraph& g, const Divisor& d, const Integer& m = 1,
                                                    const EnumerationOptions& opts = {});

/// Proper nonempty vertex subset.
class FiringSubset {
  public:
    /// Throws EmptyOrFullSubset.
    FiringSubset(Index vertex_count, const std::vector<Index>& members);
    static FiringSubset from_mask(Index vertex_count, std::uint64_t mask);

    [[nodiscard]] Index vertex_count() const { return static_cast<Index>(in_.size()); }
    [[nodiscard]] bool contains(Index v) const { return in_[static_cast<std::size_t>(v)]; }
    [[nodiscard]] std::vector<Index> members() const;

    friend bool operator==(const FiringSubset&, const FiringSubset&) = default;

  private:
    std::vector<bool> in_;
};

/// The chip-firing move CF(V'): 0 on V', -1 elsewhere.
[[nodiscard]] RationalFunction cf_move(const FiringSubset& subset);

/// True iff e + div(CF(subset)) is effective.
[[nodiscard]] bool can_fire(const FiniteGraph& g, const Divisor& e, const FiringSubset& subset);

/// Largest subset of `allowed` that fires on the effective divisor e (may be empty).
[[nodiscard]] std::vector<bool> maximal_firing_subset(const FiniteGraph& g, const Divisor& e,
                                                      std::vector<bool> allowed);

/// Two proper subsets covering V that both fire on e, if any exist.
[[nodiscard]] std::optional<std::pair<FiringSubset, FiringSubset>> covering_firing_pair(const FiniteGraph& g,
                                                                                        const Divisor& e);

// Exhaustive subset scan is exponential; it refuses graphs above this size.
inline constexpr Index kMaxExhaustiveVertices = 24;

/// Every proper subset that fires on e. Throws BudgetExceeded above kMaxExhaustiveVertices.
[[nodiscard]] std::vector<FiringSubset> firing_subsets(const FiniteGraph& g, const Divisor& e);

/// f is extremal in R(G, m*D) iff no two proper subsets covering V both fire on m*D + div(f).
[[nodiscard]] bool is_extremal(const FiniteGraph& g, const Divisor& d, const RationalFunction& f,
                               const Integer& m = 1);

[[nodiscard]] std::vector<RgdElement> extremals(const FiniteGraph& g, const Divisor& d, const Integer& m = 1,
                                                const EnumerationOptions& opts = {});

// Tropical operations on vertex functions.
[[nodiscard]] RationalFunction oplus(const RationalFunction& f, const RationalFunction& g);
[[nodiscard]] RationalFunction odot(const RationalFunction& f, const RationalFunction& g);
[[nodiscard]] RationalFunction scale(const Integer& c, const RationalFunction& f);

/// Graded product: degrees add.
[[nodiscard]] RgdElement odot(const RgdElement& f, const RgdElement& g);

}  // namespace canonring
