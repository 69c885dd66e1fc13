#ifndef MCT_COVERKIT_HPP
#define MCT_COVERKIT_HPP

#include <utility>
#include <vector>

#include "mct/metric_space.hpp"
#include "mct/rational.hpp"

namespace mct {

/// A closed ball as a covering candidate.  diameter is the mode-aware
/// diameter of the member set, not 2r.
struct CandidateBall {
    int center = -1;
    double radius = 0.0;
    Bitset members;
    double diameter = 0.0;
};

CandidateBall make_ball(const FiniteMetricSpace& space, int center, double radius);

/// Weighted covering of a target set by closed balls: sum of a_i over balls
/// containing x is >= 1 for every x in the target, in exact rationals.
struct WeightedBallCover {
    const FiniteMetricSpace* space = nullptr;
    Bitset target;
    std::vector<CandidateBall> balls;
    std::vector<Rat> a;
};

/// Throws InfeasibleCover with the witnessing point if the invariant fails.
void check_cover_invariant(const WeightedBallCover& cover);

struct SelectionOptions {
    bool exchange_check = true;  // per-optimum minimizer diagnostic
    int exact_cap = 200;         // above this (balls or points): float LP fallback
};

struct SelectionResult {
    std::vector<int> selected;  // ball indices, in selection order
    Rat achieved;               // sum of b over selected
    Rat certified_bound;        // 2 * sum a_i b_i (8 * sum for block mode)
    double dilation = 3.0;
    bool approximate = false;   // float LP fallback was used
    bool exchange_checked = false;
    std::vector<std::pair<int, int>> blocks;  // block mode: [begin,end) index ranges
};

/// Weighted covering selection: repeatedly minimize psi(alpha) = sum alpha_i b_i
/// over the constrained weight polytope, drop zero-weight balls, otherwise
/// select the largest-diameter ball, peel off its 3-dilate and recurse on the
/// disjoint remainder.  Certifies: selected balls pairwise disjoint, target
/// covered by 3-dilates, and sum b over selection <= 2 sum a_i b_i.
SelectionResult nazarov_select(const WeightedBallCover& cover, const std::vector<Rat>& b,
                               const SelectionOptions& opt = {});

/// Block version: packs the series a_i b_i into consecutive blocks with block
/// k at most 4^-k of the total, reweights block k by 2^{k+1} and runs the
/// selection per block.  Certifies sum b <= 8 sum a_i b_i; selected balls
/// need not be globally disjoint.
SelectionResult block_select(const WeightedBallCover& cover, const std::vector<Rat>& b,
                             const SelectionOptions& opt = {});

struct SaturnResult {
    std::vector<int> selected;        // pairwise disjoint subfamily, selection order
    std::vector<int> representative;  // per family member: index of its cluster's rep
};

/// 5r-style selection for arbitrary bounded sets: processes dyadic diameter
/// classes in order, greedily keeps maximal disjoint subfamilies, then adds
/// uncovered zero-diameter sets as their own clusters.  Every input set
/// intersects its representative and has at most twice its diameter.
SaturnResult saturn_select(const FiniteMetricSpace& space,
                           const std::vector<Bitset>& family);

}  // namespace mct

#endif
