#ifndef MCT_CONTENT_HPP
#define MCT_CONTENT_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "mct/metric_space.hpp"
#include "mct/rational.hpp"

namespace mct {

/// Covering candidate: a point set with its mode-aware diameter and exact
/// rational gauge cost.
struct Candidate {
    Bitset mask;
    double diameter = 0.0;
    Rat cost;
};

enum class FamilyKind { AutoCliques, Balls, User };

struct CoverInstance {
    const FiniteMetricSpace* space = nullptr;
    Bitset target;
    double delta = HUGE_VAL;
    std::vector<Candidate> family;
    FamilyKind kind = FamilyKind::User;
};

enum class ResultMode { Exact, GreedyUpper, Lp, DualLower };

const char* result_mode_name(ResultMode mode);

struct ContentResult {
    Rat value;
    ResultMode mode = ResultMode::Exact;
    std::vector<int> witness;                  // integer cover, candidate indices
    std::vector<std::pair<int, Rat>> weights;  // fractional witness (candidate, a > 0)
    std::vector<std::pair<int, Rat>> dual;     // packing certificate (point, y > 0)
    long lp_pivots = 0;
};

struct EngineCaps {
    int exact_cover_cap = 18;  // |E| cap for exact branch & bound
    int dp_cap = 15;           // |E| cap for the partition DP
    int family_cap = 50000;    // candidate enumeration cap
};

/// All maximal cliques of the distance-threshold graphs G_d on E, for every
/// realized distance d (and d = 0) whose cell-aware diameter fits delta.
/// Any set of diameter d' <= delta sits inside a maximal clique of G_{d'}
/// of no larger diameter or cost, so optima over this family equal optima
/// over all subsets.  Sorted by lexicographic mask order.
std::vector<Candidate> enumerate_candidates(const FiniteMetricSpace& space,
                                            const Bitset& target, double delta,
                                            double s, const EngineCaps& caps = {});

/// Exact minimum-cost integer cover by branch and bound (greedy upper bound,
/// LP-dual lower bound) for |E| within the cap; greedy-upper beyond it.
ContentResult min_cover(const CoverInstance& inst, const EngineCaps& caps = {});

/// Exact LP relaxation with a verified dual packing certificate
/// (strong duality asserted in exact rationals).
ContentResult fractional_cover(const CoverInstance& inst, const EngineCaps& caps = {});

/// Independent oracle: exact min over partitions of E into blocks of
/// diameter <= delta of the summed gauge cost, by subset DP.
Rat partition_dp_oracle(const FiniteMetricSpace& space, const Bitset& target,
                        double s, double delta, const EngineCaps& caps = {});

/// Generic partition DP over local masks; used by the oracle and by the
/// mapping-content engines.  cost is consulted once per feasible block.
struct PartitionResult {
    Rat value;
    std::vector<uint32_t> blocks;
};
PartitionResult partition_optimum(int k, const std::function<bool(uint32_t)>& feasible,
                                  const std::function<Rat(uint32_t)>& cost);

ContentResult hausdorff_content(const FiniteMetricSpace& space, const Bitset& target,
                                double s, double delta, const EngineCaps& caps = {});

ContentResult weighted_content(const FiniteMetricSpace& space, const Bitset& target,
                               double s, double delta, const EngineCaps& caps = {});

/// Nonnegative step function on the space; infinite values make the
/// weighted-integral LP unbounded and are reported as such.
struct StepFunction {
    std::vector<Rat> values;
    std::vector<bool> infinite;

    static StepFunction from_doubles(const std::vector<double>& v);
};

/// Weighted integral at fixed scale: min sum a_A zeta^s(A) subject to
/// sum_{A contains x} a_A >= f(x), exact rationals.
ContentResult weighted_integral_step(const FiniteMetricSpace& space,
                                     const StepFunction& f, double s, double delta,
                                     const EngineCaps& caps = {});

/// One link of the certified chain at scale delta:
///   dual_lower = lambda <= h_delta   and   h_6delta <= rounded <= 8*6^s*lambda.
/// rounded comes from wrapping each positive-weight LP set in an enclosing
/// ball and running the block selection with the gauge costs as weights.
struct BoundChain {
    double s = 0.0;
    double delta = 0.0;
    double delta6 = 0.0;
    Rat dual_lower;    // packing certificate value (= lambda, strong duality)
    Rat lambda;        // weighted content, LP optimum
    Rat h_delta;       // integer optimum at delta
    Rat h_6delta;      // integer optimum at 6*delta
    Rat rounded_cost;  // cost of the selected 3-dilated ball cover
    Rat bound;         // 8 * 6^s * lambda (6^s as the exact double rational)
    int selected_balls = 0;
};

BoundChain certified_bounds(const FiniteMetricSpace& space, const Bitset& target,
                            double s, double delta, const EngineCaps& caps = {});

/// Same chain over a user-supplied family (h_delta/lambda on that family;
/// the 6delta side always uses the auto-clique machinery).
BoundChain certified_bounds_family(const CoverInstance& inst, double s,
                                   const EngineCaps& caps = {});

}  // namespace mct

#endif
