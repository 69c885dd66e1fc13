#ifndef MCT_COAREA_HPP
#define MCT_COAREA_HPP

#include <cmath>
#include <utility>
#include <vector>

#include "mct/content.hpp"
#include "mct/metric_space.hpp"

namespace mct {

/// Query for the mapping contents: s is the exponent on image diameters,
/// t the exponent on domain diameters.
struct MappingContentQuery {
    const FiniteMetricSpace* domain = nullptr;
    const FiniteMetricSpace* codomain = nullptr;
    const LipschitzMapping* f = nullptr;
    Bitset target;
    double s = 0.0;
    double t = 0.0;
    double delta = HUGE_VAL;
};

struct MappingContentResult {
    Rat value;
    ResultMode mode = ResultMode::Exact;
    std::vector<Bitset> blocks;  // witness partition (a valid delta-cover)
};

/// Phi^{s,t}_delta(f,E): infimum of sum zeta^s(f(A_i)) zeta^t(A_i) over
/// delta-covers.  Costs are monotone under inclusion, so partitions suffice;
/// exact subset DP within the cap, greedy partition beyond it.
MappingContentResult phi_content(const MappingContentQuery& q,
                                 const EngineCaps& caps = {});

/// Same engine with the image factor replaced by the infinity-scale content
/// of the image: sum H^s_inf(f(A_i)) zeta^t(A_i).  Asserts tilde <= phi.
MappingContentResult tilde_content(const MappingContentQuery& q,
                                   const EngineCaps& caps = {});

struct RefineReport {
    std::vector<Bitset> refined;  // A_ij = A_i intersect f^-1(C_ij), empties dropped
    Rat refined_cost;             // sum zeta^s(f(A_ij)) zeta^t(A_ij)
    Rat outer_cost;               // sum zeta^t(A_i) * (inner cover cost of f(A_i))
};

/// Refinement step behind the identity of the two mapping contents: splits
/// each cover set along an inner cover of its image and certifies the
/// resulting cost chain exactly.
RefineReport refine_cover(const MappingContentQuery& q,
                          const std::vector<Bitset>& cover,
                          const std::vector<std::vector<Bitset>>& inner_covers);

Bitset fiber(const LipschitzMapping& f, int y, const Bitset& target);

struct Lemma16Report {
    double lip = 0.0;
    double constant = 0.0;        // omega_s*omega_t/omega_{s+t}
    double max_candidate_ratio = 0.0;  // lhs/rhs over candidates with rhs > 0
    Rat phi_value;
    Rat h_value;                  // H^{s+t}_delta(E)
    double optima_bound = 0.0;    // lip^s * C * h
    int candidates = 0;
};

/// Fixed-scale gauge comparison: for every candidate A of the scale-delta
/// family, zeta^s(f(A)) zeta^t(A) <= lip^s (w_s w_t / w_{s+t}) zeta^{s+t}(A)
/// within 1e-10 relative, and consequently the exact optima satisfy the same
/// bound.  Throws CertificateFailure on violation.
Lemma16Report lemma16_check(const MappingContentQuery& q, const EngineCaps& caps = {});

struct EilenbergReport {
    double s = 0.0, t = 0.0, delta = 0.0, delta0 = 0.0;
    std::vector<Bitset> cover_blocks;  // A_i, a delta-cover of E
    std::vector<Rat> weights;          // a_i = zeta^{s-t}(A_i)
    struct FiberRow {
        int y = -1;
        int fiber_size = 0;
        Rat fiber_content;  // H^{s-t}_{delta0}(f^-1(y) cap E), exact
        Rat rhs;            // sum of a_i over blocks whose image contains y
    };
    std::vector<FiberRow> fibers;  // one row per codomain point, ascending
    Rat witness_cost;              // sum a_i zeta^t(f(A_i))
    Rat phi_value;                 // Phi^{t,s-t}_delta(f,E)
    ResultMode phi_mode = ResultMode::Exact;
};

/// The covering step of the fixed-scale coarea verification: builds the
/// weighted cover {(zeta^{s-t}(A_i), f(A_i))} from a delta-cover of E and
/// certifies, for every codomain point y, that it dominates the exact fiber
/// content at scale delta0 >= delta.
EilenbergReport eilenberg_chain(const MappingContentQuery& q, double delta0,
                                const EngineCaps& caps = {});

struct DensityProfile {
    int x = -1;
    double t = 0.0;
    std::vector<double> radii;
    std::vector<double> ratios;   // content(f(B(x,r) cap E)) / (w_t r^t)
    std::vector<double> bounds;   // (lip + eps_Y/(2r))^t per radius
    double reported_min = 0.0;
    double cell_slack = 0.0;      // max over the window of bounds - lip^t
    bool exact = true;
};

/// Finite-scale stand-in for the lower density: image-content ratios over a
/// radius window; reported_min plays the role of the liminf, with the
/// cell-mode slack recorded rather than hidden.
DensityProfile lower_density_profile(const MappingContentQuery& q, int x,
                                     const std::vector<double>& radii,
                                     const EngineCaps& caps = {});

// ---- dyadic mapping content ------------------------------------------------

struct DyadicGrid {
    int level = 0;  // k: cells have side 2^-k
    int dim = 0;    // n+m
    FiniteMetricSpace lattice;  // (2^k+1)^dim corner points of [0,1]^dim
    int points_per_side = 0;

    int index_of(const std::vector<int>& coords) const;
};

/// Lattice discretization of the unit cube.  Capped at level 5 for dim <= 3.
DyadicGrid make_dyadic_grid(int level, int dim);

/// Point mask of a union of level-k cells (cells given by corner coords).
Bitset cells_to_points(const DyadicGrid& grid, const std::vector<std::vector<int>>& cells);

struct DyadicCube {
    int level = 0;
    std::vector<int> corner;  // in units of 2^-level
};

struct DyadicContentResult {
    Rat value;
    std::vector<DyadicCube> cover;  // chosen cubes, pairwise disjoint interiors
};

/// Exact optimum of sum H^n_inf(f(Q_i)) zeta^m(Q_i) over coverings of E by
/// dyadic cubes of level <= k, by DP over the dyadic tree.
DyadicContentResult mapping_content_dyadic(const DyadicGrid& grid,
                                           const FiniteMetricSpace& codomain,
                                           const LipschitzMapping& f,
                                           const Bitset& target_points,
                                           int n_exp, int m_exp,
                                           const EngineCaps& caps = {});

struct DavidsRow {
    Rat h_nm;     // dyadic mapping content
    Rat tilde;    // tilde content at delta = inf
    Rat phi;      // phi content at delta = inf
    bool zero_branch = false;
    double ratio = 1.0;       // h_nm / tilde when both positive
    Rat fiber_integral;       // weighted integral of fiber contents (zero branch)
};

/// Ratio probe for the dyadic-vs-intrinsic mapping contents.  Certifies the
/// ordering phi <= tilde <= h_nm exactly; on zero-content instances certifies
/// that the weighted integral of the grid-scale fiber contents vanishes.
DavidsRow davids_ratio_probe(const DyadicGrid& grid, const FiniteMetricSpace& codomain,
                             const LipschitzMapping& f, const Bitset& target_points,
                             int n_exp, int m_exp, const EngineCaps& caps = {});

struct AhlforsEstimate {
    double c_a = 0.0;  // 5th percentile of ball-mass ratios
    double c_b = 0.0;  // max ratio
    double r_min = 0.0, r_max = 0.0;
};

struct Theorem30Report {
    double s = 0.0, t = 0.0;
    AhlforsEstimate ahlfors;
    double lhs = 0.0;   // sum_y fiber_content(y) * cellmass_Y
    double rhs = 0.0;   // (w_{s-t} w_t / C_A) * sum_x density_min(x) * cellmass_X
    double ratio = 0.0; // lhs / rhs, 0 when rhs = 0
    std::vector<double> density_min;  // per target point, profile minimum
};

/// Numerical experiment comparing the two sides of the density-weighted
/// coarea bound on a cell-mode discretization.  Reports both numbers without
/// asserting an inequality between them.
Theorem30Report theorem30_report(const MappingContentQuery& q,
                                 const EngineCaps& caps = {});

struct PhiZeroReport {
    std::vector<double> deltas;  // descending, ending at the finest scale
    std::vector<Rat> values;
    bool zero_at_inf = false;
};

/// Scale-independence of vanishing: phi at delta = inf is zero iff it is
/// zero at every finer realized scale; asserted exactly.
PhiZeroReport phi_zero_scale_check(const MappingContentQuery& q,
                                   const EngineCaps& caps = {});

}  // namespace mct

#endif
