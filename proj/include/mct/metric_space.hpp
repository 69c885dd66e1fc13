#ifndef MCT_METRIC_SPACE_HPP
#define MCT_METRIC_SPACE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mct/bitset.hpp"
#include "mct/errors.hpp"

namespace mct {

struct ValidationIssue {
    ErrorCode code;
    int i = -1, j = -1, k = -1;
    std::string message;
};

struct ValidationReport {
    bool ok = true;
    std::vector<ValidationIssue> issues;  // first violation per axiom scan
};

/// A finite metric space: labelled points plus a symmetric distance matrix.
/// resolution_eps > 0 switches on cell mode, where each sample point stands
/// for a cell of that size and diameters of nonempty sets are inflated by
/// eps (so singletons carry nonzero gauge cost).
class FiniteMetricSpace {
public:
    FiniteMetricSpace() : id_(next_id()) {}
    FiniteMetricSpace(std::vector<std::string> labels,
                      std::vector<std::vector<double>> dist,
                      double resolution_eps);

    int size() const { return int(labels_.size()); }
    uint64_t id() const { return id_; }
    double eps() const { return eps_; }
    bool cell_mode() const { return eps_ > 0.0; }

    double dist(int i, int j) const { return dist_[i][j]; }
    const std::vector<std::vector<double>>& dist_matrix() const { return dist_; }
    const std::string& label(int i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }

    Bitset empty_subset() const { return Bitset(size()); }
    Bitset full_subset() const {
        Bitset b(size());
        for (int i = 0; i < size(); ++i) b.set(i);
        return b;
    }

    /// Same points and distances, different cell resolution.
    FiniteMetricSpace with_eps(double eps) const;
    /// All distances and eps multiplied by c > 0.
    FiniteMetricSpace scaled(double c) const;

private:
    static uint64_t next_id();

    uint64_t id_ = 0;
    std::vector<std::string> labels_;
    std::vector<std::vector<double>> dist_;
    double eps_ = 0.0;
};

/// Subset of a space's points, tagged with the space id it belongs to.
struct PointSubset {
    uint64_t space_id = 0;
    Bitset mask;

    PointSubset() = default;
    PointSubset(const FiniteMetricSpace& space, Bitset m)
        : space_id(space.id()), mask(std::move(m)) {
        require(mask.size() == space.size(), ErrorCode::DomainError,
                "PointSubset: mask length mismatch");
    }
};

/// Explicit point-to-point map with its cached Lipschitz constant.
struct LipschitzMapping {
    uint64_t domain_id = 0;
    uint64_t codomain_id = 0;
    std::vector<int> image;  // codomain index per domain point
    double lip = 0.0;
};

// Axioms checked: zero diagonal, nonnegativity, symmetry, triangle
// inequality within 1e-9 relative tolerance.
ValidationReport validate(const FiniteMetricSpace& space);

Bitset closed_ball(const FiniteMetricSpace& space, int center, double r);

/// Point mode: max pairwise distance (0 for empty and singleton sets).
/// Cell mode: that value plus resolution_eps for nonempty sets.
double diam(const FiniteMetricSpace& space, const Bitset& subset);

/// Raw max pairwise distance, ignoring cell mode.
double diam_pointset(const FiniteMetricSpace& space, const Bitset& subset);

double lipschitz_constant(const FiniteMetricSpace& domain,
                          const FiniteMetricSpace& codomain,
                          const std::vector<int>& image);

LipschitzMapping make_mapping(const FiniteMetricSpace& domain,
                              const FiniteMetricSpace& codomain,
                              std::vector<int> image);

/// Image mask of a subset under a mapping.
Bitset map_image(const LipschitzMapping& f, const Bitset& subset,
                 const FiniteMetricSpace& codomain);

/// Greedy upper estimate of the metric doubling constant: max number of
/// radius r/2 balls the greedy cover of any B(x, r) on a radius grid needs.
int doubling_probe(const FiniteMetricSpace& space);

// ---- generators -----------------------------------------------------------

constexpr int kDefaultPointCap = 4096;

FiniteMetricSpace gen_cantor(int level, int point_cap = kDefaultPointCap);
FiniteMetricSpace gen_sierpinski_carpet(int level, int point_cap = kDefaultPointCap);
FiniteMetricSpace gen_grid(int n, int dims, int point_cap = kDefaultPointCap);
FiniteMetricSpace gen_random_points(int n, int dims, uint64_t seed,
                                    int point_cap = kDefaultPointCap);
/// Product with the sup metric; eps is the max of the factor resolutions.
FiniteMetricSpace gen_product(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                              int point_cap = kDefaultPointCap);

/// Parse a generator string: cantor:K, carpet:K, grid:N[:D],
/// random:N:D:SEED, product:(A)x(B).
FiniteMetricSpace generate(const std::string& spec, int point_cap = kDefaultPointCap);

}  // namespace mct

#endif
