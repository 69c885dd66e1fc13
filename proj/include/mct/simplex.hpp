#ifndef MCT_SIMPLEX_HPP
#define MCT_SIMPLEX_HPP

#include <utility>
#include <vector>

#include "mct/rational.hpp"

namespace mct {

/// min c.x  subject to  sum_k coef_k * x_{idx_k} >= rhs per row,
/// 0 <= x_j (<= upper_j when set).
template <class V>
struct LinearProgramT {
    int nvars = 0;
    std::vector<V> cost;         // size nvars
    std::vector<bool> has_upper; // size nvars
    std::vector<V> upper;        // size nvars, used when has_upper
    struct Row {
        std::vector<std::pair<int, V>> terms;
        V rhs{};
    };
    std::vector<Row> rows;

    void resize(int n) {
        nvars = n;
        cost.assign(n, V(0));
        has_upper.assign(n, false);
        upper.assign(n, V(0));
    }
};

using LinearProgram = LinearProgramT<Rat>;
using LinearProgramF = LinearProgramT<double>;

enum class LpStatus { Optimal, Infeasible, Unbounded };

template <class V>
struct LpResultT {
    LpStatus status = LpStatus::Infeasible;
    V value{};
    std::vector<V> x;  // primal values
    std::vector<V> y;  // row duals; a valid packing certificate for
                       // >=-form problems without upper bounds
    long pivots = 0;
};

using LpResult = LpResultT<Rat>;
using LpResultF = LpResultT<double>;

/// Two-phase primal simplex on a dense rational tableau with native variable
/// bounds.  Deterministic: Dantzig pricing with lowest-index ties, switching
/// to Bland's rule after a pivot budget.  Exact over the rationals.
LpResult solve_lp(const LinearProgram& lp);

/// Same algorithm in double precision with a sign tolerance; for instances
/// above the exact-size caps.  Results are approximate and flagged as such
/// by callers.
LpResultF solve_lp_float(const LinearProgramF& lp);

}  // namespace mct

#endif
