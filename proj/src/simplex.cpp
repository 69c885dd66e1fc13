#include "mct/simplex.hpp"

#include <cmath>

#include "mct/errors.hpp"

namespace mct {

namespace {

inline int scalar_sgn(const Rat& q) { return mpq_sgn(q.get_mpq_t()); }
inline int scalar_sgn(double v) {
    const double tol = 1e-11;
    if (v > tol) return 1;
    if (v < -tol) return -1;
    return 0;
}

template <class V>
class Tableau {
public:
    explicit Tableau(const LinearProgramT<V>& lp) : lp_(lp) {
        m_ = int(lp.rows.size());
        n_ = lp.nvars;
        ncols_ = n_ + m_;  // structural + surplus; artificials appended below

        std::vector<std::vector<V>> rows(m_, std::vector<V>(ncols_, V(0)));
        rhs_val_.assign(m_, V(0));
        basis_.assign(m_, -1);
        for (int i = 0; i < m_; ++i) {
            for (const auto& [j, v] : lp.rows[i].terms) rows[i][j] += v;
            rows[i][n_ + i] = V(-1);  // surplus
        }
        // initial point: all structural at lower bound 0
        int n_art = 0;
        for (int i = 0; i < m_; ++i)
            if (scalar_sgn(lp.rows[i].rhs) > 0) ++n_art;
        T_.assign(m_, std::vector<V>(ncols_ + n_art, V(0)));
        for (int i = 0; i < m_; ++i) {
            const V& b = lp.rows[i].rhs;
            if (scalar_sgn(b) > 0) {
                int art = ncols_ + int(artificial_cols_.size());
                artificial_cols_.push_back(art);
                for (int j = 0; j < ncols_; ++j) T_[i][j] = rows[i][j];
                T_[i][art] = V(1);
                basis_[i] = art;
                rhs_val_[i] = b;
            } else {
                // negate the row so the surplus can be basic at -b >= 0
                for (int j = 0; j < ncols_; ++j) T_[i][j] = -rows[i][j];
                basis_[i] = n_ + i;
                rhs_val_[i] = -b;
            }
        }
        total_cols_ = ncols_ + n_art;
        at_upper_.assign(total_cols_, false);
        is_basic_.assign(total_cols_, false);
        banned_.assign(total_cols_, false);
        for (int i = 0; i < m_; ++i) is_basic_[basis_[i]] = true;
    }

    LpResultT<V> run() {
        LpResultT<V> res;
        // phase 1: drive artificials to zero
        if (!artificial_cols_.empty()) {
            std::vector<V> c1(total_cols_, V(0));
            for (int a : artificial_cols_) c1[a] = V(1);
            load_objective(c1);
            iterate();
            if (scalar_sgn(obj_) != 0) {
                res.status = LpStatus::Infeasible;
                res.pivots = pivots_;
                return res;
            }
            // artificials are pinned at zero from here on
            for (int a : artificial_cols_) banned_[a] = true;
        }
        // phase 2
        std::vector<V> c2(total_cols_, V(0));
        for (int j = 0; j < n_; ++j) c2[j] = lp_.cost[j];
        load_objective(c2);
        bool bounded = iterate();
        if (!bounded) {
            res.status = LpStatus::Unbounded;
            res.pivots = pivots_;
            return res;
        }
        res.status = LpStatus::Optimal;
        res.value = obj_;
        res.x.assign(n_, V(0));
        for (int j = 0; j < n_; ++j)
            if (!is_basic_[j] && at_upper_[j]) res.x[j] = lp_.upper[j];
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < n_) res.x[basis_[i]] = rhs_val_[i];
        // duals from the surplus reduced costs, recomputed from the final basis
        res.y.assign(m_, V(0));
        for (int i = 0; i < m_; ++i) {
            V d(0);
            for (int k = 0; k < m_; ++k)
                if (basis_[k] < n_ && scalar_sgn(T_[k][n_ + i]) != 0)
                    d -= lp_.cost[basis_[k]] * T_[k][n_ + i];
            res.y[i] = d;
        }
        res.pivots = pivots_;
        return res;
    }

private:
    bool col_has_upper(int j) const {
        if (j < n_) return lp_.has_upper[j];
        if (j >= ncols_) return banned_[j];  // pinned artificial: upper 0
        return false;                        // surplus
    }
    V col_upper(int j) const {
        if (j < n_) return lp_.upper[j];
        return V(0);  // pinned artificial
    }

    void load_objective(const std::vector<V>& c) {
        d_.assign(total_cols_, V(0));
        for (int j = 0; j < total_cols_; ++j) {
            if (is_basic_[j]) continue;
            V v = c[j];
            for (int i = 0; i < m_; ++i)
                if (scalar_sgn(c[basis_[i]]) != 0 && scalar_sgn(T_[i][j]) != 0)
                    v -= c[basis_[i]] * T_[i][j];
            d_[j] = v;
        }
        obj_ = V(0);
        for (int i = 0; i < m_; ++i) obj_ += c[basis_[i]] * rhs_val_[i];
        for (int j = 0; j < total_cols_; ++j)
            if (!is_basic_[j] && at_upper_[j] && scalar_sgn(c[j]) != 0)
                obj_ += c[j] * col_upper(j);
    }

    /// Returns false when unbounded.
    bool iterate() {
        const long bland_after = 20L * (m_ + total_cols_) + 200;
        const long hard_cap = 2000000L;
        long local = 0;
        while (true) {
            require(++local < hard_cap, ErrorCode::LpFailure,
                    "simplex: pivot limit exceeded");
            bool bland = local > bland_after;
            int j_in = -1, dir = 0;
            V best_score{};
            for (int j = 0; j < total_cols_; ++j) {
                if (is_basic_[j] || banned_[j]) continue;
                int s = scalar_sgn(d_[j]);
                int improving_dir = 0;
                if (!at_upper_[j] && s < 0) improving_dir = 1;
                else if (at_upper_[j] && s > 0) improving_dir = -1;
                if (improving_dir == 0) continue;
                if (bland) { j_in = j; dir = improving_dir; break; }
                V score = improving_dir > 0 ? d_[j] : -d_[j];  // negative
                if (j_in < 0 || score < best_score) {
                    j_in = j;
                    dir = improving_dir;
                    best_score = score;
                }
            }
            if (j_in < 0) return true;  // optimal

            // ratio test
            bool have_row = false, row_to_upper = false;
            V theta_row{};
            int r = -1;
            for (int i = 0; i < m_; ++i) {
                int s = scalar_sgn(T_[i][j_in]);
                if (s == 0) continue;
                int g = dir > 0 ? s : -s;
                V cand;
                bool to_upper;
                if (g > 0) {
                    cand = rhs_val_[i] / (dir > 0 ? T_[i][j_in] : -T_[i][j_in]);
                    to_upper = false;
                } else if (col_has_upper(basis_[i])) {
                    V denom = dir > 0 ? -T_[i][j_in] : T_[i][j_in];
                    cand = (col_upper(basis_[i]) - rhs_val_[i]) / denom;
                    to_upper = true;
                } else {
                    continue;
                }
                if (scalar_sgn(cand) < 0) cand = V(0);  // degenerate round-off
                if (!have_row || cand < theta_row ||
                    (cand == theta_row && basis_[i] < basis_[r])) {
                    have_row = true;
                    theta_row = cand;
                    r = i;
                    row_to_upper = to_upper;
                }
            }
            bool own = col_has_upper(j_in);
            if (!have_row && !own) return false;  // unbounded ray

            if (own && (!have_row || col_upper(j_in) < theta_row)) {
                // bound flip, no basis change
                V delta = dir > 0 ? col_upper(j_in) : -col_upper(j_in);
                if (scalar_sgn(delta) != 0) {
                    for (int i = 0; i < m_; ++i)
                        if (scalar_sgn(T_[i][j_in]) != 0)
                            rhs_val_[i] -= T_[i][j_in] * delta;
                    obj_ += d_[j_in] * delta;
                }
                at_upper_[j_in] = !at_upper_[j_in];
                continue;
            }

            // pivot on (r, j_in)
            ++pivots_;
            const V theta = theta_row;
            V x_enter = dir > 0 ? theta : V(col_upper(j_in) - theta);
            if (scalar_sgn(theta) != 0) {
                V step = dir > 0 ? theta : -theta;
                for (int i = 0; i < m_; ++i)
                    if (i != r && scalar_sgn(T_[i][j_in]) != 0)
                        rhs_val_[i] -= T_[i][j_in] * step;
                obj_ += d_[j_in] * step;
            }
            int leaving = basis_[r];
            at_upper_[leaving] = row_to_upper;
            is_basic_[leaving] = false;

            V piv = T_[r][j_in];
            for (int k = 0; k < total_cols_; ++k)
                if (scalar_sgn(T_[r][k]) != 0) T_[r][k] /= piv;
            T_[r][j_in] = V(1);
            for (int i = 0; i < m_; ++i) {
                if (i == r) continue;
                if (scalar_sgn(T_[i][j_in]) == 0) continue;
                V f = T_[i][j_in];
                for (int k = 0; k < total_cols_; ++k)
                    if (scalar_sgn(T_[r][k]) != 0) T_[i][k] -= f * T_[r][k];
                T_[i][j_in] = V(0);
            }
            V dj = d_[j_in];
            if (scalar_sgn(dj) != 0) {
                for (int k = 0; k < total_cols_; ++k)
                    if (scalar_sgn(T_[r][k]) != 0) d_[k] -= dj * T_[r][k];
                d_[j_in] = V(0);
            }

            basis_[r] = j_in;
            is_basic_[j_in] = true;
            at_upper_[j_in] = false;
            rhs_val_[r] = x_enter;
        }
    }

    const LinearProgramT<V>& lp_;
    int m_ = 0, n_ = 0, ncols_ = 0, total_cols_ = 0;
    std::vector<std::vector<V>> T_;
    std::vector<V> rhs_val_;
    std::vector<V> d_;
    std::vector<int> basis_;
    std::vector<int> artificial_cols_;
    std::vector<bool> at_upper_, is_basic_, banned_;
    V obj_{};
    long pivots_ = 0;
};

template <class V>
LpResultT<V> solve_impl(const LinearProgramT<V>& lp) {
    require(int(lp.cost.size()) == lp.nvars &&
                int(lp.has_upper.size()) == lp.nvars &&
                int(lp.upper.size()) == lp.nvars,
            ErrorCode::LpFailure, "solve_lp: inconsistent problem arrays");
    for (const auto& row : lp.rows)
        for (const auto& [j, v] : row.terms)
            require(j >= 0 && j < lp.nvars, ErrorCode::LpFailure,
                    "solve_lp: column index out of range");
    if (lp.rows.empty()) {
        LpResultT<V> res;
        res.status = LpStatus::Optimal;
        res.value = V(0);
        res.x.assign(lp.nvars, V(0));
        for (int j = 0; j < lp.nvars; ++j)
            if (scalar_sgn(lp.cost[j]) < 0) {
                require(lp.has_upper[j], ErrorCode::LpFailure,
                        "solve_lp: unbounded unconstrained variable");
                res.x[j] = lp.upper[j];
                res.value += lp.cost[j] * lp.upper[j];
            }
        return res;
    }
    Tableau<V> tab(lp);
    return tab.run();
}

}  // namespace

LpResult solve_lp(const LinearProgram& lp) { return solve_impl<Rat>(lp); }

LpResultF solve_lp_float(const LinearProgramF& lp) { return solve_impl<double>(lp); }

}  // namespace mct
