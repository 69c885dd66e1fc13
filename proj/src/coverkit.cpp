#include "mct/coverkit.hpp"

#include <algorithm>
#include <map>

#include "mct/simplex.hpp"

namespace mct {

CandidateBall make_ball(const FiniteMetricSpace& space, int center, double radius) {
    CandidateBall b;
    b.center = center;
    b.radius = radius;
    b.members = closed_ball(space, center, radius);
    b.diameter = diam(space, b.members);
    return b;
}

void check_cover_invariant(const WeightedBallCover& cover) {
    require(cover.space != nullptr, ErrorCode::InfeasibleCover, "cover has no space");
    require(cover.balls.size() == cover.a.size(), ErrorCode::InfeasibleCover,
            "cover: weight count does not match ball count");
    for (const Rat& w : cover.a)
        require(w >= 0, ErrorCode::InfeasibleCover, "cover: negative weight");
    for (int x = cover.target.first(); x >= 0; x = cover.target.next(x)) {
        Rat s(0);
        for (size_t i = 0; i < cover.balls.size(); ++i)
            if (cover.balls[i].members.test(x)) s += cover.a[i];
        require(s >= 1, ErrorCode::InfeasibleCover,
                "cover invariant fails at point " + std::to_string(x));
    }
}

namespace {

struct LpOutcome {
    std::vector<Rat> alpha;       // per active ball
    std::vector<char> is_zero;    // per active ball
    Rat value;
    bool approximate = false;
};

// min sum alpha_i b_i over { 0 <= alpha <= 1, sum alpha_i chi_{B_i} >= 1 on E }
LpOutcome solve_weight_lp(const WeightedBallCover& cover, const std::vector<Rat>& b,
                          const std::vector<int>& active, const Bitset& target,
                          bool approximate) {
    const int n = int(active.size());
    LpOutcome out;
    out.approximate = approximate;

    // constraint rows deduplicated by ball-membership pattern
    std::map<std::vector<int>, int> patterns;
    std::vector<std::vector<int>> rows;
    for (int x = target.first(); x >= 0; x = target.next(x)) {
        std::vector<int> pat;
        for (int k = 0; k < n; ++k)
            if (cover.balls[active[k]].members.test(x)) pat.push_back(k);
        if (pat.empty()) fail(ErrorCode::InfeasibleCover,
                              "target point " + std::to_string(x) + " in no active ball");
        if (patterns.emplace(pat, int(rows.size())).second) rows.push_back(std::move(pat));
    }

    if (!approximate) {
        LinearProgram lp;
        lp.resize(n);
        for (int k = 0; k < n; ++k) {
            lp.cost[k] = b[active[k]];
            lp.has_upper[k] = true;
            lp.upper[k] = 1;
        }
        for (const auto& pat : rows) {
            LinearProgram::Row row;
            for (int k : pat) row.terms.push_back({k, Rat(1)});
            row.rhs = 1;
            lp.rows.push_back(std::move(row));
        }
        LpResult res = solve_lp(lp);
        if (res.status == LpStatus::Infeasible)
            fail(ErrorCode::InfeasibleCover, "weight LP infeasible");
        require(res.status == LpStatus::Optimal, ErrorCode::LpFailure,
                "weight LP did not reach an optimum");
        out.alpha = std::move(res.x);
        out.value = res.value;
        out.is_zero.resize(n);
        for (int k = 0; k < n; ++k) out.is_zero[k] = (out.alpha[k] == 0);
        return out;
    }

    LinearProgramF lp;
    lp.resize(n);
    for (int k = 0; k < n; ++k) {
        lp.cost[k] = rat_to_double(b[active[k]]);
        lp.has_upper[k] = true;
        lp.upper[k] = 1.0;
    }
    for (const auto& pat : rows) {
        LinearProgramF::Row row;
        for (int k : pat) row.terms.push_back({k, 1.0});
        row.rhs = 1.0;
        lp.rows.push_back(std::move(row));
    }
    LpResultF res = solve_lp_float(lp);
    if (res.status == LpStatus::Infeasible)
        fail(ErrorCode::InfeasibleCover, "weight LP infeasible (float mode)");
    require(res.status == LpStatus::Optimal, ErrorCode::LpFailure,
            "weight LP did not reach an optimum (float mode)");
    out.alpha.resize(n);
    out.is_zero.resize(n);
    out.value = 0;
    for (int k = 0; k < n; ++k) {
        out.alpha[k] = rat_from_double(res.x[k]);
        out.is_zero[k] = (res.x[k] < 1e-7);
        out.value += out.alpha[k] * b[active[k]];
    }
    return out;
}

void exchange_check(const WeightedBallCover& cover, const std::vector<Rat>& b,
                    const std::vector<int>& active, const std::vector<Rat>& alpha) {
    // minimizer property: for every i1, the alpha-mass on balls meeting B_{i1}
    // carries at least b_{i1}/2
    for (size_t p = 0; p < active.size(); ++p) {
        int i1 = active[p];
        Rat lhs(0);
        for (size_t q = 0; q < active.size(); ++q)
            if (cover.balls[active[q]].members.intersects(cover.balls[i1].members) ||
                active[q] == i1)
                lhs += alpha[q] * b[active[q]];
        require(2 * lhs >= b[i1], ErrorCode::CertificateFailure,
                "exchange inequality fails at ball " + std::to_string(i1));
    }
}

}  // namespace

SelectionResult nazarov_select(const WeightedBallCover& cover, const std::vector<Rat>& b,
                               const SelectionOptions& opt) {
    require(!cover.balls.empty(), ErrorCode::EmptyFamily, "no balls in cover");
    require(b.size() == cover.balls.size(), ErrorCode::InfeasibleCover,
            "selection weight count does not match ball count");
    for (const Rat& w : b)
        require(w >= 0, ErrorCode::InfeasibleCover, "negative selection weight");
    check_cover_invariant(cover);
    const FiniteMetricSpace& space = *cover.space;

    SelectionResult res;
    res.approximate = int(cover.balls.size()) > opt.exact_cap ||
                      cover.target.count() > opt.exact_cap;
    res.exchange_checked = opt.exchange_check && !res.approximate;

    Bitset remaining = cover.target;
    std::vector<int> active(cover.balls.size());
    for (size_t i = 0; i < active.size(); ++i) active[i] = int(i);

    while (remaining.any()) {
        require(!active.empty(), ErrorCode::InfeasibleCover,
                "uncovered target points remain with no active balls");
        LpOutcome lp = solve_weight_lp(cover, b, active, remaining, res.approximate);

        std::vector<int> positive;
        for (size_t k = 0; k < active.size(); ++k)
            if (!lp.is_zero[k]) positive.push_back(int(k));
        if (positive.size() < active.size()) {
            // drop every zero-weight ball at once and re-solve
            std::vector<int> next;
            for (int k : positive) next.push_back(active[k]);
            active = std::move(next);
            continue;
        }

        if (res.exchange_checked) exchange_check(cover, b, active, lp.alpha);

        // largest diameter, ties by lowest index
        int pick = 0;
        for (size_t k = 1; k < active.size(); ++k)
            if (cover.balls[active[k]].diameter > cover.balls[active[pick]].diameter)
                pick = int(k);
        int i1 = active[pick];
        res.selected.push_back(i1);

        Bitset dilate = closed_ball(space, cover.balls[i1].center,
                                    3.0 * cover.balls[i1].radius);
        remaining = remaining.minus(dilate);
        std::vector<int> next;
        for (int i : active)
            if (i != i1 && !cover.balls[i].members.intersects(cover.balls[i1].members))
                next.push_back(i);
        active = std::move(next);
    }

    res.achieved = 0;
    for (int i : res.selected) res.achieved += b[i];
    res.certified_bound = 0;
    for (size_t i = 0; i < cover.balls.size(); ++i)
        res.certified_bound += cover.a[i] * b[i];
    res.certified_bound *= 2;

    // postconditions, asserted on every run
    for (size_t p = 0; p < res.selected.size(); ++p)
        for (size_t q = p + 1; q < res.selected.size(); ++q)
            require(!cover.balls[res.selected[p]].members.intersects(
                        cover.balls[res.selected[q]].members),
                    ErrorCode::CertificateFailure, "selected balls not disjoint");
    Bitset covered(space.size());
    for (int i : res.selected)
        covered = covered | closed_ball(space, cover.balls[i].center,
                                        3.0 * cover.balls[i].radius);
    require(cover.target.subset_of(covered), ErrorCode::CertificateFailure,
            "3-dilates of the selection do not cover the target");
    if (res.approximate)
        require(rat_to_double(res.achieved) <=
                    rat_to_double(res.certified_bound) * (1.0 + 1e-7) + 1e-12,
                ErrorCode::CertificateFailure, "selection bound fails (float mode)");
    else
        require(res.achieved <= res.certified_bound, ErrorCode::CertificateFailure,
                "selection bound 2*sum(a_i b_i) fails");
    return res;
}

SelectionResult block_select(const WeightedBallCover& cover, const std::vector<Rat>& b,
                             const SelectionOptions& opt) {
    require(!cover.balls.empty(), ErrorCode::EmptyFamily, "no balls in cover");
    require(b.size() == cover.balls.size(), ErrorCode::InfeasibleCover,
            "selection weight count does not match ball count");
    check_cover_invariant(cover);
    const int n = int(cover.balls.size());

    Rat total(0);
    for (int i = 0; i < n; ++i) total += cover.a[i] * b[i];

    // consecutive blocks, block k filled greedily to its 4^-k * total budget
    std::vector<std::pair<int, int>> blocks;
    {
        Rat budget = total;
        int begin = 0, i = 0;
        Rat acc(0);
        while (i < n) {
            Rat item = cover.a[i] * b[i];
            if (acc + item <= budget) {
                acc += item;
                ++i;
                continue;
            }
            require(i > begin, ErrorCode::LpFailure, "block packing failed");
            blocks.push_back({begin, i});
            begin = i;
            acc = 0;
            budget /= 4;
        }
        blocks.push_back({begin, n});
    }

    SelectionResult res;
    res.blocks = blocks;
    Bitset claimed(cover.target.size());
    Rat pow2(2);  // 2^{k+1} for block k
    for (size_t k = 0; k < blocks.size(); ++k, pow2 *= 2) {
        auto [lo, hi] = blocks[k];
        // E_k = points of E whose reweighted block mass reaches 1
        Bitset ek(cover.target.size());
        for (int x = cover.target.first(); x >= 0; x = cover.target.next(x)) {
            Rat s(0);
            for (int i = lo; i < hi; ++i)
                if (cover.balls[i].members.test(x)) s += pow2 * cover.a[i];
            if (s >= 1) ek.set(x);
        }
        claimed = claimed | ek;
        if (ek.none()) continue;

        WeightedBallCover sub;
        sub.space = cover.space;
        sub.target = ek;
        std::vector<Rat> bsub;
        for (int i = lo; i < hi; ++i) {
            sub.balls.push_back(cover.balls[i]);
            sub.a.push_back(pow2 * cover.a[i]);
            bsub.push_back(b[i]);
        }
        SelectionResult part = nazarov_select(sub, bsub, opt);
        res.approximate = res.approximate || part.approximate;
        Rat block_mass(0);
        for (int i = lo; i < hi; ++i) block_mass += cover.a[i] * b[i];
        if (!part.approximate)
            require(part.achieved <= 2 * pow2 * block_mass, ErrorCode::CertificateFailure,
                    "per-block selection bound fails");
        for (int j : part.selected) res.selected.push_back(lo + j);
    }
    require(cover.target.subset_of(claimed), ErrorCode::CertificateFailure,
            "blocks do not exhaust the target");

    res.achieved = 0;
    for (int i : res.selected) res.achieved += b[i];
    res.certified_bound = 8 * total;
    Bitset covered(cover.target.size());
    for (int i : res.selected)
        covered = covered | closed_ball(*cover.space, cover.balls[i].center,
                                        3.0 * cover.balls[i].radius);
    require(cover.target.subset_of(covered), ErrorCode::CertificateFailure,
            "3-dilates of the block selection do not cover the target");
    if (res.approximate)
        require(rat_to_double(res.achieved) <=
                    rat_to_double(res.certified_bound) * (1.0 + 1e-7) + 1e-12,
                ErrorCode::CertificateFailure, "block bound fails (float mode)");
    else
        require(res.achieved <= res.certified_bound, ErrorCode::CertificateFailure,
                "block bound 8*sum(a_i b_i) fails");
    return res;
}

SaturnResult saturn_select(const FiniteMetricSpace& space,
                           const std::vector<Bitset>& family) {
    require(!family.empty(), ErrorCode::EmptyFamily, "saturn_select: empty family");
    const int n = int(family.size());
    std::vector<double> diams(n);
    double r_max = 0.0;
    for (int i = 0; i < n; ++i) {
        require(family[i].any(), ErrorCode::EmptyFamily,
                "saturn_select: family contains an empty set");
        diams[i] = diam(space, family[i]);
        r_max = std::max(r_max, diams[i]);
    }

    // dyadic class: smallest j >= 1 with R/2^j < d; zero-diameter sets go last
    std::map<int, std::vector<int>> classes;
    std::vector<int> zero_diam;
    for (int i = 0; i < n; ++i) {
        if (diams[i] == 0.0) {
            zero_diam.push_back(i);
            continue;
        }
        int j = 1;
        double bound = r_max / 2.0;
        while (diams[i] <= bound) {
            ++j;
            bound /= 2.0;
        }
        classes[j].push_back(i);
    }

    SaturnResult res;
    Bitset selected_union(space.size());
    auto try_select = [&](int i) {
        bool clash = false;
        for (int s : res.selected)
            if (family[i].intersects(family[s])) { clash = true; break; }
        if (!clash) {
            res.selected.push_back(i);
            selected_union = selected_union | family[i];
        }
    };
    for (auto& [j, members] : classes)
        for (int i : members) try_select(i);
    for (int i : zero_diam)
        if (!family[i].intersects(selected_union)) {
            res.selected.push_back(i);
            selected_union = selected_union | family[i];
        }

    res.representative.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        for (int s : res.selected)
            if (family[i].intersects(family[s]) && diams[i] <= 2.0 * diams[s]) {
                res.representative[i] = s;
                break;
            }
        require(res.representative[i] >= 0, ErrorCode::CertificateFailure,
                "saturn_select: set " + std::to_string(i) + " has no representative");
    }
    return res;
}

}  // namespace mct
