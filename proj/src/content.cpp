#include "mct/content.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "mct/coverkit.hpp"
#include "mct/gauge.hpp"
#include "mct/simplex.hpp"

namespace mct {

const char* result_mode_name(ResultMode mode) {
    switch (mode) {
        case ResultMode::Exact: return "exact";
        case ResultMode::GreedyUpper: return "greedy-upper";
        case ResultMode::Lp: return "lp";
        case ResultMode::DualLower: return "dual-lower";
    }
    return "unknown";
}

// ---- candidate enumeration -------------------------------------------------

namespace {

/// Bron-Kerbosch with pivoting over an adjacency-bitset graph.
class CliqueEnumerator {
public:
    CliqueEnumerator(std::vector<Bitset> adj, int cap)
        : adj_(std::move(adj)), n_(int(adj_.size())), cap_(cap) {}

    void run(const std::function<void(const Bitset&)>& emit) {
        emit_ = &emit;
        Bitset r(n_), p(n_), x(n_);
        for (int i = 0; i < n_; ++i) p.set(i);
        expand(r, p, x);
    }

private:
    void expand(Bitset& r, Bitset p, Bitset x) {
        if (p.none() && x.none()) {
            require(++emitted_ <= cap_, ErrorCode::FamilyBlowup,
                    "clique enumeration exceeded the family cap");
            (*emit_)(r);
            return;
        }
        // pivot: vertex of P|X with the most neighbours in P
        int pivot = -1, best = -1;
        Bitset px = p | x;
        for (int u = px.first(); u >= 0; u = px.next(u)) {
            int c = (p & adj_[u]).count();
            if (c > best) { best = c; pivot = u; }
        }
        Bitset ext = p.minus(adj_[pivot]);
        for (int v = ext.first(); v >= 0; v = ext.next(v)) {
            r.set(v);
            expand(r, p & adj_[v], x & adj_[v]);
            r.reset(v);
            p.reset(v);
            x.set(v);
        }
    }

    std::vector<Bitset> adj_;
    int n_, cap_;
    long emitted_ = 0;
    const std::function<void(const Bitset&)>* emit_ = nullptr;
};

}  // namespace

std::vector<Candidate> enumerate_candidates(const FiniteMetricSpace& space,
                                            const Bitset& target, double delta,
                                            double s, const EngineCaps& caps) {
    require(target.any(), ErrorCode::DomainError, "enumerate_candidates: empty target");
    std::vector<int> pts = target.indices();
    const int k = int(pts.size());

    // candidate delta-feasibility is judged on cell-aware diameters, so the
    // pairwise threshold shrinks by eps in cell mode
    double delta_eff = delta;
    if (space.cell_mode() && std::isfinite(delta)) delta_eff = delta - space.eps();

    std::set<Bitset> seen;
    if (delta_eff >= 0.0) {
        std::set<double> thresholds{0.0};
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b) {
                double d = space.dist(pts[a], pts[b]);
                if (d <= delta_eff) thresholds.insert(d);
            }
        long budget = caps.family_cap;
        for (double d : thresholds) {
            std::vector<Bitset> adj(k, Bitset(k));
            for (int a = 0; a < k; ++a)
                for (int b = a + 1; b < k; ++b)
                    if (space.dist(pts[a], pts[b]) <= d) {
                        adj[a].set(b);
                        adj[b].set(a);
                    }
            CliqueEnumerator bk(std::move(adj), int(budget));
            bk.run([&](const Bitset& local) {
                Bitset global(space.size());
                for (int i = local.first(); i >= 0; i = local.next(i))
                    global.set(pts[i]);
                seen.insert(global);
            });
            require(long(seen.size()) <= caps.family_cap, ErrorCode::FamilyBlowup,
                    "candidate family exceeded the cap");
        }
    }

    std::vector<Candidate> family;
    family.reserve(seen.size());
    for (const Bitset& mask : seen) {
        Candidate c;
        c.mask = mask;
        c.diameter = diam(space, mask);
        require(c.diameter <= delta, ErrorCode::DomainError,
                "enumerated candidate exceeds delta");
        c.cost = zeta_cost(s, c.diameter, true);
        family.push_back(std::move(c));
    }
    return family;  // std::set<Bitset> iterates in lexicographic mask order
}

// ---- greedy cover ----------------------------------------------------------

namespace {

struct GreedyOutcome {
    Rat value;
    std::vector<int> witness;
};

GreedyOutcome greedy_cover(const CoverInstance& inst) {
    GreedyOutcome out;
    out.value = 0;
    Bitset uncovered = inst.target;
    while (uncovered.any()) {
        int best = -1;
        long best_new = 0;
        for (size_t c = 0; c < inst.family.size(); ++c) {
            long nn = (inst.family[c].mask & uncovered).count();
            if (nn == 0) continue;
            if (best < 0) { best = int(c); best_new = nn; continue; }
            // cost/new ratio comparison in exact rationals; family order breaks ties
            if (inst.family[c].cost * best_new < inst.family[best].cost * nn) {
                best = int(c);
                best_new = nn;
            }
        }
        require(best >= 0, ErrorCode::Uncoverable, "family does not cover the target");
        out.witness.push_back(best);
        out.value += inst.family[best].cost;
        uncovered = uncovered.minus(inst.family[best].mask);
    }
    return out;
}

void check_coverage(const CoverInstance& inst) {
    Bitset u(inst.target.size());
    for (const auto& c : inst.family) u = u | c.mask;
    require(inst.target.subset_of(u), ErrorCode::Uncoverable,
            "family does not cover the target");
}

/// Shared LP core: min sum a_A cost_A with per-point demands, plus a
/// verified dual packing certificate mapped back onto points.
struct CoverLpOutcome {
    Rat value;
    std::vector<std::pair<int, Rat>> weights;
    std::vector<std::pair<int, Rat>> dual;
    long pivots = 0;
};

CoverLpOutcome cover_lp(const CoverInstance& inst, const std::vector<Rat>& demand,
                        const std::vector<int>& pts) {
    const int k = int(pts.size());
    // rows deduplicated by candidate-membership pattern (keep max demand),
    // then dominated rows dropped: pattern(p) subset of pattern(q) with
    // demand_p >= demand_q makes q redundant
    std::vector<std::vector<int>> pattern(k);
    for (size_t c = 0; c < inst.family.size(); ++c)
        for (int i = 0; i < k; ++i)
            if (inst.family[c].mask.test(pts[i])) pattern[i].push_back(int(c));

    std::map<std::vector<int>, int> by_pattern;
    std::vector<int> rep;  // row -> representative point local index
    for (int i = 0; i < k; ++i) {
        require(!pattern[i].empty(), ErrorCode::Uncoverable,
                "point " + std::to_string(pts[i]) + " is in no candidate");
        auto [it, fresh] = by_pattern.emplace(pattern[i], int(rep.size()));
        if (fresh) rep.push_back(i);
        else if (demand[i] > demand[rep[it->second]]) rep[it->second] = i;
    }
    std::vector<int> rows;  // local point indices that survive presolve
    for (size_t r = 0; r < rep.size(); ++r) {
        bool dominated = false;
        for (size_t r2 = 0; r2 < rep.size() && !dominated; ++r2) {
            if (r2 == r) continue;
            const auto& a = pattern[rep[r2]];
            const auto& b = pattern[rep[r]];
            if (demand[rep[r2]] >= demand[rep[r]] && a.size() <= b.size() &&
                std::includes(b.begin(), b.end(), a.begin(), a.end())) {
                // strict containment or tie broken toward the earlier row
                if (a.size() < b.size() || demand[rep[r2]] > demand[rep[r]] || r2 < r)
                    dominated = true;
            }
        }
        if (!dominated) rows.push_back(rep[r]);
    }

    LinearProgram lp;
    lp.resize(int(inst.family.size()));
    for (size_t c = 0; c < inst.family.size(); ++c) lp.cost[c] = inst.family[c].cost;
    for (int i : rows) {
        LinearProgram::Row row;
        for (int c : pattern[i]) row.terms.push_back({c, Rat(1)});
        row.rhs = demand[i];
        lp.rows.push_back(std::move(row));
    }
    LpResult res = solve_lp(lp);
    if (res.status == LpStatus::Infeasible)
        fail(ErrorCode::Uncoverable, "cover LP infeasible");
    require(res.status == LpStatus::Optimal, ErrorCode::LpFailure,
            "cover LP did not reach an optimum");

    CoverLpOutcome out;
    out.value = res.value;
    out.pivots = res.pivots;
    for (size_t c = 0; c < inst.family.size(); ++c)
        if (res.x[c] != 0) out.weights.push_back({int(c), res.x[c]});
    for (size_t r = 0; r < rows.size(); ++r)
        if (res.y[r] != 0) out.dual.push_back({pts[rows[r]], res.y[r]});

    // exact certificate verification: primal feasibility, dual packing
    // feasibility, and equality of both objectives
    std::map<int, Rat> ymap(out.dual.begin(), out.dual.end());
    for (const auto& [p, yv] : ymap)
        require(yv >= 0, ErrorCode::LpFailure, "negative dual value");
    Rat primal(0);
    for (const auto& [c, w] : out.weights) {
        require(w >= 0, ErrorCode::LpFailure, "negative primal weight");
        primal += w * inst.family[c].cost;
    }
    require(primal == out.value, ErrorCode::LpFailure, "primal objective mismatch");
    for (int i = 0; i < k; ++i) {
        Rat s(0);
        for (const auto& [c, w] : out.weights)
            if (inst.family[c].mask.test(pts[i])) s += w;
        require(s >= demand[i], ErrorCode::LpFailure, "primal cover constraint fails");
    }
    for (size_t c = 0; c < inst.family.size(); ++c) {
        Rat s(0);
        for (const auto& [p, yv] : ymap)
            if (inst.family[c].mask.test(p)) s += yv;
        require(s <= inst.family[c].cost, ErrorCode::LpFailure,
                "dual packing constraint fails");
    }
    Rat dual_total(0);
    for (int i = 0; i < k; ++i) {
        auto it = ymap.find(pts[i]);
        if (it != ymap.end()) dual_total += it->second * demand[i];
    }
    require(dual_total == out.value, ErrorCode::LpFailure,
            "strong duality fails: dual value != primal value");
    return out;
}

}  // namespace

// ---- integer cover ---------------------------------------------------------

namespace {

struct BranchState {
    const CoverInstance* inst;
    std::vector<std::vector<int>> by_point;  // local point -> candidate indices
    std::vector<int> pts;
    std::vector<Rat> dual;  // admissible point potentials for pruning
    Rat best_value;
    std::vector<int> best_witness;
    std::map<std::vector<uint64_t>, Rat> seen;
};

void branch(BranchState& st, const Bitset& covered, const Rat& cost,
            std::vector<int>& chosen) {
    const CoverInstance& inst = *st.inst;
    if (inst.target.subset_of(covered)) {
        if (cost < st.best_value) {
            st.best_value = cost;
            st.best_witness = chosen;
        }
        return;
    }
    Rat lb = cost;
    int p_branch = -1;
    for (size_t i = 0; i < st.pts.size(); ++i)
        if (!covered.test(st.pts[i])) {
            lb += st.dual[i];
            if (p_branch < 0) p_branch = int(i);
        }
    if (lb >= st.best_value) return;
    auto it = st.seen.find(covered.words());
    if (it != st.seen.end() && it->second <= cost) return;
    st.seen[covered.words()] = cost;

    for (int c : st.by_point[p_branch]) {
        chosen.push_back(c);
        branch(st, covered | inst.family[c].mask, cost + inst.family[c].cost, chosen);
        chosen.pop_back();
    }
}

}  // namespace

ContentResult min_cover(const CoverInstance& inst, const EngineCaps& caps) {
    ContentResult out;
    if (inst.target.none()) {
        out.value = 0;
        out.mode = ResultMode::Exact;
        return out;
    }
    check_coverage(inst);
    GreedyOutcome greedy = greedy_cover(inst);
    const int k = inst.target.count();
    if (k > caps.exact_cover_cap) {
        out.value = greedy.value;
        out.witness = greedy.witness;
        out.mode = ResultMode::GreedyUpper;
        return out;
    }

    BranchState st;
    st.inst = &inst;
    st.pts = inst.target.indices();
    st.by_point.resize(st.pts.size());
    for (size_t c = 0; c < inst.family.size(); ++c)
        for (size_t i = 0; i < st.pts.size(); ++i)
            if (inst.family[c].mask.test(st.pts[i])) st.by_point[i].push_back(int(c));
    st.dual.assign(st.pts.size(), Rat(0));
    if (k >= 6 && inst.family.size() >= 4) {
        // LP-dual potentials: any cover of an uncovered remainder U costs at
        // least sum of y over U
        std::vector<Rat> demand(st.pts.size(), Rat(1));
        CoverLpOutcome lp = cover_lp(inst, demand, st.pts);
        std::map<int, Rat> ymap(lp.dual.begin(), lp.dual.end());
        for (size_t i = 0; i < st.pts.size(); ++i) {
            auto it = ymap.find(st.pts[i]);
            if (it != ymap.end()) st.dual[i] = it->second;
        }
        out.lp_pivots = lp.pivots;
    }
    st.best_value = greedy.value;
    st.best_witness = greedy.witness;
    std::vector<int> chosen;
    branch(st, Bitset(inst.target.size()), Rat(0), chosen);

    out.value = st.best_value;
    out.witness = st.best_witness;
    out.mode = ResultMode::Exact;
    // the witness is a certificate: re-check coverage and cost
    Bitset u(inst.target.size());
    Rat total(0);
    for (int c : out.witness) {
        u = u | inst.family[c].mask;
        total += inst.family[c].cost;
    }
    require(inst.target.subset_of(u) && total == out.value,
            ErrorCode::CertificateFailure, "min_cover witness invalid");
    return out;
}

ContentResult fractional_cover(const CoverInstance& inst, const EngineCaps& caps) {
    (void)caps;
    ContentResult out;
    if (inst.target.none()) {
        out.value = 0;
        out.mode = ResultMode::Lp;
        return out;
    }
    check_coverage(inst);
    std::vector<int> pts = inst.target.indices();
    std::vector<Rat> demand(pts.size(), Rat(1));
    CoverLpOutcome lp = cover_lp(inst, demand, pts);
    out.value = lp.value;
    out.weights = std::move(lp.weights);
    out.dual = std::move(lp.dual);
    out.lp_pivots = lp.pivots;
    out.mode = ResultMode::Lp;
    return out;
}

// ---- partition DP ----------------------------------------------------------

PartitionResult partition_optimum(int k, const std::function<bool(uint32_t)>& feasible,
                                  const std::function<Rat(uint32_t)>& cost) {
    require(k >= 1 && k <= 20, ErrorCode::TooLarge,
            "partition_optimum: size out of range");
    const uint32_t full = (k == 32) ? ~0u : ((1u << k) - 1);
    std::vector<char> has(full + 1, 0);
    std::vector<Rat> dp(full + 1);
    std::vector<uint32_t> choice(full + 1, 0);
    has[0] = 1;
    dp[0] = 0;
    std::map<uint32_t, Rat> cost_memo;
    auto block_cost = [&](uint32_t m) -> const Rat& {
        auto it = cost_memo.find(m);
        if (it == cost_memo.end()) it = cost_memo.emplace(m, cost(m)).first;
        return it->second;
    };
    for (uint32_t mask = 1; mask <= full; ++mask) {
        uint32_t low = mask & (~mask + 1);
        for (uint32_t sub = mask; sub; sub = (sub - 1) & mask) {
            if (!(sub & low)) continue;
            if (!feasible(sub)) continue;
            uint32_t rest = mask ^ sub;
            if (!has[rest]) continue;
            Rat v = block_cost(sub) + dp[rest];
            if (!has[mask] || v < dp[mask]) {
                has[mask] = 1;
                dp[mask] = v;
                choice[mask] = sub;
            }
        }
    }
    require(has[full], ErrorCode::Uncoverable,
            "no feasible partition at this scale");
    PartitionResult res;
    res.value = dp[full];
    for (uint32_t m = full; m;) {
        res.blocks.push_back(choice[m]);
        m ^= choice[m];
    }
    return res;
}

Rat partition_dp_oracle(const FiniteMetricSpace& space, const Bitset& target,
                        double s, double delta, const EngineCaps& caps) {
    std::vector<int> pts = target.indices();
    const int k = int(pts.size());
    if (k == 0) return Rat(0);
    require(k <= caps.dp_cap, ErrorCode::TooLarge,
            "partition_dp_oracle: target above the DP cap");
    // incremental pairwise diameters over local masks
    std::vector<double> pw(size_t(1) << k, 0.0);
    for (uint32_t mask = 1; mask < (1u << k); ++mask) {
        uint32_t low = mask & (~mask + 1);
        uint32_t rest = mask ^ low;
        int j = __builtin_ctz(low);
        double d = pw[rest];
        for (uint32_t r = rest; r;) {
            int i = __builtin_ctz(r);
            r &= r - 1;
            d = std::max(d, space.dist(pts[j], pts[i]));
        }
        pw[mask] = d;
    }
    double eps = space.eps();
    auto feasible = [&](uint32_t m) { return pw[m] + eps <= delta; };
    auto cost = [&](uint32_t m) { return zeta_cost(s, pw[m] + eps, true); };
    return partition_optimum(k, feasible, cost).value;
}

ContentResult hausdorff_content(const FiniteMetricSpace& space, const Bitset& target,
                                double s, double delta, const EngineCaps& caps) {
    if (target.none()) {
        ContentResult out;
        out.value = 0;
        out.mode = ResultMode::Exact;
        return out;
    }
    CoverInstance inst;
    inst.space = &space;
    inst.target = target;
    inst.delta = delta;
    inst.kind = FamilyKind::AutoCliques;
    inst.family = enumerate_candidates(space, target, delta, s, caps);
    require(!inst.family.empty(), ErrorCode::Uncoverable,
            "no candidates fit the scale delta");
    return min_cover(inst, caps);
}

ContentResult weighted_content(const FiniteMetricSpace& space, const Bitset& target,
                               double s, double delta, const EngineCaps& caps) {
    if (target.none()) {
        ContentResult out;
        out.value = 0;
        out.mode = ResultMode::Lp;
        return out;
    }
    CoverInstance inst;
    inst.space = &space;
    inst.target = target;
    inst.delta = delta;
    inst.kind = FamilyKind::AutoCliques;
    inst.family = enumerate_candidates(space, target, delta, s, caps);
    require(!inst.family.empty(), ErrorCode::Uncoverable,
            "no candidates fit the scale delta");
    return fractional_cover(inst, caps);
}

StepFunction StepFunction::from_doubles(const std::vector<double>& v) {
    StepFunction f;
    f.values.reserve(v.size());
    f.infinite.reserve(v.size());
    for (double d : v) {
        require(d >= 0.0, ErrorCode::DomainError, "step function value negative");
        if (std::isinf(d)) {
            f.values.push_back(Rat(0));
            f.infinite.push_back(true);
        } else {
            f.values.push_back(rat_from_double(d));
            f.infinite.push_back(false);
        }
    }
    return f;
}

ContentResult weighted_integral_step(const FiniteMetricSpace& space,
                                     const StepFunction& f, double s, double delta,
                                     const EngineCaps& caps) {
    require(int(f.values.size()) == space.size() &&
                f.infinite.size() == f.values.size(),
            ErrorCode::DomainError, "step function size mismatch");
    Bitset support(space.size());
    for (int i = 0; i < space.size(); ++i) {
        require(f.values[i] >= 0, ErrorCode::DomainError, "step function value negative");
        if (f.infinite[i])
            fail(ErrorCode::Unbounded,
                 "weighted integral unbounded: f is infinite at point " +
                     std::to_string(i));
        if (f.values[i] > 0) support.set(i);
    }
    ContentResult out;
    if (support.none()) {
        out.value = 0;
        out.mode = ResultMode::Lp;
        return out;
    }
    CoverInstance inst;
    inst.space = &space;
    inst.target = support;
    inst.delta = delta;
    inst.kind = FamilyKind::AutoCliques;
    inst.family = enumerate_candidates(space, support, delta, s, caps);
    require(!inst.family.empty(), ErrorCode::Uncoverable,
            "no candidates fit the scale delta");
    std::vector<int> pts = support.indices();
    std::vector<Rat> demand;
    demand.reserve(pts.size());
    for (int p : pts) demand.push_back(f.values[p]);
    CoverLpOutcome lp = cover_lp(inst, demand, pts);
    out.value = lp.value;
    out.weights = std::move(lp.weights);
    out.dual = std::move(lp.dual);
    out.lp_pivots = lp.pivots;
    out.mode = ResultMode::Lp;
    return out;
}

// ---- certified bound chain ---------------------------------------------------

namespace {

BoundChain chain_impl(const CoverInstance& inst, double s, const EngineCaps& caps) {
    const FiniteMetricSpace& space = *inst.space;
    require(inst.target.count() <= caps.exact_cover_cap, ErrorCode::TooLarge,
            "certified_bounds requires an exactly solvable instance");

    BoundChain chain;
    chain.s = s;
    chain.delta = inst.delta;
    chain.delta6 = 6.0 * inst.delta;

    ContentResult upper = min_cover(inst, caps);
    require(upper.mode == ResultMode::Exact, ErrorCode::TooLarge,
            "certified_bounds: integer side not exact");
    ContentResult frac = fractional_cover(inst, caps);
    chain.h_delta = upper.value;
    chain.lambda = frac.value;
    chain.dual_lower = 0;
    for (const auto& [p, y] : frac.dual) chain.dual_lower += y;
    require(chain.dual_lower == chain.lambda, ErrorCode::CertificateFailure,
            "dual packing does not match the LP value");
    require(chain.lambda <= chain.h_delta, ErrorCode::CertificateFailure,
            "lambda exceeds the integer optimum");

    // rounding: wrap each positive-weight set in the enclosing closed ball
    // around its lowest-index member (radius = raw pairwise diameter, which
    // both contains the set and keeps the 3-dilate inside scale 6*delta in
    // cell mode), then select with the gauge costs as weights
    WeightedBallCover ballcover;
    ballcover.space = &space;
    ballcover.target = inst.target;
    std::vector<Rat> b;
    for (const auto& [c, w] : frac.weights) {
        const Candidate& cand = inst.family[c];
        ballcover.balls.push_back(
            make_ball(space, cand.mask.first(), diam_pointset(space, cand.mask)));
        ballcover.a.push_back(w);
        b.push_back(cand.cost);
    }
    SelectionResult sel = block_select(ballcover, b);
    require(!sel.approximate, ErrorCode::TooLarge,
            "certified_bounds: selection fell back to float mode");
    chain.selected_balls = int(sel.selected.size());

    Rat q6s = rat_from_double(std::pow(6.0, s));
    chain.rounded_cost = 0;
    for (int j : sel.selected) {
        const CandidateBall& ball = ballcover.balls[j];
        Bitset dilate = closed_ball(space, ball.center, 3.0 * ball.radius);
        Rat c3 = zeta_cost(s, diam(space, dilate), true);
        require(c3 <= q6s * b[j], ErrorCode::CertificateFailure,
                "rounded set cost exceeds 6^s times its source cost");
        chain.rounded_cost += c3;
    }
    chain.bound = 8 * q6s * chain.lambda;
    require(sel.achieved <= 8 * chain.lambda, ErrorCode::CertificateFailure,
            "block selection bound fails against lambda");
    require(chain.rounded_cost <= chain.bound, ErrorCode::CertificateFailure,
            "rounded cover cost exceeds 8*6^s*lambda");

    ContentResult h6 = hausdorff_content(space, inst.target, s, chain.delta6, caps);
    require(h6.mode == ResultMode::Exact, ErrorCode::TooLarge,
            "certified_bounds: 6delta side not exact");
    chain.h_6delta = h6.value;
    require(chain.h_6delta <= chain.rounded_cost, ErrorCode::CertificateFailure,
            "6delta content exceeds the rounded cover cost");
    require(chain.h_6delta <= chain.h_delta, ErrorCode::CertificateFailure,
            "content not monotone in delta");
    return chain;
}

}  // namespace

BoundChain certified_bounds(const FiniteMetricSpace& space, const Bitset& target,
                            double s, double delta, const EngineCaps& caps) {
    require(target.any(), ErrorCode::DomainError, "certified_bounds: empty target");
    CoverInstance inst;
    inst.space = &space;
    inst.target = target;
    inst.delta = delta;
    inst.kind = FamilyKind::AutoCliques;
    inst.family = enumerate_candidates(space, target, delta, s, caps);
    require(!inst.family.empty(), ErrorCode::Uncoverable,
            "no candidates fit the scale delta");
    return chain_impl(inst, s, caps);
}

BoundChain certified_bounds_family(const CoverInstance& inst, double s,
                                   const EngineCaps& caps) {
    require(inst.target.any(), ErrorCode::DomainError, "certified_bounds: empty target");
    for (const auto& c : inst.family)
        require(c.diameter <= inst.delta, ErrorCode::DomainError,
                "family candidate exceeds delta");
    return chain_impl(inst, s, caps);
}

}  // namespace mct
