#include "mct/coarea.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "mct/gauge.hpp"

namespace mct {

namespace {

void check_query(const MappingContentQuery& q) {
    require(q.domain && q.codomain && q.f, ErrorCode::DomainError,
            "mapping query: missing space or map");
    require(q.f->domain_id == q.domain->id() && q.f->codomain_id == q.codomain->id(),
            ErrorCode::DomainError, "mapping query: space ids do not match the map");
    require(q.s >= 0.0 && q.t >= 0.0, ErrorCode::DomainError,
            "mapping query: negative exponent");
    require(q.delta > 0.0, ErrorCode::DomainError, "mapping query: delta must be > 0");
    require(q.target.size() == q.domain->size(), ErrorCode::DomainError,
            "mapping query: target mask size mismatch");
}

struct MaskTables {
    std::vector<int> pts;
    std::vector<double> dom_pw;  // pairwise diameter per local mask
    std::vector<double> img_pw;  // image pairwise diameter per local mask
};

MaskTables build_tables(const MappingContentQuery& q) {
    MaskTables t;
    t.pts = q.target.indices();
    const int k = int(t.pts.size());
    const auto& X = *q.domain;
    const auto& Y = *q.codomain;
    const auto& img = q.f->image;
    t.dom_pw.assign(size_t(1) << k, 0.0);
    t.img_pw.assign(size_t(1) << k, 0.0);
    for (uint32_t mask = 1; mask < (1u << k); ++mask) {
        uint32_t low = mask & (~mask + 1);
        uint32_t rest = mask ^ low;
        int j = __builtin_ctz(low);
        double dd = t.dom_pw[rest], di = t.img_pw[rest];
        for (uint32_t r = rest; r;) {
            int i = __builtin_ctz(r);
            r &= r - 1;
            dd = std::max(dd, X.dist(t.pts[j], t.pts[i]));
            di = std::max(di, Y.dist(img[t.pts[j]], img[t.pts[i]]));
        }
        t.dom_pw[mask] = dd;
        t.img_pw[mask] = di;
    }
    return t;
}

Bitset local_to_global(const std::vector<int>& pts, uint32_t mask, int n) {
    Bitset g(n);
    for (uint32_t r = mask; r;) {
        int i = __builtin_ctz(r);
        r &= r - 1;
        g.set(pts[i]);
    }
    return g;
}

/// Deterministic greedy delta-partition for instances above the DP cap:
/// grow a block from the lowest uncovered point by index order.
std::vector<Bitset> greedy_partition(const FiniteMetricSpace& space, const Bitset& target,
                                     double delta) {
    std::vector<Bitset> blocks;
    Bitset left = target;
    while (left.any()) {
        int seed = left.first();
        Bitset block(space.size());
        block.set(seed);
        double pw = 0.0;
        for (int p = left.next(seed); p >= 0; p = left.next(p)) {
            double npw = pw;
            bool ok = true;
            for (int q2 = block.first(); q2 >= 0; q2 = block.next(q2)) {
                npw = std::max(npw, space.dist(p, q2));
                if (npw + space.eps() > delta) { ok = false; break; }
            }
            if (ok) {
                block.set(p);
                pw = npw;
            }
        }
        require(diam(space, block) <= delta, ErrorCode::Uncoverable,
                "no block of scale delta contains point " + std::to_string(seed));
        blocks.push_back(block);
        left = left.minus(block);
    }
    return blocks;
}

}  // namespace

MappingContentResult phi_content(const MappingContentQuery& q, const EngineCaps& caps) {
    check_query(q);
    MappingContentResult out;
    if (q.target.none()) {
        out.value = 0;
        return out;
    }
    const double epsx = q.domain->eps(), epsy = q.codomain->eps();
    const int k = q.target.count();
    if (k > caps.dp_cap) {
        out.mode = ResultMode::GreedyUpper;
        out.blocks = greedy_partition(*q.domain, q.target, q.delta);
        out.value = 0;
        for (const Bitset& b : out.blocks) {
            Bitset img = map_image(*q.f, b, *q.codomain);
            out.value += zeta_cost(q.s, diam(*q.codomain, img), true) *
                         zeta_cost(q.t, diam(*q.domain, b), true);
        }
        return out;
    }
    MaskTables tab = build_tables(q);
    auto feasible = [&](uint32_t m) { return tab.dom_pw[m] + epsx <= q.delta; };
    auto cost = [&](uint32_t m) {
        return zeta_cost(q.s, tab.img_pw[m] + epsy, true) *
               zeta_cost(q.t, tab.dom_pw[m] + epsx, true);
    };
    PartitionResult res = partition_optimum(k, feasible, cost);
    out.value = res.value;
    out.mode = ResultMode::Exact;
    for (uint32_t m : res.blocks)
        out.blocks.push_back(local_to_global(tab.pts, m, q.domain->size()));
    return out;
}

MappingContentResult tilde_content(const MappingContentQuery& q, const EngineCaps& caps) {
    check_query(q);
    MappingContentResult out;
    if (q.target.none()) {
        out.value = 0;
        return out;
    }
    const double epsx = q.domain->eps();
    const int k = q.target.count();
    require(k <= caps.dp_cap, ErrorCode::TooLarge,
            "tilde_content: target above the DP cap");
    MaskTables tab = build_tables(q);
    // inner infinity-scale contents of images, cached per image mask
    std::map<std::vector<uint64_t>, Rat> inner;
    auto inner_content = [&](uint32_t m) {
        Bitset img = map_image(*q.f, local_to_global(tab.pts, m, q.domain->size()),
                               *q.codomain);
        auto it = inner.find(img.words());
        if (it == inner.end()) {
            ContentResult r = hausdorff_content(*q.codomain, img, q.s, HUGE_VAL, caps);
            require(r.mode == ResultMode::Exact, ErrorCode::TooLarge,
                    "tilde_content: inner content not exact");
            it = inner.emplace(img.words(), r.value).first;
        }
        return it->second;
    };
    auto feasible = [&](uint32_t m) { return tab.dom_pw[m] + epsx <= q.delta; };
    auto cost = [&](uint32_t m) {
        return inner_content(m) * zeta_cost(q.t, tab.dom_pw[m] + epsx, true);
    };
    PartitionResult res = partition_optimum(k, feasible, cost);
    out.value = res.value;
    out.mode = ResultMode::Exact;
    for (uint32_t m : res.blocks)
        out.blocks.push_back(local_to_global(tab.pts, m, q.domain->size()));

    // per-set cost domination makes tilde <= phi; assert on the exact optima
    MappingContentResult phi = phi_content(q, caps);
    if (phi.mode == ResultMode::Exact)
        require(out.value <= phi.value, ErrorCode::CertificateFailure,
                "tilde content exceeds phi content");
    return out;
}

RefineReport refine_cover(const MappingContentQuery& q, const std::vector<Bitset>& cover,
                          const std::vector<std::vector<Bitset>>& inner_covers) {
    check_query(q);
    require(cover.size() == inner_covers.size(), ErrorCode::WitnessInvalid,
            "refine_cover: one inner cover per cover set required");
    Bitset covered(q.domain->size());
    for (const Bitset& b : cover) covered = covered | b;
    require(q.target.subset_of(covered), ErrorCode::WitnessInvalid,
            "refine_cover: cover does not contain the target");

    RefineReport rep;
    rep.refined_cost = 0;
    rep.outer_cost = 0;
    for (size_t i = 0; i < cover.size(); ++i) {
        Bitset img = map_image(*q.f, cover[i], *q.codomain);
        Bitset innerunion(q.codomain->size());
        Rat inner_cost(0);
        for (const Bitset& c : inner_covers[i]) {
            innerunion = innerunion | c;
            inner_cost += zeta_cost(q.s, diam(*q.codomain, c), c.any());
        }
        require(img.subset_of(innerunion), ErrorCode::WitnessInvalid,
                "refine_cover: inner cover misses part of the image");
        rep.outer_cost += zeta_cost(q.t, diam(*q.domain, cover[i]), cover[i].any()) *
                          inner_cost;
        for (const Bitset& c : inner_covers[i]) {
            // A_ij = A_i cap f^-1(C_ij)
            Bitset aij(q.domain->size());
            for (int p = cover[i].first(); p >= 0; p = cover[i].next(p))
                if (c.test(q.f->image[p])) aij.set(p);
            if (aij.none()) continue;  // degenerate pieces dropped
            rep.refined.push_back(aij);
            Bitset img_aij = map_image(*q.f, aij, *q.codomain);
            rep.refined_cost += zeta_cost(q.s, diam(*q.codomain, img_aij), true) *
                                zeta_cost(q.t, diam(*q.domain, aij), true);
        }
    }
    require(rep.refined_cost <= rep.outer_cost, ErrorCode::CertificateFailure,
            "refined cover cost exceeds the outer bound");
    return rep;
}

Bitset fiber(const LipschitzMapping& f, int y, const Bitset& target) {
    Bitset out(target.size());
    for (int p = target.first(); p >= 0; p = target.next(p))
        if (f.image[p] == y) out.set(p);
    return out;
}

Lemma16Report lemma16_check(const MappingContentQuery& q, const EngineCaps& caps) {
    check_query(q);
    require(q.target.any(), ErrorCode::DomainError, "lemma16_check: empty target");
    Lemma16Report rep;
    rep.lip = q.f->lip;
    rep.constant = omega(q.s) * omega(q.t) / omega(q.s + q.t);
    const double lips = std::pow(rep.lip, q.s);

    std::vector<Candidate> family =
        enumerate_candidates(*q.domain, q.target, q.delta, q.s + q.t, caps);
    require(!family.empty(), ErrorCode::Uncoverable, "no candidates at scale delta");
    rep.candidates = int(family.size());
    for (const Candidate& cand : family) {
        Bitset img = map_image(*q.f, cand.mask, *q.codomain);
        double lhs = zeta(q.s, diam(*q.codomain, img), true) *
                     zeta(q.t, cand.diameter, true);
        double rhs = lips * rep.constant * zeta(q.s + q.t, cand.diameter, true);
        require(lhs <= rhs * (1.0 + 1e-10) + 1e-300, ErrorCode::CertificateFailure,
                "per-candidate gauge inequality fails");
        if (rhs > 0.0) rep.max_candidate_ratio = std::max(rep.max_candidate_ratio, lhs / rhs);
    }

    CoverInstance inst;
    inst.space = q.domain;
    inst.target = q.target;
    inst.delta = q.delta;
    inst.kind = FamilyKind::AutoCliques;
    inst.family = family;
    ContentResult h = min_cover(inst, caps);
    require(h.mode == ResultMode::Exact, ErrorCode::TooLarge,
            "lemma16_check: content side not exact");
    MappingContentResult phi = phi_content(q, caps);
    require(phi.mode == ResultMode::Exact, ErrorCode::TooLarge,
            "lemma16_check: phi side not exact");
    rep.phi_value = phi.value;
    rep.h_value = h.value;
    rep.optima_bound = lips * rep.constant * rat_to_double(h.value);
    require(rat_to_double(phi.value) <= rep.optima_bound * (1.0 + 1e-10) + 1e-300,
            ErrorCode::CertificateFailure, "optima inequality fails");
    return rep;
}

EilenbergReport eilenbergchain_impl(const MappingContentQuery& q, double delta0,
                                    const EngineCaps& caps) {
    // the cover comes from Phi^{t,s-t} at scale delta; the weighted cover
    // {(zeta^{s-t}(A_i), f(A_i))} then dominates fiber contents at any
    // coarser scale delta0
    require(q.t <= q.s, ErrorCode::DomainError, "eilenberg_chain: need t <= s");
    require(q.delta <= delta0, ErrorCode::DomainError,
            "eilenberg_chain: need delta <= delta0");
    MappingContentQuery phi_q = q;
    phi_q.s = q.t;        // image exponent
    phi_q.t = q.s - q.t;  // domain exponent
    MappingContentResult phi = phi_content(phi_q, caps);

    EilenbergReport rep;
    rep.s = q.s;
    rep.t = q.t;
    rep.delta = q.delta;
    rep.delta0 = delta0;
    rep.cover_blocks = phi.blocks;
    rep.phi_value = phi.value;
    rep.phi_mode = phi.mode;

    std::vector<Bitset> images;
    rep.witness_cost = 0;
    for (const Bitset& block : rep.cover_blocks) {
        Rat a = zeta_cost(q.s - q.t, diam(*q.domain, block), block.any());
        rep.weights.push_back(a);
        Bitset img = map_image(*q.f, block, *q.codomain);
        images.push_back(img);
        rep.witness_cost += a * zeta_cost(q.t, diam(*q.codomain, img), img.any());
    }

    for (int y = 0; y < q.codomain->size(); ++y) {
        EilenbergReport::FiberRow row;
        row.y = y;
        Bitset fib = fiber(*q.f, y, q.target);
        row.fiber_size = fib.count();
        row.rhs = 0;
        for (size_t i = 0; i < images.size(); ++i)
            if (images[i].test(y)) row.rhs += rep.weights[i];
        if (fib.any()) {
            ContentResult c = hausdorff_content(*q.domain, fib, q.s - q.t, delta0, caps);
            require(c.mode == ResultMode::Exact, ErrorCode::TooLarge,
                    "eilenberg_chain: fiber content not exact");
            row.fiber_content = c.value;
        } else {
            row.fiber_content = 0;
        }
        require(row.fiber_content <= row.rhs, ErrorCode::CertificateFailure,
                "fiber domination fails at codomain point " + std::to_string(y));
        rep.fibers.push_back(std::move(row));
    }
    return rep;
}

EilenbergReport eilenberg_chain(const MappingContentQuery& q, double delta0,
                                const EngineCaps& caps) {
    check_query(q);
    return eilenbergchain_impl(q, delta0, caps);
}

DensityProfile lower_density_profile(const MappingContentQuery& q, int x,
                                     const std::vector<double>& radii,
                                     const EngineCaps& caps) {
    check_query(q);
    require(x >= 0 && x < q.domain->size(), ErrorCode::DomainError,
            "density profile: point out of range");
    DensityProfile prof;
    prof.x = x;
    prof.t = q.t;
    const double lipt = std::pow(q.f->lip, q.t);
    for (double r : radii) {
        require(r > 0.0, ErrorCode::DomainError, "density profile: radius must be > 0");
        Bitset ball = closed_ball(*q.domain, x, r) & q.target;
        double ratio = 0.0;
        if (ball.any()) {
            Bitset img = map_image(*q.f, ball, *q.codomain);
            ContentResult c = hausdorff_content(*q.codomain, img, q.t, HUGE_VAL, caps);
            Rat val = c.value;
            if (c.mode != ResultMode::Exact) {
                prof.exact = false;
                // greedy value may exceed the one-set cover; clamp to keep an
                // honest upper estimate
                Rat whole = zeta_cost(q.t, diam(*q.codomain, img), true);
                if (whole < val) val = whole;
            }
            ratio = rat_to_double(val) / (omega(q.t) * std::pow(r, q.t));
        }
        double bound = std::pow(q.f->lip + q.codomain->eps() / (2.0 * r), q.t);
        require(ratio <= bound * (1.0 + 1e-9) + 1e-300, ErrorCode::CertificateFailure,
                "density ratio exceeds the Lipschitz bound with cell slack");
        prof.radii.push_back(r);
        prof.ratios.push_back(ratio);
        prof.bounds.push_back(bound);
        prof.cell_slack = std::max(prof.cell_slack, bound - lipt);
    }
    require(!prof.ratios.empty(), ErrorCode::DomainError, "density profile: no radii");
    prof.reported_min = *std::min_element(prof.ratios.begin(), prof.ratios.end());
    return prof;
}

// ---- dyadic mapping content --------------------------------------------------

int DyadicGrid::index_of(const std::vector<int>& coords) const {
    int idx = 0;
    for (int d = 0; d < dim; ++d) {
        require(coords[d] >= 0 && coords[d] < points_per_side, ErrorCode::DomainError,
                "dyadic grid: coordinate out of range");
        idx = idx * points_per_side + coords[d];
    }
    return idx;
}

DyadicGrid make_dyadic_grid(int level, int dim) {
    require(dim >= 1 && dim <= 3, ErrorCode::TooDeep, "dyadic grid: dim must be <= 3");
    require(level >= 0 && level <= 5, ErrorCode::TooDeep,
            "dyadic grid: level capped at 5");
    DyadicGrid g;
    g.level = level;
    g.dim = dim;
    g.points_per_side = (1 << level) + 1;
    double h = 1.0 / double(1 << level);
    long long n = 1;
    for (int d = 0; d < dim; ++d) n *= g.points_per_side;
    std::vector<std::vector<double>> coords;
    std::vector<int> c(dim, 0);
    for (long long i = 0; i < n; ++i) {
        std::vector<double> p(dim);
        for (int d = 0; d < dim; ++d) p[d] = c[d] * h;
        coords.push_back(p);
        int d = dim - 1;
        while (d >= 0 && ++c[d] == g.points_per_side) c[d--] = 0;
    }
    const int N = int(n);
    std::vector<std::vector<double>> dist(N, std::vector<double>(N, 0.0));
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
            double s = 0.0;
            for (int d = 0; d < dim; ++d) {
                double t = coords[i][d] - coords[j][d];
                s += t * t;
            }
            dist[i][j] = dist[j][i] = std::sqrt(s);
        }
    std::vector<std::string> labels(N);
    for (int i = 0; i < N; ++i) labels[i] = "q" + std::to_string(i);
    g.lattice = FiniteMetricSpace(std::move(labels), std::move(dist), 0.0);
    return g;
}

Bitset cells_to_points(const DyadicGrid& grid, const std::vector<std::vector<int>>& cells) {
    Bitset mask(grid.lattice.size());
    int side = 1 << grid.level;
    for (const auto& cell : cells) {
        require(int(cell.size()) == grid.dim, ErrorCode::DomainError,
                "cell coordinate arity mismatch");
        for (int d = 0; d < grid.dim; ++d)
            require(cell[d] >= 0 && cell[d] < side, ErrorCode::DomainError,
                    "cell coordinate out of range");
        // all corner lattice points of the closed cell
        std::vector<int> offs(grid.dim, 0);
        while (true) {
            std::vector<int> pt(grid.dim);
            for (int d = 0; d < grid.dim; ++d) pt[d] = cell[d] + offs[d];
            mask.set(grid.index_of(pt));
            int d = grid.dim - 1;
            while (d >= 0 && ++offs[d] == 2) offs[d--] = 0;
            if (d < 0) break;
        }
    }
    return mask;
}

namespace {

struct DyadicSolver {
    const DyadicGrid* grid;
    const FiniteMetricSpace* codomain;
    const LipschitzMapping* f;
    const Bitset* target;
    int n_exp, m_exp;
    const EngineCaps* caps;

    Bitset cube_points(int level, const std::vector<int>& corner) const {
        int span = 1 << (grid->level - level);  // lattice steps per side
        Bitset mask(grid->lattice.size());
        std::vector<int> offs(grid->dim, 0);
        while (true) {
            std::vector<int> pt(grid->dim);
            for (int d = 0; d < grid->dim; ++d) pt[d] = corner[d] * span + offs[d];
            mask.set(grid->index_of(pt));
            int d = grid->dim - 1;
            while (d >= 0 && ++offs[d] == span + 1) offs[d--] = 0;
            if (d < 0) break;
        }
        return mask;
    }

    Rat cube_cost(int level, const std::vector<int>& corner) const {
        Bitset pts = cube_points(level, corner);
        Bitset img = map_image(*f, pts, *codomain);
        ContentResult inner = hausdorff_content(*codomain, img, n_exp, HUGE_VAL, *caps);
        require(inner.mode == ResultMode::Exact, ErrorCode::TooLarge,
                "dyadic content: inner content not exact");
        return inner.value * zeta_cost(m_exp, diam(grid->lattice, pts), true);
    }

    std::pair<Rat, std::vector<DyadicCube>> solve(int level,
                                                  const std::vector<int>& corner) {
        Bitset pts = cube_points(level, corner) & *target;
        if (pts.none()) return {Rat(0), {}};
        Rat here = cube_cost(level, corner);
        if (level == grid->level) return {here, {DyadicCube{level, corner}}};
        Rat sub(0);
        std::vector<DyadicCube> subcover;
        std::vector<int> offs(grid->dim, 0);
        while (true) {
            std::vector<int> child(grid->dim);
            for (int d = 0; d < grid->dim; ++d) child[d] = corner[d] * 2 + offs[d];
            auto [v, cov] = solve(level + 1, child);
            sub += v;
            for (auto& c : cov) subcover.push_back(std::move(c));
            int d = grid->dim - 1;
            while (d >= 0 && ++offs[d] == 2) offs[d--] = 0;
            if (d < 0) break;
        }
        if (here <= sub) return {here, {DyadicCube{level, corner}}};
        return {sub, std::move(subcover)};
    }
};

}  // namespace

DyadicContentResult mapping_content_dyadic(const DyadicGrid& grid,
                                           const FiniteMetricSpace& codomain,
                                           const LipschitzMapping& f,
                                           const Bitset& target_points,
                                           int n_exp, int m_exp, const EngineCaps& caps) {
    require(f.domain_id == grid.lattice.id() && f.codomain_id == codomain.id(),
            ErrorCode::DomainError, "dyadic content: space ids do not match the map");
    require(n_exp >= 1 && m_exp >= 1, ErrorCode::DomainError,
            "dyadic content: exponents must be >= 1");
    DyadicContentResult out;
    if (target_points.none()) {
        out.value = 0;
        return out;
    }
    DyadicSolver solver{&grid, &codomain, &f, &target_points, n_exp, m_exp, &caps};
    auto [value, cover] = solver.solve(0, std::vector<int>(grid.dim, 0));
    out.value = value;
    out.cover = std::move(cover);
    return out;
}

DavidsRow davids_ratio_probe(const DyadicGrid& grid, const FiniteMetricSpace& codomain,
                             const LipschitzMapping& f, const Bitset& target_points,
                             int n_exp, int m_exp, const EngineCaps& caps) {
    DavidsRow row;
    DyadicContentResult h = mapping_content_dyadic(grid, codomain, f, target_points,
                                                   n_exp, m_exp, caps);
    row.h_nm = h.value;

    MappingContentQuery q;
    q.domain = &grid.lattice;
    q.codomain = &codomain;
    q.f = &f;
    q.target = target_points;
    q.s = double(n_exp);
    q.t = double(m_exp);
    q.delta = HUGE_VAL;
    MappingContentResult tilde = tilde_content(q, caps);
    MappingContentResult phi = phi_content(q, caps);
    require(phi.mode == ResultMode::Exact, ErrorCode::TooLarge,
            "davids probe: phi not exact");
    row.tilde = tilde.value;
    row.phi = phi.value;
    require(row.phi <= row.tilde, ErrorCode::CertificateFailure,
            "ordering fails: phi > tilde");
    require(row.tilde <= row.h_nm, ErrorCode::CertificateFailure,
            "ordering fails: tilde > dyadic content");

    if (row.h_nm == 0) {
        row.zero_branch = true;
        // fixed-scale image of the vanishing statement: the weighted integral
        // of the grid-scale fiber contents over the codomain is zero
        double side = 1.0 / double(1 << grid.level);
        FiniteMetricSpace cellgrid = grid.lattice.with_eps(side);
        LipschitzMapping f_cell = f;
        f_cell.domain_id = cellgrid.id();
        std::vector<double> g(codomain.size(), 0.0);
        StepFunction gf;
        gf.values.assign(codomain.size(), Rat(0));
        gf.infinite.assign(codomain.size(), false);
        for (int y = 0; y < codomain.size(); ++y) {
            Bitset fib = fiber(f, y, target_points);
            if (fib.none()) continue;
            ContentResult c = hausdorff_content(cellgrid, fib, m_exp, side, caps);
            require(c.mode == ResultMode::Exact, ErrorCode::TooLarge,
                    "davids probe: fiber content not exact");
            gf.values[y] = c.value;
        }
        ContentResult wi = weighted_integral_step(codomain, gf, n_exp, HUGE_VAL, caps);
        row.fiber_integral = wi.value;
        require(row.fiber_integral == 0, ErrorCode::CertificateFailure,
                "zero dyadic content but nonzero fiber-content integral");
        row.ratio = 1.0;
    } else {
        row.zero_branch = false;
        require(row.tilde > 0, ErrorCode::CertificateFailure,
                "positive dyadic content with zero tilde content");
        row.ratio = rat_to_double(row.h_nm / row.tilde);
        require(row.ratio >= 1.0 - 1e-12, ErrorCode::CertificateFailure,
                "davids ratio below one");
    }
    return row;
}

Theorem30Report theorem30_report(const MappingContentQuery& q, const EngineCaps& caps) {
    check_query(q);
    require(q.domain->cell_mode(), ErrorCode::DomainError,
            "theorem30_report needs a cell-mode domain (cell mass)");
    require(q.t > 0.0 && q.t <= q.s, ErrorCode::DomainError,
            "theorem30_report: need 0 < t <= s");
    Theorem30Report rep;
    rep.s = q.s;
    rep.t = q.t;
    const FiniteMetricSpace& X = *q.domain;
    const double eps = X.eps();
    double dia = diam_pointset(X, X.full_subset());

    rep.ahlfors.r_min = 2.0 * eps;
    rep.ahlfors.r_max = std::max(dia / 4.0, rep.ahlfors.r_min);
    std::vector<double> radii;
    for (int i = 0; i < 8; ++i) {
        double u = double(i) / 7.0;
        radii.push_back(rep.ahlfors.r_min *
                        std::pow(rep.ahlfors.r_max / rep.ahlfors.r_min, u));
    }
    // Ahlfors constants from ball-mass ratios over the window; the 5th
    // percentile damps boundary cells
    double cellmass = zeta(q.s, eps, true);
    std::vector<double> ratios;
    for (int x = 0; x < X.size(); ++x)
        for (double r : radii) {
            int cnt = closed_ball(X, x, r).count();
            ratios.push_back(double(cnt) * cellmass / std::pow(r, q.s));
        }
    std::sort(ratios.begin(), ratios.end());
    rep.ahlfors.c_a = ratios[size_t(0.05 * double(ratios.size() - 1))];
    rep.ahlfors.c_b = ratios.back();

    // RHS: density profile minima against cell mass
    double rhs_sum = 0.0;
    for (int x = q.target.first(); x >= 0; x = q.target.next(x)) {
        DensityProfile prof = lower_density_profile(q, x, radii, caps);
        rep.density_min.push_back(prof.reported_min);
        rhs_sum += prof.reported_min * cellmass;
    }
    // the factor is w_{s-t} w_t / C_A = coarea_constant(s,t) * w_s / C_A
    rep.rhs = coarea_constant(q.s, q.t) * omega(q.s) / rep.ahlfors.c_a * rhs_sum;

    // LHS: fiber contents against codomain cell mass
    double cellmass_y = zeta(q.t, q.codomain->eps(), true);
    double lhs_sum = 0.0;
    for (int y = 0; y < q.codomain->size(); ++y) {
        Bitset fib = fiber(*q.f, y, q.target);
        if (fib.none()) continue;
        ContentResult c = hausdorff_content(*q.domain, fib, q.s - q.t, HUGE_VAL, caps);
        lhs_sum += rat_to_double(c.value) * cellmass_y;
    }
    rep.lhs = lhs_sum;
    rep.ratio = rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
    return rep;
}

PhiZeroReport phi_zero_scale_check(const MappingContentQuery& q, const EngineCaps& caps) {
    check_query(q);
    require(q.target.any(), ErrorCode::DomainError, "phi_zero_scale_check: empty target");
    require(q.target.count() <= caps.dp_cap, ErrorCode::TooLarge,
            "phi_zero_scale_check: target above the DP cap");
    PhiZeroReport rep;
    // finest feasible scale: cell size in cell mode, otherwise below the
    // smallest positive realized distance
    double finest;
    if (q.domain->cell_mode()) {
        finest = q.domain->eps();
    } else {
        double minpos = HUGE_VAL;
        std::vector<int> pts = q.target.indices();
        for (size_t a = 0; a < pts.size(); ++a)
            for (size_t b = a + 1; b < pts.size(); ++b) {
                double d = q.domain->dist(pts[a], pts[b]);
                if (d > 0.0) minpos = std::min(minpos, d);
            }
        finest = std::isfinite(minpos) ? minpos / 2.0 : 1.0;
    }
    double dia = diam(*q.domain, q.target);
    std::vector<double> deltas{HUGE_VAL};
    if (dia > finest) deltas.push_back(std::sqrt(finest * dia));
    deltas.push_back(finest);

    for (double d : deltas) {
        MappingContentQuery qq = q;
        qq.delta = d;
        MappingContentResult r = phi_content(qq, caps);
        require(r.mode == ResultMode::Exact, ErrorCode::TooLarge,
                "phi_zero_scale_check: phi not exact");
        rep.deltas.push_back(d);
        rep.values.push_back(r.value);
    }
    rep.zero_at_inf = (rep.values.front() == 0);
    for (size_t i = 1; i < rep.values.size(); ++i)
        require((rep.values[i] == 0) == rep.zero_at_inf, ErrorCode::CertificateFailure,
                "vanishing at infinity does not match vanishing at finer scales");
    return rep;
}

}  // namespace mct
