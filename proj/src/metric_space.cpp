#include "mct/metric_space.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>

#include "mct/rng.hpp"

namespace mct {

uint64_t FiniteMetricSpace::next_id() {
    static std::atomic<uint64_t> counter{1};
    return counter.fetch_add(1);
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels,
                                     std::vector<std::vector<double>> dist,
                                     double resolution_eps)
    : id_(next_id()), labels_(std::move(labels)), dist_(std::move(dist)),
      eps_(resolution_eps) {
    require(eps_ >= 0.0, ErrorCode::DomainError, "resolution_eps must be >= 0");
    require(dist_.size() == labels_.size(), ErrorCode::DomainError,
            "distance matrix size does not match point count");
    for (const auto& row : dist_)
        require(row.size() == labels_.size(), ErrorCode::DomainError,
                "distance matrix is not square");
}

FiniteMetricSpace FiniteMetricSpace::with_eps(double eps) const {
    return FiniteMetricSpace(labels_, dist_, eps);
}

FiniteMetricSpace FiniteMetricSpace::scaled(double c) const {
    require(c > 0.0, ErrorCode::DomainError, "scale factor must be positive");
    auto d = dist_;
    for (auto& row : d)
        for (auto& v : row) v *= c;
    return FiniteMetricSpace(labels_, std::move(d), eps_ * c);
}

ValidationReport validate(const FiniteMetricSpace& space) {
    ValidationReport rep;
    const int n = space.size();
    auto add = [&rep](ErrorCode code, int i, int j, int k, std::string msg) {
        rep.ok = false;
        rep.issues.push_back({code, i, j, k, std::move(msg)});
    };
    for (int i = 0; i < n && rep.ok; ++i)
        for (int j = 0; j < n; ++j)
            if (space.dist(i, j) < 0.0) {
                add(ErrorCode::NegativeDistance, i, j, -1, "negative distance");
                break;
            }
    for (int i = 0; i < n && rep.ok; ++i)
        if (space.dist(i, i) != 0.0) {
            add(ErrorCode::NonZeroDiagonal, i, i, -1, "nonzero diagonal entry");
            break;
        }
    for (int i = 0; i < n && rep.ok; ++i)
        for (int j = i + 1; j < n; ++j)
            if (space.dist(i, j) != space.dist(j, i)) {
                add(ErrorCode::NonSymmetric, i, j, -1, "matrix not symmetric");
                break;
            }
    if (rep.ok) {
        for (int i = 0; i < n && rep.ok; ++i)
            for (int j = 0; j < n && rep.ok; ++j)
                for (int k = 0; k < n; ++k) {
                    double lhs = space.dist(i, k);
                    double rhs = space.dist(i, j) + space.dist(j, k);
                    double tol = 1e-9 * std::max({lhs, rhs, 1e-300});
                    if (lhs > rhs + tol) {
                        add(ErrorCode::TriangleViolation, i, j, k,
                            "triangle inequality violated");
                        break;
                    }
                }
    }
    return rep;
}

Bitset closed_ball(const FiniteMetricSpace& space, int center, double r) {
    require(center >= 0 && center < space.size(), ErrorCode::DomainError,
            "closed_ball: center out of range");
    require(r >= 0.0, ErrorCode::DomainError, "closed_ball: negative radius");
    Bitset b(space.size());
    for (int i = 0; i < space.size(); ++i)
        if (space.dist(center, i) <= r) b.set(i);
    return b;
}

double diam_pointset(const FiniteMetricSpace& space, const Bitset& subset) {
    double d = 0.0;
    for (int i = subset.first(); i >= 0; i = subset.next(i))
        for (int j = subset.next(i); j >= 0; j = subset.next(j))
            d = std::max(d, space.dist(i, j));
    return d;
}

double diam(const FiniteMetricSpace& space, const Bitset& subset) {
    if (subset.none()) return 0.0;
    return diam_pointset(space, subset) + space.eps();
}

double lipschitz_constant(const FiniteMetricSpace& domain,
                          const FiniteMetricSpace& codomain,
                          const std::vector<int>& image) {
    require(int(image.size()) == domain.size(), ErrorCode::DomainError,
            "mapping image length mismatch");
    for (int v : image)
        require(v >= 0 && v < codomain.size(), ErrorCode::DomainError,
                "mapping image index out of range");
    double lip = 0.0;
    for (int i = 0; i < domain.size(); ++i)
        for (int j = i + 1; j < domain.size(); ++j) {
            double dx = domain.dist(i, j);
            if (dx == 0.0) {
                require(codomain.dist(image[i], image[j]) == 0.0,
                        ErrorCode::DomainError,
                        "map not Lipschitz: collapses a zero distance to a positive one");
                continue;
            }
            lip = std::max(lip, codomain.dist(image[i], image[j]) / dx);
        }
    return lip;
}

LipschitzMapping make_mapping(const FiniteMetricSpace& domain,
                              const FiniteMetricSpace& codomain,
                              std::vector<int> image) {
    LipschitzMapping f;
    f.domain_id = domain.id();
    f.codomain_id = codomain.id();
    f.lip = lipschitz_constant(domain, codomain, image);
    f.image = std::move(image);
    return f;
}

Bitset map_image(const LipschitzMapping& f, const Bitset& subset,
                 const FiniteMetricSpace& codomain) {
    Bitset img(codomain.size());
    for (int i = subset.first(); i >= 0; i = subset.next(i)) img.set(f.image[i]);
    return img;
}

int doubling_probe(const FiniteMetricSpace& space) {
    const int n = space.size();
    if (n <= 1) return 1;
    // radius grid: distinct realized distances (capped to 32 quantiles)
    std::set<double> dists;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (space.dist(i, j) > 0.0) dists.insert(space.dist(i, j));
    if (dists.empty()) return 1;
    std::vector<double> radii(dists.begin(), dists.end());
    if (radii.size() > 32) {
        std::vector<double> picked;
        for (size_t q = 0; q < 32; ++q)
            picked.push_back(radii[q * (radii.size() - 1) / 31]);
        radii = picked;
    }
    int worst = 1;
    for (int c = 0; c < n; ++c) {
        for (double r : radii) {
            Bitset ball = closed_ball(space, c, r);
            Bitset uncovered = ball;
            int used = 0;
            while (uncovered.any()) {
                int y = uncovered.first();
                uncovered = uncovered.minus(closed_ball(space, y, r / 2.0));
                ++used;
            }
            worst = std::max(worst, used);
        }
    }
    return worst;
}

// ---- generators -----------------------------------------------------------

namespace {

FiniteMetricSpace from_coords(std::vector<std::vector<double>> pts, double eps,
                              const std::string& prefix, bool sup_metric = false) {
    const int n = int(pts.size());
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double v = 0.0;
            if (sup_metric) {
                for (size_t k = 0; k < pts[i].size(); ++k)
                    v = std::max(v, std::fabs(pts[i][k] - pts[j][k]));
            } else {
                double s = 0.0;
                for (size_t k = 0; k < pts[i].size(); ++k) {
                    double t = pts[i][k] - pts[j][k];
                    s += t * t;
                }
                v = std::sqrt(s);
            }
            d[i][j] = d[j][i] = v;
        }
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = prefix + std::to_string(i);
    return FiniteMetricSpace(std::move(labels), std::move(d), eps);
}

void check_cap(long long count, int cap) {
    require(count <= cap, ErrorCode::SizeLimit,
            "generator would exceed the point cap (" + std::to_string(count) +
                " > " + std::to_string(cap) + ")");
}

}  // namespace

FiniteMetricSpace gen_cantor(int level, int point_cap) {
    require(level >= 0, ErrorCode::DomainError, "cantor: level must be >= 0");
    check_cap(1LL << level, point_cap);
    double denom = std::pow(3.0, level);  // exact for level <= 33
    std::vector<std::vector<double>> pts;
    // left endpoints of the level-k middle-thirds intervals
    std::vector<long long> nums{0};
    for (int l = 0; l < level; ++l) {
        std::vector<long long> next;
        long long step = 1;
        for (int t = 0; t < level - 1 - l; ++t) step *= 3;
        for (long long m : nums) {
            next.push_back(m);
            next.push_back(m + 2 * step);
        }
        nums = std::move(next);
    }
    std::sort(nums.begin(), nums.end());
    for (long long m : nums) pts.push_back({double(m) / denom});
    return from_coords(std::move(pts), 1.0 / denom, "c");
}

FiniteMetricSpace gen_sierpinski_carpet(int level, int point_cap) {
    require(level >= 0, ErrorCode::DomainError, "carpet: level must be >= 0");
    long long count = 1;
    for (int l = 0; l < level; ++l) count *= 8;
    check_cap(count, point_cap);
    double denom = std::pow(3.0, level);
    std::vector<std::pair<long long, long long>> cells{{0, 0}};
    for (int l = 0; l < level; ++l) {
        std::vector<std::pair<long long, long long>> next;
        long long step = 1;
        for (int t = 0; t < level - 1 - l; ++t) step *= 3;
        for (auto [x, y] : cells)
            for (int dx = 0; dx < 3; ++dx)
                for (int dy = 0; dy < 3; ++dy) {
                    if (dx == 1 && dy == 1) continue;
                    next.push_back({x + dx * step, y + dy * step});
                }
        cells = std::move(next);
    }
    std::sort(cells.begin(), cells.end());
    std::vector<std::vector<double>> pts;
    for (auto [x, y] : cells) pts.push_back({double(x) / denom, double(y) / denom});
    return from_coords(std::move(pts), std::sqrt(2.0) / denom, "sc");
}

FiniteMetricSpace gen_grid(int n, int dims, int point_cap) {
    require(n >= 1, ErrorCode::DomainError, "grid: n must be >= 1");
    require(dims >= 1 && dims <= 4, ErrorCode::DomainError, "grid: dims in [1,4]");
    long long count = 1;
    for (int d = 0; d < dims; ++d) {
        count *= n;
        check_cap(count, point_cap);
    }
    std::vector<std::vector<double>> pts;
    std::vector<int> idx(dims, 0);
    while (true) {
        std::vector<double> p(idx.begin(), idx.end());
        pts.push_back(p);
        int d = dims - 1;
        while (d >= 0 && ++idx[d] == n) idx[d--] = 0;
        if (d < 0) break;
    }
    return from_coords(std::move(pts), 0.0, "g");
}

FiniteMetricSpace gen_random_points(int n, int dims, uint64_t seed, int point_cap) {
    require(n >= 1, ErrorCode::DomainError, "random_points: n must be >= 1");
    require(dims >= 1, ErrorCode::DomainError, "random_points: dims must be >= 1");
    check_cap(n, point_cap);
    Rng rng(seed);
    std::vector<std::vector<double>> pts(n, std::vector<double>(dims));
    for (auto& p : pts)
        for (auto& c : p) c = rng.u01();
    return from_coords(std::move(pts), 0.0, "p");
}

FiniteMetricSpace gen_product(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                              int point_cap) {
    long long count = (long long)x.size() * y.size();
    check_cap(count, point_cap);
    const int n = int(count);
    std::vector<std::string> labels;
    labels.reserve(n);
    for (int i = 0; i < x.size(); ++i)
        for (int j = 0; j < y.size(); ++j)
            labels.push_back("(" + x.label(i) + "," + y.label(j) + ")");
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < x.size(); ++i)
        for (int j = 0; j < y.size(); ++j)
            for (int k = 0; k < x.size(); ++k)
                for (int l = 0; l < y.size(); ++l) {
                    int a = i * y.size() + j, b = k * y.size() + l;
                    d[a][b] = std::max(x.dist(i, k), y.dist(j, l));
                }
    return FiniteMetricSpace(std::move(labels), std::move(d),
                             std::max(x.eps(), y.eps()));
}

FiniteMetricSpace generate(const std::string& spec, int point_cap) {
    auto bad = [&spec]() -> FiniteMetricSpace {
        fail(ErrorCode::ConfigError, "unrecognized generator spec: " + spec);
    };
    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> out;
        size_t pos = 0;
        while (pos <= s.size()) {
            size_t e = s.find(sep, pos);
            if (e == std::string::npos) e = s.size();
            out.push_back(s.substr(pos, e - pos));
            pos = e + 1;
        }
        return out;
    };
    if (spec.rfind("product:", 0) == 0) {
        // product:(A)x(B)
        std::string body = spec.substr(8);
        if (body.size() < 5 || body.front() != '(') return bad();
        int depth = 0;
        size_t close = std::string::npos;
        for (size_t i = 0; i < body.size(); ++i) {
            if (body[i] == '(') ++depth;
            if (body[i] == ')' && --depth == 0) { close = i; break; }
        }
        if (close == std::string::npos || close + 2 >= body.size() ||
            body[close + 1] != 'x' || body[close + 2] != '(' || body.back() != ')')
            return bad();
        std::string a = body.substr(1, close - 1);
        std::string b = body.substr(close + 3, body.size() - close - 4);
        return gen_product(generate(a, point_cap), generate(b, point_cap), point_cap);
    }
    auto parts = split(spec, ':');
    try {
        if (parts[0] == "cantor" && parts.size() == 2)
            return gen_cantor(std::stoi(parts[1]), point_cap);
        if (parts[0] == "carpet" && parts.size() == 2)
            return gen_sierpinski_carpet(std::stoi(parts[1]), point_cap);
        if (parts[0] == "grid" && (parts.size() == 2 || parts.size() == 3))
            return gen_grid(std::stoi(parts[1]),
                            parts.size() == 3 ? std::stoi(parts[2]) : 1, point_cap);
        if (parts[0] == "random" && parts.size() == 4)
            return gen_random_points(std::stoi(parts[1]), std::stoi(parts[2]),
                                     std::stoull(parts[3]), point_cap);
    } catch (const std::invalid_argument&) {
        return bad();
    } catch (const std::out_of_range&) {
        return bad();
    }
    return bad();
}

}  // namespace mct
