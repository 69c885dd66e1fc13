#include "mct/json_io.hpp"

#include <fstream>
#include <sstream>

namespace mct {

Json rat_to_json(const Rat& q) {
    Json j;
    j["num"] = rat_num_str(q);
    j["den"] = rat_den_str(q);
    j["dec"] = rat_to_double(q);
    return j;
}

Rat rat_from_json(const Json& j) {
    if (j.is_number()) return rat_from_double(j.get<double>());
    if (j.is_string()) {
        // "p/q" or plain integer text
        std::string s = j.get<std::string>();
        auto slash = s.find('/');
        if (slash == std::string::npos) return rat_parse(s, "1");
        return rat_parse(s.substr(0, slash), s.substr(slash + 1));
    }
    require(j.is_object() && j.contains("num") && j.contains("den"),
            ErrorCode::ConfigError, "rational: expected number, \"p/q\" or {num,den}");
    auto field = [&](const char* key) -> std::string {
        const Json& v = j.at(key);
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number_integer()) return std::to_string(v.get<long long>());
        fail(ErrorCode::ConfigError, "rational: num/den must be integer or string");
    };
    return rat_parse(field("num"), field("den"));
}

Json space_to_json(const FiniteMetricSpace& space) {
    Json j;
    j["points"] = space.labels();
    j["dist"] = space.dist_matrix();
    j["eps"] = space.eps();
    return j;
}

FiniteMetricSpace space_from_json(const Json& j) {
    if (j.is_string()) return generate(j.get<std::string>());
    require(j.is_object() && j.contains("points") && j.contains("dist"),
            ErrorCode::ConfigError, "space: expected {points, dist, eps} or spec string");
    std::vector<std::string> labels;
    for (const auto& p : j.at("points")) {
        if (p.is_string()) labels.push_back(p.get<std::string>());
        else labels.push_back(p.dump());
    }
    auto dist = j.at("dist").get<std::vector<std::vector<double>>>();
    double eps = j.value("eps", 0.0);
    return FiniteMetricSpace(std::move(labels), std::move(dist), eps);
}

Json subset_to_json(const Bitset& mask) { return Json(mask.indices()); }

Bitset subset_from_json(const Json& j, int n) {
    Bitset mask(n);
    if (j.is_string()) {
        require(j.get<std::string>() == "all", ErrorCode::ConfigError,
                "subset: expected index array or \"all\"");
        for (int i = 0; i < n; ++i) mask.set(i);
        return mask;
    }
    for (const auto& v : j) {
        int i = v.get<int>();
        require(i >= 0 && i < n, ErrorCode::ConfigError, "subset index out of range");
        mask.set(i);
    }
    return mask;
}

Json content_result_to_json(const ContentResult& r) {
    Json j;
    j["value"] = rat_to_json(r.value);
    j["mode"] = result_mode_name(r.mode);
    if (!r.witness.empty()) j["witness"] = r.witness;
    if (!r.weights.empty()) {
        Json w = Json::array();
        for (const auto& [c, q] : r.weights)
            w.push_back({{"set", c}, {"a", rat_to_json(q)}});
        j["weights"] = std::move(w);
    }
    if (!r.dual.empty()) {
        Json d = Json::array();
        for (const auto& [p, q] : r.dual)
            d.push_back({{"point", p}, {"y", rat_to_json(q)}});
        j["dual"] = std::move(d);
    }
    return j;
}

Json bound_chain_to_json(const BoundChain& chain) {
    Json j;
    j["s"] = chain.s;
    j["delta"] = chain.delta;
    j["delta6"] = chain.delta6;
    j["dual_lower"] = rat_to_json(chain.dual_lower);
    j["lambda"] = rat_to_json(chain.lambda);
    j["hausdorff_delta"] = rat_to_json(chain.h_delta);
    j["hausdorff_6delta"] = rat_to_json(chain.h_6delta);
    j["rounded_cost"] = rat_to_json(chain.rounded_cost);
    j["bound_8_6s_lambda"] = rat_to_json(chain.bound);
    j["selected_balls"] = chain.selected_balls;
    j["asserted"] = {"dual_lower == lambda", "lambda <= hausdorff_delta",
                     "hausdorff_6delta <= rounded_cost",
                     "rounded_cost <= 8*6^s*lambda"};
    return j;
}

Json selection_to_json(const SelectionResult& r) {
    Json j;
    j["selected"] = r.selected;
    j["achieved"] = rat_to_json(r.achieved);
    j["bound"] = rat_to_json(r.certified_bound);
    j["dilation"] = r.dilation;
    j["approximate"] = r.approximate;
    j["exchange_checked"] = r.exchange_checked;
    if (!r.blocks.empty()) {
        Json b = Json::array();
        for (auto [lo, hi] : r.blocks) b.push_back({{"begin", lo}, {"end", hi}});
        j["blocks"] = std::move(b);
    }
    j["certificates"] = {"pairwise_disjoint_or_blockwise", "target_covered_by_3_dilates",
                         "achieved <= bound"};
    return j;
}

Json validation_to_json(const ValidationReport& rep) {
    Json j;
    j["ok"] = rep.ok;
    Json issues = Json::array();
    for (const auto& is : rep.issues) {
        Json e;
        e["code"] = error_code_name(is.code);
        e["i"] = is.i;
        e["j"] = is.j;
        if (is.k >= 0) e["k"] = is.k;
        e["message"] = is.message;
        issues.push_back(std::move(e));
    }
    j["issues"] = std::move(issues);
    return j;
}

Json eilenberg_to_json(const EilenbergReport& rep) {
    Json j;
    j["s"] = rep.s;
    j["t"] = rep.t;
    j["delta"] = rep.delta;
    j["delta0"] = rep.delta0;
    j["phi_value"] = rat_to_json(rep.phi_value);
    j["phi_mode"] = result_mode_name(rep.phi_mode);
    j["witness_cost"] = rat_to_json(rep.witness_cost);
    Json blocks = Json::array();
    for (const auto& b : rep.cover_blocks) blocks.push_back(subset_to_json(b));
    j["cover_blocks"] = std::move(blocks);
    Json fib = Json::array();
    for (const auto& row : rep.fibers) {
        Json r;
        r["y"] = row.y;
        r["fiber_size"] = row.fiber_size;
        r["fiber_content"] = rat_to_json(row.fiber_content);
        r["rhs"] = rat_to_json(row.rhs);
        fib.push_back(std::move(r));
    }
    j["fibers"] = std::move(fib);
    j["asserted"] = "fiber_content <= rhs for every codomain point";
    return j;
}

Json lemma16_to_json(const Lemma16Report& rep) {
    Json j;
    j["lip"] = rep.lip;
    j["constant"] = rep.constant;
    j["candidates"] = rep.candidates;
    j["max_candidate_ratio"] = rep.max_candidate_ratio;
    j["phi"] = rat_to_json(rep.phi_value);
    j["hausdorff"] = rat_to_json(rep.h_value);
    j["optima_bound"] = rep.optima_bound;
    return j;
}

Json density_to_json(const DensityProfile& prof) {
    Json j;
    j["x"] = prof.x;
    j["t"] = prof.t;
    j["radii"] = prof.radii;
    j["ratios"] = prof.ratios;
    j["bounds"] = prof.bounds;
    j["reported_min"] = prof.reported_min;
    j["cell_slack"] = prof.cell_slack;
    j["exact"] = prof.exact;
    return j;
}

Json theorem30_to_json(const Theorem30Report& rep) {
    Json j;
    j["s"] = rep.s;
    j["t"] = rep.t;
    j["c_a"] = rep.ahlfors.c_a;
    j["c_b"] = rep.ahlfors.c_b;
    j["r_min"] = rep.ahlfors.r_min;
    j["r_max"] = rep.ahlfors.r_max;
    j["lhs_fiber_mass"] = rep.lhs;
    j["rhs_density_mass"] = rep.rhs;
    j["ratio"] = rep.ratio;
    j["density_min"] = rep.density_min;
    j["note"] = "numerical experiment; both sides are finite-scale estimates";
    return j;
}

Json davids_to_json(const DavidsRow& row) {
    Json j;
    j["h_nm"] = rat_to_json(row.h_nm);
    j["tilde"] = rat_to_json(row.tilde);
    j["phi"] = rat_to_json(row.phi);
    j["zero_branch"] = row.zero_branch;
    j["ratio"] = row.ratio;
    if (row.zero_branch) j["fiber_integral"] = rat_to_json(row.fiber_integral);
    return j;
}

Json dyadic_result_to_json(const DyadicContentResult& r) {
    Json j;
    j["value"] = rat_to_json(r.value);
    Json cubes = Json::array();
    for (const auto& c : r.cover)
        cubes.push_back({{"level", c.level}, {"corner", c.corner}});
    j["cover"] = std::move(cubes);
    return j;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), ErrorCode::IoError, "cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail(ErrorCode::ConfigError, "malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), ErrorCode::IoError, "cannot write " + path);
    out << text;
    require(out.good(), ErrorCode::IoError, "write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), ErrorCode::IoError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace mct
