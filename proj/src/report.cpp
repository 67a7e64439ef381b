#include "heckespan/report.hpp"

#include <sstream>

namespace heckespan::report {

json to_json(const spanrank::SpanReport& r) {
    json j;
    j["schema_id"] = kSchemaSpan;
    j["weight"] = r.weight;
    j["level"] = r.level;
    j["dim"] = r.dim;
    if (r.minimal_n)
        j["minimal_n"] = *r.minimal_n;
    else
        j["minimal_n"] = nullptr;
    j["n_max"] = r.n_max;
    j["sturm_bound"] = r.sturm;
    j["sage_hypothesis_bound"] = r.sage_hypothesis;
    j["rank_trace"] = r.rank_trace;
    return j;
}

json to_json(const bounds::BoundResult& r, const bounds::BoundInput& in) {
    json j;
    j["schema_id"] = kSchemaBound;
    j["inputs"] = {{"k", in.k}, {"M", in.M}, {"s", in.s}, {"eps", in.eps}};
    j["alpha"] = r.alpha;
    j["X_M"] = r.X_M.get_str();
    j["binding_condition"] = r.binding;
    json conds = json::array();
    for (int c = 0; c < 4; ++c) {
        conds.push_back({{"condition", c + 1},
                         {"lhs", r.at_X[c].lhs},
                         {"rhs", r.at_X[c].rhs},
                         {"ok", r.at_X[c].ok},
                         {"ok_at_prev", r.at_prev[c].ok}});
    }
    j["per_condition"] = conds;
    return j;
}

json to_json(const stsums::STReport& r) {
    json j;
    j["schema_id"] = kSchemaST;
    j["M"] = r.M;
    j["k"] = r.k;
    j["X"] = r.X;
    j["E"] = r.E;
    j["F"] = r.F.value;
    j["F_empty"] = r.F.empty;
    j["G"] = r.G.value;
    j["G_empty"] = r.G.empty;
    j["H_literal"] = r.H.literal;
    j["H_normalized"] = r.H.normalized;
    j["alpha"] = r.alpha;
    j["bound_F"] = r.bound_FG;
    j["bound_H"] = r.bound_H;
    j["ratios"] = {{"F", r.ratio_F},
                   {"G", r.ratio_G},
                   {"H_literal", r.ratio_H_literal},
                   {"H_normalized", r.ratio_H_normalized}};
    j["variant_flags"] = {{"H_both_normalizations", true}};
    j["pass"] = r.pass;
    return j;
}

std::string csv_of(const json& array) {
    std::ostringstream out;
    if (!array.is_array() || array.empty()) return "";
    std::vector<std::string> keys;
    for (auto it = array[0].begin(); it != array[0].end(); ++it)
        keys.push_back(it.key());
    for (std::size_t i = 0; i < keys.size(); ++i)
        out << keys[i] << (i + 1 < keys.size() ? "," : "\n");
    for (const auto& row : array) {
        for (std::size_t i = 0; i < keys.size(); ++i) {
            const auto& v = row.contains(keys[i]) ? row[keys[i]] : json();
            if (v.is_string())
                out << v.get<std::string>();
            else
                out << v.dump();
            out << (i + 1 < keys.size() ? "," : "\n");
        }
    }
    return out.str();
}

}  // namespace heckespan::report
