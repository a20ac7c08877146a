#include "frobmor/json_io.hpp"

namespace frobmor {

json to_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j, u32 p) {
    if (!j.is_array()) throw error("matrix: expected an array of rows");
    int rows = (int)j.size();
    int cols = rows ? (int)j[0].size() : 0;
    Matrix m(rows, cols, p);
    for (int i = 0; i < rows; ++i) {
        if (!j[i].is_array() || (int)j[i].size() != cols)
            throw error("matrix: ragged rows at row " + std::to_string(i));
        for (int c = 0; c < cols; ++c) {
            if (!j[i][c].is_number_integer())
                throw error("matrix: non-integer entry at (" + std::to_string(i) + "," +
                            std::to_string(c) + ")");
            m.set_int(i, c, j[i][c].get<long long>());
        }
    }
    return m;
}

json to_json(const LambdaModule& m) {
    return json{{"n", m.n}, {"dim", m.dim}, {"action", to_json(m.action)}};
}

LambdaModule module_from_json(const json& j, u32 p) {
    if (!j.contains("n") || !j.contains("dim") || !j.contains("action"))
        throw error("module: missing n/dim/action");
    int dim = j.at("dim").get<int>();
    u32 n = j.at("n").get<u32>();
    Matrix act = matrix_from_json(j.at("action"), p);
    if (act.rows() != dim) throw error("module: action size does not match dim");
    return LambdaModule(dim, n, std::move(act)); // ctor checks action^n = 0
}

json to_json(const ModuleMap& f) {
    return json{{"src", to_json(f.src)}, {"tgt", to_json(f.tgt)}, {"mat", to_json(f.mat)}};
}

ModuleMap module_map_from_json(const json& j, u32 p) {
    if (!j.contains("src") || !j.contains("tgt") || !j.contains("mat"))
        throw error("module map: missing src/tgt/mat");
    return ModuleMap(module_from_json(j.at("src"), p), module_from_json(j.at("tgt"), p),
                     matrix_from_json(j.at("mat"), p));
}

json to_json(const ChainObject& x) {
    json terms = json::array(), maps = json::array();
    for (auto& t : x.terms) terms.push_back(to_json(t));
    for (auto& m : x.maps) maps.push_back(to_json(m.mat));
    return json{{"l", x.length()}, {"terms", std::move(terms)}, {"maps", std::move(maps)}};
}

ChainObject chain_from_json(const json& j, u32 p) {
    if (!j.contains("l") || !j.contains("terms") || !j.contains("maps"))
        throw error("chain: missing l/terms/maps");
    int l = j.at("l").get<int>();
    const json& jt = j.at("terms");
    const json& jm = j.at("maps");
    if ((int)jt.size() != l + 1) throw error("chain: expected l+1 terms");
    if ((int)jm.size() != l) throw error("chain: expected l maps");
    std::vector<LambdaModule> terms;
    for (int k = 0; k <= l; ++k) terms.push_back(module_from_json(jt[k], p));
    std::vector<ModuleMap> maps;
    for (int k = 0; k < l; ++k)
        maps.push_back(ModuleMap(terms[k], terms[k + 1], matrix_from_json(jm[k], p)));
    return ChainObject(std::move(terms), std::move(maps)); // ctor checks monicity
}

json to_json(const ChainMap& f) {
    json comps = json::array();
    for (auto& c : f.comps) comps.push_back(to_json(c.mat));
    return json{{"src", to_json(f.src)}, {"tgt", to_json(f.tgt)}, {"comps", std::move(comps)}};
}

ChainMap chain_map_from_json(const json& j, u32 p) {
    if (!j.contains("src") || !j.contains("tgt") || !j.contains("comps"))
        throw error("chain map: missing src/tgt/comps");
    ChainObject src = chain_from_json(j.at("src"), p);
    ChainObject tgt = chain_from_json(j.at("tgt"), p);
    const json& jc = j.at("comps");
    if ((int)jc.size() != src.length() + 1) throw error("chain map: component count");
    std::vector<ModuleMap> comps;
    for (int k = 0; k <= src.length(); ++k)
        comps.push_back(ModuleMap(src.terms[k], tgt.terms[k], matrix_from_json(jc[k], p)));
    return ChainMap(std::move(src), std::move(tgt), std::move(comps));
}

namespace {
json tag_to_json(const MembershipTag& t) {
    switch (t.kind) {
    case MembershipTag::Gamma:
        return json{{"kind", "Gamma"}, {"s", t.s}, {"t", t.t}};
    case MembershipTag::Delta: {
        json out{{"kind", "Delta"}, {"s", t.s}, {"t", t.t}};
        if (t.delta_witness) out["witness"] = to_json(*t.delta_witness);
        return out;
    }
    default:
        return json{{"kind", "none"}};
    }
}
} // namespace

json to_json(const TriangleCertificate& t) {
    const char* kind = t.witness == TriangleCertificate::SES          ? "ses"
                       : t.witness == TriangleCertificate::ConeCompare ? "cone"
                                                                       : "cocone";
    json out{{"left", to_json(t.left)},       {"middle", to_json(t.middle)},
             {"right", to_json(t.right)},     {"f_left", to_json(t.f_left)},
             {"f_right", to_json(t.f_right)}, {"witness", kind},
             {"left_tag", tag_to_json(t.left_tag)},
             {"right_tag", tag_to_json(t.right_tag)}};
    if (t.compare) out["compare"] = to_json(*t.compare);
    return out;
}

} // namespace frobmor
