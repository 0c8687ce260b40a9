#include "weylkit/report.hpp"

#include <json.hpp>

namespace weylkit::report {

std::string vec_json(const Vec& v) { return vec_str(v); }

static nlohmann::json vecs_to_json(const std::vector<Vec>& vs) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto& v : vs) {
        nlohmann::json row = nlohmann::json::array();
        for (auto& c : v) row.push_back(c.get_str());
        arr.push_back(row);
    }
    return arr;
}

void to_json_cartan(nlohmann::json& j, const cartan::CartanSpace& c) {
    j["schema"] = "weylkit-cartan-v1";
    j["algebra"] = c.g->datum()->name();
    j["rank"] = c.rank();
    std::vector<Vec> basis = c.subspace.basis_vectors();
    j["subspace_basis"] = vecs_to_json(basis);
    j["lattice"] = vecs_to_json(c.lattice);
    j["lattice_exact"] = c.lattice_exact;
    j["l0_dim"] = c.l0.dim();
    j["L_dim"] = c.L.dim();
    if (c.complexity) j["complexity"] = *c.complexity;
    j["provenance"] = c.provenance.steps;
}

void to_json_weyl(nlohmann::json& j, const weyl::WeylResult& r) {
    j["schema"] = "weylkit-weyl-v1";
    to_json_cartan(j["cartan"], r.cartan);
    j["generator_roots"] = vecs_to_json(r.generator_roots);
    j["delta_gamma"] = vecs_to_json(r.delta_gamma);
    j["order"] = r.order;
    j["cone_inequalities"] = vecs_to_json(r.valuation_cone.inequalities);
    j["cone_simplicial"] = r.valuation_cone.simplicial;
    j["pi_hat"] = vecs_to_json(r.pi_hat);
    j["provenance"] = r.provenance;
    j["decided"] = r.decided == weyl::Decided::Yes;
    if (r.decided != weyl::Decided::Yes) j["candidates"] = r.candidates;
}

void to_json_disting(nlohmann::json& j, const disting::DistinguishedData& d) {
    j["schema"] = "weylkit-disting-v1";
    j["l0_dim"] = d.l0.dim();
    j["underline_g_dim"] = d.underline_g.dim();
    j["underline_h_dim"] = d.underline_h.dim();
    j["witness"] = d.witness_words.empty() ? "eH" : "word";
    j["matched_row"] = d.matched_row;
    j["matched_table"] = d.matched_table;
    if (d.underline_fiber) j["fiber_dim"] = d.underline_fiber->vdim;
    j["provenance"] = d.provenance;
}

}  // namespace weylkit::report
