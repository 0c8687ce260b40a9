// weylkit: exact computation of Cartan spaces, Weyl groups, valuation cones
// and distinguished components for homogeneous spaces and affine homogeneous
// vector bundles over reductive groups.
//
// Subcommands: cartan | weyl | cone | disting | tables | oracle
// Exit codes: 0 ok, 1 pipeline error, 2 parse error, 3 undecided.

#include <CLI11.hpp>
#include <json.hpp>

#include "weylkit/report.hpp"

#include <fstream>
#include <iostream>
#include <set>

using namespace weylkit;
using nlohmann::json;

namespace {

struct Instance {
    std::string g_name;
    std::string h_spec;
    std::vector<std::string> v_terms;
    uint64_t seed = 20240;
};

liealg::Subalgebra make_h(const catalog::AlgebraPtr& g, const Instance& in) {
    if (in.h_spec.empty() || in.h_spec == "zero") return liealg::Subalgebra::zero(g);
    tables::Bindings b;  // explicit numeric specs only on the CLI
    return tables::instantiate_h(g, in.h_spec, b);
}

std::optional<repkit::Module> make_v(const catalog::AlgebraPtr& g, const liealg::Subalgebra& h,
                                     const Instance& in) {
    if (in.v_terms.empty()) return std::nullopt;
    repkit::Embedded eh = repkit::embed_abstract(g, h);
    std::vector<Vec> lams;
    for (auto& t : in.v_terms) {
        auto more = tables::instantiate_module_weights(t, eh, {});
        for (auto& l : more) lams.push_back(l);
    }
    if (lams.empty()) return std::nullopt;
    return catalog::hw_model_sum(eh, lams);
}

int run_tables_validate() {
    auto store = tables::load();
    auto rep = tables::load_and_validate(store, true);
    json j;
    j["schema"] = "weylkit-tables-v1";
    j["checks_passed"] = rep.passed;
    json issues = json::array();
    for (auto& i : rep.issues) {
        json e;
        e["table"] = i.table;
        e["row"] = i.row;
        e["message"] = i.message;
        issues.push_back(e);
    }
    j["issues"] = issues;
    std::cout << j.dump(2) << "\n";
    return rep.ok() ? 0 : 1;
}

int run_oracle(const std::string& which, const std::string& g_name) {
    json j;
    j["schema"] = "weylkit-oracle-v1";
    auto store = tables::load();
    if (which == "census") {
        auto d = catalog::datum_by_name(g_name);
        auto enumerated = rootsys::enumerate_large(d);
        auto families = tables::table3_families(store, d);
        auto canon = [&](std::vector<Vec> v) {
            std::sort(v.begin(), v.end());
            return v;
        };
        std::set<std::vector<Vec>> a, b;
        for (auto& s : enumerated) a.insert(canon(s));
        for (auto& s : families) b.insert(canon(s));
        j["enumerated"] = a.size();
        j["families"] = b.size();
        j["match"] = (a == b);
        std::cout << j.dump(2) << "\n";
        return a == b ? 0 : 1;
    }
    if (which == "weylorder") {
        auto d = catalog::datum_by_name(g_name);
        auto w = rootsys::reflection_subgroup(d, d->simple_roots());
        j["order"] = w.order();
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (which == "kconstant") {
        auto d = catalog::datum_by_name(g_name);
        auto g = catalog::algebra_of(d);
        Vec theta;
        Rat best(0);
        for (auto& r : d->roots())
            if (d->inner(r, r) > best) {
                best = d->inner(r, r);
                theta = r;
            }
        Vec tv = g->coroot_element(theta);
        Rat k = g->killing(tv, tv);
        j["k"] = k.get_str();
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cerr << "unknown oracle: " << which << "\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weylkit: Weyl groups of homogeneous spaces and bundles"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);

    Instance in;
    std::string oracle_kind, oracle_g;

    auto add_common = [&](CLI::App* cmd) {
        cmd->set_help_flag("--help", "print help");
        cmd->add_option("--g", in.g_name, "ambient algebra, e.g. sl4, so7, sp4xsp4, F4")
            ->required();
        cmd->add_option("--h", in.h_spec, "subalgebra catalog spec, e.g. sp:4, g2, diag");
        cmd->add_option("--v", in.v_terms, "module terms over h, e.g. tau R(3) 2*tau");
        cmd->add_option("--seed", in.seed, "random seed for probabilistic-exact steps");
    };

    auto* c_cartan = app.add_subcommand("cartan", "Cartan space a(g,h) or a(g,h,V)");
    add_common(c_cartan);
    auto* c_weyl = app.add_subcommand("weyl", "Weyl group W(g,h) or W(g,h,V)");
    add_common(c_weyl);
    auto* c_cone = app.add_subcommand("cone", "central valuation cone");
    add_common(c_cone);
    auto* c_disting = app.add_subcommand("disting", "distinguished component data");
    add_common(c_disting);
    auto* c_tables = app.add_subcommand("tables", "table data utilities");
    auto* c_validate = c_tables->add_subcommand("validate", "validate the data files");
    auto* c_oracle = app.add_subcommand("oracle", "independent enumeration oracles");
    c_oracle->add_option("kind", oracle_kind, "census | weylorder | kconstant")->required();
    c_oracle->add_option("--g", oracle_g, "algebra name")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_tables->parsed() && c_validate->parsed()) return run_tables_validate();
        if (c_oracle->parsed()) return run_oracle(oracle_kind, oracle_g);

        auto store = tables::load();
        cartan::Pipeline pipe(store, in.seed);
        disting::Disting dst(pipe);
        weyl::Weyl wl(pipe, dst);
        auto g = catalog::algebra_by_name(in.g_name);
        auto h = make_h(g, in);
        auto v = make_v(g, h, in);

        json j;
        if (c_cartan->parsed()) {
            cartan::CartanSpace c;
            if (v) c = pipe.cartan_bundle(g, h, v);
            else c = pipe.cartan_homogeneous(g, h);
            if (!v && liealg::nilradical(h).dim() == 0)
                c.complexity = pipe.complexity_homogeneous(g, h);
            report::to_json_cartan(j, c);
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (c_weyl->parsed() || c_cone->parsed()) {
            weyl::WeylResult r;
            if (v) r = wl.weyl_bundle(g, h, v);
            else r = wl.weyl_homogeneous(g, h);
            report::to_json_weyl(j, r);
            std::cout << j.dump(2) << "\n";
            return r.decided == weyl::Decided::Yes ? 0 : 3;
        }
        if (c_disting->parsed()) {
            disting::DistinguishedData d2;
            if (v) d2 = dst.distinguished_bundle(g, h, *v);
            else d2 = dst.distinguished_point(g, h);
            report::to_json_disting(j, d2);
            std::cout << j.dump(2) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
