#include "oracle_check.hpp"

#include "alexinv/alex_module.hpp"
#include "alexinv/errors.hpp"
#include "alexinv/fox_alex.hpp"
#include "alexinv/free_lie.hpp"
#include "alexinv/io.hpp"
#include "alexinv/johnson.hpp"
#include "alexinv/nilpotent_transport.hpp"
#include "alexinv/quad_lie.hpp"
#include "alexinv/rep_semisimple.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace alexinv;
using nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, usage = 2, budget = 3, inconsistency = 4 };

// A command result: the JSON document and the same data as a flat table.
struct Output {
    ordered_json json;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    int code = Exit::ok;
};

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s)
        q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

void print(const Output& out, bool csv) {
    if (!csv) {
        std::cout << out.json.dump(2) << '\n';
        return;
    }
    auto line = [](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            std::cout << (i ? "," : "") << csv_field(cells[i]);
        std::cout << '\n';
    };
    line(out.header);
    for (const auto& r : out.rows)
        line(r);
}

std::string join(const std::vector<std::size_t>& v, const char* sep = " ") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

template <class T>
std::string str(const T& v) {
    return std::to_string(v);
}
std::string str(bool b) { return b ? "true" : "false"; }

std::vector<std::size_t> degrees(std::size_t n) {
    std::vector<std::size_t> d(n);
    for (std::size_t i = 0; i < n; ++i)
        d[i] = i;
    return d;
}

ordered_json optional_json(const std::optional<std::size_t>& v) { return v ? ordered_json(*v) : ordered_json(); }

std::string optional_str(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : ""; }

Output dims_table(ordered_json json, const std::vector<std::size_t>& values, int code = Exit::ok) {
    Output out{std::move(json), {"degree", "dimension"}, {}, code};
    for (std::size_t q = 0; q < values.size(); ++q)
        out.rows.push_back({str(q), str(values[q])});
    return out;
}

// ---------------------------------------------------------------- commands

Output cmd_witt(std::size_t n, std::size_t q) {
    const std::size_t count = lyndon_basis(n, q).size();
    const std::size_t formula = witt_dims(n, q).at(q);
    const bool match = count == formula;
    Output out;
    out.json = {{"n", n}, {"q", q}, {"lyndon_count", count}, {"witt_formula", formula}, {"match", match}};
    out.header = {"n", "q", "lyndon_count", "witt_formula", "match"};
    out.rows = {{str(n), str(q), str(count), str(formula), str(match)}};
    out.code = match ? Exit::ok : Exit::inconsistency;
    return out;
}

Output cmd_chen(std::size_t n, std::size_t q) {
    Integer closed;
    mpz_bin_uiui(closed.get_mpz_t(), q + n, q + 2);
    closed *= static_cast<unsigned long>(q + 1);
    std::vector<Weight> w(n, Weight(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        w[i][i] = 1;
    const std::size_t computed = coker_dims(delta3(n, w), q).at(q);
    const auto spec = LieAlgebraSpec::sl(n);
    Weight top(n, 0);
    top[0] = static_cast<int>(q) + 1;
    top[1] = 1;
    const Integer weyl = weyl_dim(spec, to_dynkin(spec, top));
    const bool match = closed == static_cast<unsigned long>(computed) && weyl == closed;
    Output out;
    out.json = {{"n", n},
                {"q", q},
                {"closed_form", closed.get_str()},
                {"computed", computed},
                {"weyl_dim", weyl.get_str()},
                {"match", match}};
    out.header = {"n", "q", "closed_form", "computed", "weyl_dim", "match"};
    out.rows = {{str(n), str(q), closed.get_str(), str(computed), weyl.get_str(), str(match)}};
    out.code = match ? Exit::ok : Exit::inconsistency;
    return out;
}

Output cmd_bb(const std::string& file, std::size_t max_degree, const std::string& method) {
    const auto p = parse_lie_presentation(read_file(file));
    GradedDims dims;
    if (method == "direct") {
        FreeLieAlgebra lie(p.dim_v());
        for (std::size_t q = 0; q <= max_degree; ++q)
            dims.values.push_back(bb_direct(lie, p, q).dimension);
    } else {
        dims = coker_dims(method == "nabla" ? nabla(p) : nabla_bar(p), max_degree);
    }
    ordered_json j = {{"method", method},
                      {"dim_v", p.dim_v()},
                      {"num_relations", p.num_relations()},
                      {"degrees", degrees(dims.values.size())},
                      {"coker_dims", dims.values},
                      {"nilpotence_order", optional_json(nilpotence_order(dims))}};
    return dims_table(std::move(j), dims.values);
}

Output cmd_johnson(std::size_t g, std::size_t max_degree, bool allow_large, bool central, bool cross,
                   std::size_t equivariance_pairs) {
    const auto d = build_johnson(g, allow_large);
    const auto rep = johnson_module_dims(d, max_degree);
    int code = Exit::ok;
    ordered_json j;
    j["genus"] = g;
    j["dims"] = {{"V", rep.dim_v},
                 {"Q", rep.dim_q},
                 {"wedge2V",
                  {rep.wedge2.summands[0].dimension, rep.wedge2.summands[1].dimension,
                   rep.wedge2.summands[2].dimension}}};
    j["coker_q"] = rep.coker_q.values;
    j["M"] = rep.m.values;
    j["theorem_hypothesis_g_ge_6"] = rep.theorem_hypothesis;
    if (cross) {
        const auto k = coker_dims(kernel_nabla_bar(d), max_degree);
        const bool match = k == rep.coker_q;
        j["cross_check"] = {{"kernel_nabla_bar", k.values}, {"match", match}};
        if (!match)
            code = Exit::inconsistency;
    }
    if (equivariance_pairs > 0) {
        const auto e = q_equivariance_check(d, 1, equivariance_pairs, 1);
        j["equivariance"] = {{"degree", 1}, {"pairs", e.pairs}, {"failures", e.failures}};
        if (e.failures > 0)
            code = Exit::inconsistency;
    }
    if (central) {
        const auto z = central_z_check(d);
        j["central_z"] = {{"central", z.central}, {"checked", z.checked}, {"failing", z.failing}};
    }
    Output out{std::move(j), {"degree", "coker_q", "M"}, {}, code};
    for (std::size_t q = 0; q < rep.m.values.size(); ++q)
        out.rows.push_back({str(q), str(rep.coker_q.values[q]), str(rep.m.values[q])});
    return out;
}

Output cmd_decompose(std::size_t g, bool allow_large) {
    const auto dec = decompose_wedge2_v(g, allow_large);
    const auto spec = LieAlgebraSpec::sp(g);
    ordered_json j;
    j["genus"] = g;
    j["dim_V"] = dec.dim_v;
    j["wedge2V"] = dec.total;
    j["summands"] = ordered_json::array();
    Output out;
    out.header = {"label", "highest_weight", "dimension", "casimir", "weyl_dim"};
    for (const auto& s : dec.summands) {
        ordered_json e;
        e["label"] = s.label;
        e["highest_weight"] = s.lambda ? ordered_json(*s.lambda) : ordered_json();
        e["dimension"] = s.dimension;
        e["casimir"] = s.casimir ? ordered_json(to_string(*s.casimir)) : ordered_json();
        const std::string weyl = s.lambda ? weyl_dim(spec, *s.lambda).get_str() : "";
        e["weyl_dim"] = s.lambda ? ordered_json(weyl) : ordered_json();
        j["summands"].push_back(e);
        std::vector<std::size_t> hw;
        if (s.lambda)
            hw.assign(s.lambda->begin(), s.lambda->end());
        out.rows.push_back({s.label, join(hw), str(s.dimension), s.casimir ? to_string(*s.casimir) : "", weyl});
    }
    j["r_constituents"] = ordered_json::array();
    for (const auto& l : dec.r_constituents) {
        j["r_constituents"].push_back({{"highest_weight", l}, {"weyl_dim", weyl_dim(spec, l).get_str()}});
        out.rows.push_back({"R:constituent", join(std::vector<std::size_t>(l.begin(), l.end())), "", "",
                            weyl_dim(spec, l).get_str()});
    }
    out.json = std::move(j);
    return out;
}

Output cmd_fox(const std::string& file) {
    const auto p = parse_group_presentation(read_file(file));
    const auto a = alexander_matrix(p);
    Character one;
    one.values.assign(p.num_generators, Cyclotomic(1));
    const std::size_t b1 = twisted_h1_dim(p, one);
    const std::size_t grank = generic_rank(a);
    ordered_json matrix = ordered_json::array();
    Output out;
    out.header = {"relator", "generator", "entry"};
    for (std::size_t i = 0; i < a.rows; ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t k = 0; k < a.cols; ++k) {
            row.push_back(a.entries[i][k].to_string());
            out.rows.push_back({str(i), str(k), a.entries[i][k].to_string()});
        }
        matrix.push_back(row);
    }
    out.json = {{"generators", p.num_generators},
                {"relators", p.relators},
                {"normalized_relators", normalize(p).relators},
                {"alexander_matrix", matrix},
                {"generic_rank", grank},
                {"b1", b1},
                {"generic_h1_dim", p.num_generators == 0 ? 0 : p.num_generators - 1 - grank}};
    return out;
}

Output cmd_cv(const std::string& file, std::size_t depth, const std::string& character, unsigned torsion,
              bool restricted, std::size_t max_points) {
    const auto p = parse_group_presentation(read_file(file));
    Output out;
    if (!character.empty()) {
        const auto rho = parse_character(character);
        const std::size_t h1 = twisted_h1_dim(p, rho);
        const bool in_t0 = in_identity_component(p, rho);
        const bool member = h1 >= depth && (!restricted || in_t0);
        out.json = {{"character", rho.to_string()}, {"depth", depth},       {"h1_dim", h1},
                    {"restricted", restricted},     {"in_identity_component", in_t0}, {"member", member}};
        out.header = {"character", "depth", "h1_dim", "restricted", "in_identity_component", "member"};
        out.rows = {{rho.to_string(), str(depth), str(h1), str(restricted), str(in_t0), str(member)}};
        return out;
    }
    const auto hits = torsion_sweep(p, torsion, depth, {.max_points = max_points, .restricted = restricted});
    ordered_json list = ordered_json::array();
    out.header = {"character", "h1_dim"};
    for (const auto& rho : hits) {
        const std::size_t h1 = twisted_h1_dim(p, rho);
        list.push_back({{"character", rho.to_string()}, {"h1_dim", h1}});
        out.rows.push_back({rho.to_string(), str(h1)});
    }
    out.json = {{"torsion", torsion},
                {"depth", depth},
                {"restricted", restricted},
                {"count", hits.size()},
                {"characters", list}};
    return out;
}

Output cmd_nilpotence_module(const std::string& file) {
    const auto fam = parse_matrix_family(read_file(file));
    const auto res = fam.laurent ? is_nilpotent(FinDimLaurentModule{fam.dimension, fam.matrices})
                                 : annihilator_exponent(FinDimSymModule{fam.dimension, fam.matrices});
    Output out;
    out.json = {{"kind", fam.laurent ? "laurent" : "sym"},
                {"dimension", fam.dimension},
                {"nilpotent", res.nilpotent},
                {"exponent", optional_json(res.exponent)},
                {"filtration", res.filtration}};
    out.header = {"kind", "dimension", "nilpotent", "exponent", "filtration"};
    out.rows = {{fam.laurent ? "laurent" : "sym", str(fam.dimension), str(res.nilpotent), optional_str(res.exponent),
                 join(res.filtration)}};
    return out;
}

Output cmd_nilpotence_presentation(const std::string& file, std::size_t max_degree) {
    const auto p = parse_lie_presentation(read_file(file));
    const auto tc = truncated_cokernel(nabla(p), max_degree);
    const auto laur = exp_transport(sym_module(tc));
    const auto cmp = annihilator_exponent_match(laur, tc.dims);
    const char* status = cmp.status == ExponentMatch::agree      ? "agree"
                         : cmp.status == ExponentMatch::vacuous ? "vacuous"
                                                                : "disagree";
    Output out;
    out.json = {{"coker_dims", tc.dims.values},
                {"module_dimension", laur.dimension},
                {"module_exponent", optional_json(cmp.module_exponent)},
                {"vanishing_degree", optional_json(cmp.vanishing_degree)},
                {"status", status}};
    out.header = {"module_dimension", "module_exponent", "vanishing_degree", "status"};
    out.rows = {{str(laur.dimension), optional_str(cmp.module_exponent), optional_str(cmp.vanishing_degree), status}};
    out.code = cmp.status == ExponentMatch::disagree ? Exit::inconsistency : Exit::ok;
    return out;
}

Output cmd_oracle_check(std::uint32_t seed, std::size_t presentations) {
    Output out;
    out.json = cli::run_oracle_check(seed, presentations);
    out.header = {"check", "cases", "failures"};
    for (const auto& c : out.json["checks"])
        out.rows.push_back({c["name"].get<std::string>(), str(c["cases"].get<std::size_t>()),
                            str(c["failures"].get<std::size_t>())});
    out.code = out.json["ok"].get<bool>() ? Exit::ok : Exit::inconsistency;
    return out;
}

int fail(int code, const char* kind, const std::string& reason) {
    ordered_json j = {{"error", kind}, {"reason", reason}};
    std::cout << j.dump(2) << '\n';
    std::cerr << "alexinv: " << reason << '\n';
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Infinitesimal Alexander invariants, Johnson modules and Fox calculus in exact arithmetic.\n"
                 "Memory budget: ALEXINV_MEMORY_BUDGET_MB (default 4096)."};
    app.require_subcommand(1);

    bool csv = false;
    std::function<Output()> run;
    auto add_csv = [&](CLI::App* s) { s->add_flag("--csv", csv, "Emit CSV instead of JSON"); };

    std::size_t n = 0, q = 0, max_degree = 0, genus = 3, depth = 1, pairs = 0, presentations = 50;
    std::size_t max_points = std::size_t(1) << 20;
    unsigned torsion = 0;
    std::uint32_t seed = 1;
    std::string file, method = "nabla", character, module_file;
    bool allow_large = false, central = false, cross = false, restricted = false;

    auto* witt = app.add_subcommand("witt", "Lyndon word count against the Witt formula");
    witt->add_option("-n", n, "Number of generators")->required()->check(CLI::Range(1, 64));
    witt->add_option("-q", q, "Degree")->required()->check(CLI::Range(1, 30));
    add_csv(witt);
    witt->callback([&] { run = [&] { return cmd_witt(n, q); }; });

    auto* chen = app.add_subcommand("chen", "coker(delta_3) in degree q against the closed form and Weyl dimension");
    chen->add_option("-n", n, "dim V")->required()->check(CLI::Range(2, 12));
    chen->add_option("-q", q, "Degree")->required()->check(CLI::Range(0, 12));
    add_csv(chen);
    chen->callback([&] { run = [&] { return cmd_chen(n, q); }; });

    auto* bb = app.add_subcommand("bb", "Infinitesimal Alexander invariant dimensions of a quadratic presentation");
    bb->add_option("--presentation", file, "Lie presentation JSON")->required()->check(CLI::ExistingFile);
    bb->add_option("--max-degree", max_degree, "Largest degree q")->required()->check(CLI::Range(0, 20));
    bb->add_option("--method", method, "nabla, nabla-bar or direct")
        ->check(CLI::IsMember({"nabla", "nabla-bar", "direct"}));
    add_csv(bb);
    bb->callback([&] { run = [&] { return cmd_bb(file, max_degree, method); }; });

    auto* johnson = app.add_subcommand("johnson", "Dimensions of the Johnson module M = C + coker(q)");
    johnson->add_option("--genus", genus, "Genus g >= 3")->required()->check(CLI::Range(3, 12));
    johnson->add_option("--max-degree", max_degree, "Largest degree")->check(CLI::Range(0, 10));
    johnson->add_flag("--allow-large", allow_large, "Permit genus >= 5");
    johnson->add_flag("--central-z", central, "Also test [z, V] inside ideal(R) in degree 3");
    johnson->add_flag("--cross-check", cross, "Compare with nabla-bar of L(V)/ideal(R + Cz)");
    johnson->add_option("--equivariance-pairs", pairs, "Random equivariance tests in degree 1");
    add_csv(johnson);
    johnson->callback([&] {
        run = [&] { return cmd_johnson(genus, max_degree, allow_large, central, cross, pairs); };
    });

    auto* decompose = app.add_subcommand("decompose", "Decomposition of wedge^2 V(lambda_3)");
    decompose->add_option("--genus", genus, "Genus g >= 3")->required()->check(CLI::Range(3, 12));
    decompose->add_flag("--allow-large", allow_large, "Permit genus >= 5");
    add_csv(decompose);
    decompose->callback([&] { run = [&] { return cmd_decompose(genus, allow_large); }; });

    auto* fox = app.add_subcommand("fox", "Alexander matrix of a group presentation");
    fox->add_option("--presentation", file, "Group presentation JSON")->required()->check(CLI::ExistingFile);
    add_csv(fox);
    fox->callback([&] { run = [&] { return cmd_fox(file); }; });

    auto* cv = app.add_subcommand("cv", "Characteristic variety point tests and torsion sweeps");
    cv->add_option("--presentation", file, "Group presentation JSON")->required()->check(CLI::ExistingFile);
    cv->add_option("--depth", depth, "k in V^1_k")->check(CLI::Range(0, 1000));
    auto* ch = cv->add_option("--character", character, "Comma-separated values: p/q or zeta_m^j");
    auto* tor = cv->add_option("--torsion", torsion, "Sweep the m-torsion points")->check(CLI::Range(1, 1000));
    ch->excludes(tor);
    cv->add_flag("--restricted", restricted, "Intersect with the identity component");
    cv->add_option("--max-points", max_points, "Largest sweep size")->check(CLI::PositiveNumber);
    add_csv(cv);
    cv->callback([&] {
        if (character.empty() && torsion == 0)
            throw CLI::ValidationError("cv", "one of --character or --torsion is required");
        run = [&] { return cmd_cv(file, depth, character, torsion, restricted, max_points); };
    });

    auto* nil = app.add_subcommand("nilpotence", "Nilpotence of a matrix family, or of a presentation's b");
    auto* mod = nil->add_option("--module", module_file, "Matrix family JSON")->check(CLI::ExistingFile);
    auto* pres = nil->add_option("--presentation", file, "Lie presentation JSON")->check(CLI::ExistingFile);
    mod->excludes(pres);
    nil->add_option("--max-degree", max_degree, "Truncation degree for --presentation")->check(CLI::Range(0, 12));
    add_csv(nil);
    nil->callback([&] {
        if (module_file.empty() && file.empty())
            throw CLI::ValidationError("nilpotence", "one of --module or --presentation is required");
        run = [&] {
            return module_file.empty() ? cmd_nilpotence_presentation(file, max_degree)
                                       : cmd_nilpotence_module(module_file);
        };
    });

    auto* oracle = app.add_subcommand("oracle-check", "Run the cross-validation suite");
    oracle->add_option("--seed", seed, "Random seed");
    oracle->add_option("--presentations", presentations, "Random presentations to compare")
        ->check(CLI::Range(1, 10000));
    add_csv(oracle);
    oracle->callback([&] { run = [&] { return cmd_oracle_check(seed, presentations); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? Exit::ok : Exit::usage;
    }

    try {
        const Output out = run();
        print(out, csv);
        return out.code;
    } catch (const BudgetExceeded& e) {
        return fail(Exit::budget, "budget_exceeded", e.what());
    } catch (const InvalidArgument& e) {
        return fail(Exit::usage, "invalid_input", e.what());
    } catch (const AmbiguousDecomposition& e) {
        return fail(Exit::inconsistency, "ambiguous_decomposition", e.what());
    } catch (const InconsistencyError& e) {
        return fail(Exit::inconsistency, "inconsistency", e.what());
    }
}
