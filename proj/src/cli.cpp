#include "splice/cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "splice/batch.hpp"
#include "splice/deform.hpp"
#include "splice/jsonio.hpp"
#include "splice/semigroup.hpp"
#include "splice/tropfan.hpp"

namespace splice {

namespace {

std::string read_input(const std::string& path, const std::string& stdin_text)
{
    if (path == "-")
        return stdin_text;
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DomainError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

ordered_json check_to_json(const CheckResult& c)
{
    ordered_json j;
    j["ok"] = c.ok;
    j["offenders"] = c.offenders;
    return j;
}

ordered_json ivec_to_json(const IVec& v)
{
    ordered_json j = ordered_json::array();
    for (const Int& x : v)
        j.push_back(int_to_json(x));
    return j;
}

ordered_json validation_to_json(const ValidationReport& report,
                                const SemigroupReport* semigroup)
{
    ordered_json checks;
    checks["tree"] = check_to_json(report.tree);
    checks["valency"] = check_to_json(report.valency);
    checks["positivity"] = check_to_json(report.positivity);
    checks["coprimality"] = check_to_json(report.coprimality);
    if (report.determinant) {
        ordered_json jd;
        jd["ok"] = report.determinant->ok;
        jd["edges"] = ordered_json::array();
        for (const auto& e : report.determinant->entries) {
            ordered_json je;
            je["u"] = e.u;
            je["v"] = e.v;
            je["determinant"] = int_to_json(e.value);
            je["positive"] = e.positive;
            jd["edges"].push_back(std::move(je));
        }
        checks["determinant"] = std::move(jd);
    }
    if (semigroup) {
        ordered_json js;
        js["ok"] = semigroup->satisfied;
        js["entries"] = ordered_json::array();
        for (const auto& w : semigroup->entries) {
            ordered_json je;
            je["node"] = w.node;
            je["toward"] = w.toward;
            je["leaves"] = w.leaves;
            je["target"] = int_to_json(w.target_reduced);
            je["generators"] = ivec_to_json(w.gens_reduced);
            je["target_full"] = int_to_json(w.target_full);
            je["generators_full"] = ivec_to_json(w.gens_full);
            je["satisfied"] = w.satisfied;
            if (w.coefficients)
                je["coefficients"] = ivec_to_json(*w.coefficients);
            js["entries"].push_back(std::move(je));
        }
        checks["semigroup"] = std::move(js);
    }
    ordered_json out;
    out["checks"] = std::move(checks);
    return out;
}

CommandResult json_result(int code, ordered_json doc, std::string log = {})
{
    CommandResult r;
    r.exit_code = code;
    r.output = doc.dump() + "\n";
    r.log = std::move(log);
    return r;
}

CommandResult text_result(int code, std::string text, std::string log = {})
{
    CommandResult r;
    r.exit_code = code;
    r.output = std::move(text);
    r.log = std::move(log);
    return r;
}

std::pair<std::string, std::string> split_edge_flag(const std::string& edge)
{
    auto comma = edge.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 == edge.size())
        throw DomainError("--edge expects two vertex ids: a,b");
    return {edge.substr(0, comma), edge.substr(comma + 1)};
}

ExplicitCoefficients parse_coeff_file(const std::string& text)
{
    ordered_json doc = parse_json_document(text);
    if (!doc.is_object())
        throw ParseError("coefficient file must map node ids to matrices");
    ExplicitCoefficients out;
    for (const auto& [node, jm] : doc.items()) {
        QMatrix m;
        for (const auto& jr : jm) {
            QVec row;
            for (const auto& q : jr)
                row.push_back(json_to_rat(q, "coefficients"));
            m.push_back(std::move(row));
        }
        out[node] = std::move(m);
    }
    return out;
}

QVec parse_weight_flag(const std::string& text)
{
    QVec w;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        w.push_back(parse_rat(item));
    if (w.empty())
        throw DomainError("--weight expects a comma-separated rational vector");
    return w;
}

IMatrix parse_relations_flag(const std::string& text, size_t generators)
{
    IMatrix rel;
    if (text.empty())
        return rel;
    std::stringstream rows(text);
    std::string row;
    while (std::getline(rows, row, ';')) {
        IVec r;
        std::stringstream entries(row);
        std::string x;
        while (std::getline(entries, x, ','))
            r.push_back(parse_int(x));
        if (r.size() != generators)
            throw DomainError("relation row arity " + std::to_string(r.size()) +
                              " does not match --generators " + std::to_string(generators));
        rel.push_back(std::move(r));
    }
    return rel;
}

// Section graph of a surface fan: one vertex per ray, one edge per 2-cone.
std::string surface_fan_to_dot(const SpliceDiagram& d)
{
    Fan f = surface_trop_fan(d);
    std::vector<std::string> names;
    for (size_t v : d.leaf_order())
        names.push_back(d.vertices()[v].id);
    for (size_t v : d.node_indices())
        names.push_back(d.vertices()[v].id);
    std::ostringstream os;
    os << "graph trop_section {\n";
    for (const auto& n : names)
        os << "  \"" << n << "\";\n";
    for (const auto& c : f.cones)
        if (c.size() == 2)
            os << "  \"" << names[c[0]] << "\" -- \"" << names[c[1]] << "\";\n";
    os << "}\n";
    return os.str();
}

struct DeformFlags {
    std::string edge;
    std::string ka, kb, dee;
    std::string policy = "min";

    EnrichedDiagram resolve(const SpliceDiagram& d) const
    {
        auto [a, b] = split_edge_flag(edge);
        AdaptedTriple triple;
        if (policy == "min") {
            if (!ka.empty() || !kb.empty())
                throw DomainError("--ka/--kb require --policy explicit");
            triple = adapted_triple(d, a, b, MinDenominatorPolicy{});
            if (!dee.empty()) {
                ExplicitPolicy pol{triple.ka, triple.kb, parse_int(dee)};
                triple = adapted_triple(d, a, b, pol);
            }
        } else if (policy == "explicit") {
            if (ka.empty() || kb.empty())
                throw DomainError("--policy explicit requires --ka and --kb");
            ExplicitPolicy pol{parse_int(ka), parse_int(kb), std::nullopt};
            if (!dee.empty())
                pol.D = parse_int(dee);
            triple = adapted_triple(d, a, b, pol);
        } else {
            throw DomainError("--policy must be min or explicit");
        }
        return enrich(d, a, b, triple);
    }
};

CommandResult dispatch(const std::vector<std::string>& args, const std::string& stdin_text)
{
    CLI::App app{"splice diagram calculus"};
    app.require_subcommand(1);

    std::string path, format = "json", coeff_path, weight_flag, relations_flag;
    unsigned long seed = 0;
    bool mode_surface = false, mode_deformation = false;
    bool check_homogeneity = false, check_hamm = false, check_initial = false;
    unsigned long fiber_generators = 0;
    DeformFlags dflags;

    auto* validate = app.add_subcommand("validate", "structural, determinant and semigroup checks");
    validate->add_option("path", path, "diagram file or - for stdin")->required();

    auto* analyze = app.add_subcommand("analyze", "linking data, degrees, weight vectors, Seifert data");
    analyze->add_option("path", path)->required();
    analyze->add_option("--format", format)->check(CLI::IsMember({"json", "dot"}));

    auto* gensys = app.add_subcommand("gen-system", "strict splice type system of a diagram");
    gensys->add_option("path", path)->required();
    gensys->add_option("--seed", seed, "Vandermonde parameter offset");
    gensys->add_option("--coeffs", coeff_path, "explicit coefficient matrices (JSON)");

    auto* deform = app.add_subcommand("deform", "edge deformation of the strict system");
    deform->add_option("path", path)->required();
    deform->add_option("--edge", dflags.edge, "internal edge a,b")->required();
    deform->add_option("--ka", dflags.ka);
    deform->add_option("--kb", dflags.kb);
    deform->add_option("--D", dflags.dee);
    deform->add_option("--policy", dflags.policy)->check(CLI::IsMember({"min", "explicit"}));
    deform->add_option("--seed", seed);
    deform->add_option("--coeffs", coeff_path);

    auto* tropfan = app.add_subcommand("trop-fan", "tropicalizing fan of the germ or its deformation");
    tropfan->add_option("path", path)->required();
    tropfan->add_flag("--surface", mode_surface);
    tropfan->add_flag("--deformation", mode_deformation);
    tropfan->add_option("--edge", dflags.edge);
    tropfan->add_option("--ka", dflags.ka);
    tropfan->add_option("--kb", dflags.kb);
    tropfan->add_option("--D", dflags.dee);
    tropfan->add_option("--policy", dflags.policy)->check(CLI::IsMember({"min", "explicit"}));
    tropfan->add_option("--format", format)->check(CLI::IsMember({"json", "dot"}));

    auto* check = app.add_subcommand("check", "homogeneity / Hamm / initial forms of a system file");
    check->add_option("path", path)->required();
    check->add_flag("--homogeneity", check_homogeneity);
    check->add_flag("--hamm", check_hamm);
    check->add_flag("--initial", check_initial);
    check->add_option("--weight", weight_flag, "comma-separated rational weight vector");

    auto* fiber = app.add_subcommand("round-fiber", "rounding-fiber group from a monoid presentation");
    fiber->add_option("--generators", fiber_generators)->required();
    fiber->add_option("--relations", relations_flag, "rows 'a,b;c,d' (empty for none)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        std::ostringstream os;
        os << app.help();
        return text_result(0, os.str());
    } catch (const CLI::ParseError& e) {
        CommandResult r;
        r.exit_code = 2;
        r.log = std::string(e.what()) + "\n";
        return r;
    }

    if (validate->parsed()) {
        DiagramCheckOutcome outcome = check_diagram_text(read_input(path, stdin_text));
        std::optional<SemigroupReport> semi;
        if (outcome.diagram)
            semi = check_semigroup_condition(*outcome.diagram);
        ordered_json doc = validation_to_json(outcome.report, semi ? &*semi : nullptr);
        bool valid = outcome.report.structurally_valid() &&
                     (!outcome.report.determinant || outcome.report.determinant->ok) &&
                     (!semi || semi->satisfied);
        doc["valid"] = valid;
        return json_result(valid ? 0 : 1, std::move(doc));
    }

    if (analyze->parsed()) {
        SpliceDiagram d = parse_diagram(read_input(path, stdin_text));
        if (format == "dot")
            return text_result(0, diagram_to_dot(d));
        ordered_json doc;
        doc["leaves"] = ordered_json::array();
        for (size_t v : d.leaf_order())
            doc["leaves"].push_back(d.vertices()[v].id);
        doc["vertices"] = ordered_json::array();
        for (const auto& v : d.vertices())
            doc["vertices"].push_back(v.id);
        doc["linking_matrix"] = ordered_json::array();
        for (size_t i = 0; i < d.vertices().size(); ++i) {
            ordered_json row = ordered_json::array();
            for (size_t j = 0; j < d.vertices().size(); ++j)
                row.push_back(int_to_json(linking_number_by_index(d, i, j)));
            doc["linking_matrix"].push_back(std::move(row));
        }
        doc["nodes"] = ordered_json::array();
        for (size_t v : d.node_indices()) {
            ordered_json jn;
            jn["id"] = d.vertices()[v].id;
            jn["degree"] = int_to_json(node_degree_by_index(d, v));
            jn["weight_vector"] = ivec_to_json(node_weight_vector_by_index(d, v));
            jn["seifert"] = ivec_to_json(seifert_data(d, d.vertices()[v].id));
            doc["nodes"].push_back(std::move(jn));
        }
        doc["internal_edges"] = ordered_json::array();
        for (const auto& e : check_determinant_condition(d).entries) {
            ordered_json je;
            je["u"] = e.u;
            je["v"] = e.v;
            je["determinant"] = int_to_json(e.value);
            doc["internal_edges"].push_back(std::move(je));
        }
        return json_result(0, std::move(doc));
    }

    if (gensys->parsed()) {
        SpliceDiagram d = parse_diagram(read_input(path, stdin_text));
        CoefficientSource source = VandermondeCoefficients{seed};
        if (!coeff_path.empty())
            source = parse_coeff_file(read_input(coeff_path, stdin_text));
        SpliceSystem s = strict_splice_system(d, source);
        return text_result(0, emit_system(s) + "\n");
    }

    if (deform->parsed()) {
        SpliceDiagram d = parse_diagram(read_input(path, stdin_text));
        EnrichedDiagram ed = dflags.resolve(d);
        CoefficientSource source = VandermondeCoefficients{seed};
        if (!coeff_path.empty())
            source = parse_coeff_file(read_input(coeff_path, stdin_text));
        SpliceSystem s = strict_splice_system(d, source);
        DeformedSystem ds = edge_deformation(s, ed);
        return text_result(0, emit_deformed_system(ds) + "\n");
    }

    if (tropfan->parsed()) {
        if (mode_surface == mode_deformation)
            throw DomainError("pass exactly one of --surface / --deformation");
        SpliceDiagram d = parse_diagram(read_input(path, stdin_text));
        if (mode_surface) {
            if (format == "dot")
                return text_result(0, surface_fan_to_dot(d));
            return text_result(0, emit_fan(surface_trop_fan(d)) + "\n");
        }
        if (dflags.edge.empty())
            throw DomainError("--deformation requires --edge");
        EnrichedDiagram ed = dflags.resolve(d);
        if (format == "dot")
            return text_result(0, dual_complex_to_dot(dual_complex(ed)));
        return text_result(0, emit_fan(deformation_trop_fan(ed)) + "\n");
    }

    if (check->parsed()) {
        if (int(check_homogeneity) + int(check_hamm) + int(check_initial) != 1)
            throw DomainError("pass exactly one of --homogeneity / --hamm / --initial");
        std::string text = read_input(path, stdin_text);
        bool deformed = parse_json_document(text).contains("enrichment");
        ordered_json doc;
        if (check_homogeneity) {
            doc["mode"] = "homogeneity";
            doc["degrees"] = ordered_json::object();
            bool all = true;
            auto record = [&](const std::string& node, const std::vector<Polynomial>& eqs,
                              const IVec& w) {
                ordered_json degs = ordered_json::array();
                for (const auto& f : eqs) {
                    auto deg = homogeneous_degree(f, w);
                    if (deg)
                        degs.push_back(int_to_json(*deg));
                    else {
                        degs.push_back(nullptr);
                        all = false;
                    }
                }
                doc["degrees"][node] = std::move(degs);
            };
            if (deformed) {
                DeformedSystem ds = parse_deformed_system(text);
                for (const auto& dn : ds.nodes)
                    record(dn.node, dn.equations, extended_weight_vector(ds.enrichment, dn.node));
            } else {
                SpliceSystem s = parse_system(text);
                for (const auto& block : s.nodes)
                    record(block.node, block.equations, node_weight_vector(s.diagram, block.node));
            }
            doc["homogeneous"] = all;
            return json_result(all ? 0 : 1, std::move(doc));
        }
        if (check_hamm) {
            doc["mode"] = "hamm";
            doc["nodes"] = ordered_json::object();
            bool all = true;
            SpliceSystem s = deformed ? parse_deformed_system(text).strict : parse_system(text);
            for (const auto& block : s.nodes) {
                if (block.matrix.empty())
                    throw DomainError("node '" + block.node + "' carries no coefficient matrix");
                QMatrix rows(block.matrix[0].size(), QVec(block.matrix.size()));
                for (size_t e = 0; e < block.matrix.size(); ++e)
                    for (size_t i = 0; i < block.matrix[e].size(); ++i)
                        rows[i][e] = block.matrix[e][i];
                HammVerdict v = hamm_check(rows);
                ordered_json jn;
                jn["ok"] = v.ok;
                if (!v.ok)
                    jn["failing_columns"] = v.failing_columns;
                doc["nodes"][block.node] = std::move(jn);
                all = all && v.ok;
            }
            doc["ok"] = all;
            return json_result(all ? 0 : 1, std::move(doc));
        }
        // --initial
        if (weight_flag.empty())
            throw DomainError("--initial requires --weight");
        QVec w = parse_weight_flag(weight_flag);
        std::vector<Polynomial> gens = deformed ? parse_deformed_system(text).all_equations()
                                                : parse_system(text).all_equations();
        for (const auto& f : gens)
            if (f.nvars() != w.size())
                throw DomainError("--weight arity does not match the system's variables");
        InitialSystem init = initial_system(gens, w);
        doc["mode"] = "initial";
        doc["monomial_free"] = init.generators_monomial_free;
        doc["forms"] = ordered_json::array();
        for (const auto& f : init.forms) {
            ordered_json terms = ordered_json::array();
            for (const auto& [e, c] : f.terms()) {
                ordered_json t;
                t["exp"] = ivec_to_json(e);
                t["num"] = c.get_num().get_str();
                t["den"] = c.get_den().get_str();
                terms.push_back(std::move(t));
            }
            doc["forms"].push_back(std::move(terms));
        }
        return json_result(0, std::move(doc));
    }

    // round-fiber
    MonoidPresentation p;
    p.generators = fiber_generators;
    p.relations = parse_relations_flag(relations_flag, p.generators);
    FiberGroup g = rounding_fiber_group(p);
    ordered_json doc;
    doc["rank"] = g.rank;
    doc["torsion"] = ivec_to_json(g.torsion);
    doc["components"] = int_to_json(g.components);
    return json_result(0, std::move(doc));
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args, const std::string& stdin_text)
{
    try {
        return dispatch(args, stdin_text);
    } catch (const ParseError& e) {
        ordered_json doc;
        doc["error"] = e.what();
        if (e.line > 0) {
            doc["line"] = e.line;
            doc["column"] = e.column;
        }
        return json_result(1, std::move(doc), std::string(e.what()) + "\n");
    } catch (const Error& e) {
        ordered_json doc;
        doc["error"] = e.what();
        return json_result(1, std::move(doc), std::string(e.what()) + "\n");
    }
}

}  // namespace splice
