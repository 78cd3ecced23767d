#include "seventerm/problem.hpp"

#include "seventerm/cohomology.hpp"
#include "seventerm/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace seventerm {

namespace {

using ordjson = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& path, const std::string& what) {
    throw ValidationError(path + ": " + what);
}

void require_keys(const ordjson& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) known = true;
        if (!known) bad(path.empty() ? item.key() : path + "." + item.key(), "unknown field");
    }
}

const ordjson& require_field(const ordjson& obj, const std::string& path, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) bad(path.empty() ? key : path + "." + key, "missing");
    return *it;
}

long long as_int(const ordjson& v, const std::string& path) {
    if (!v.is_number_integer()) bad(path, "expected an integer");
    return v.get<long long>();
}

std::string available_fixture_names() {
    std::string names;
    for (const auto& f : builtin_fixtures()) names += (names.empty() ? "" : ", ") + f.name;
    return names;
}

FiniteGroup parse_group(const ordjson& j) {
    if (!j.is_object()) bad("group", "expected an object");
    require_keys(j, "group", {"order", "table"});
    const long long order = as_int(require_field(j, "group", "order"), "group.order");
    if (order < 1) bad("group.order", "must be positive");
    const ordjson& jt = require_field(j, "group", "table");
    if (!jt.is_array()) bad("group.table", "expected an array of rows");
    if (static_cast<long long>(jt.size()) != order)
        bad("group.order", std::to_string(order) + " does not match the table size " + std::to_string(jt.size()));
    std::vector<std::vector<int>> table;
    for (std::size_t i = 0; i < jt.size(); ++i) {
        if (!jt[i].is_array()) bad("group.table[" + std::to_string(i) + "]", "expected an array");
        std::vector<int> row;
        for (std::size_t k = 0; k < jt[i].size(); ++k)
            row.push_back(static_cast<int>(as_int(jt[i][k], "group.table[" + std::to_string(i) + "][" +
                                                                std::to_string(k) + "]")));
        table.push_back(std::move(row));
    }
    try {
        return FiniteGroup::from_multiplication_table(table);
    } catch (const ValidationError& e) {
        bad("group.table", e.what());
    }
}

std::vector<int> parse_normal_subgroup(const ordjson& j, const FiniteGroup& g) {
    if (!j.is_array()) bad("normal_subgroup", "expected an array of element indices");
    std::vector<int> elems;
    for (std::size_t i = 0; i < j.size(); ++i)
        elems.push_back(static_cast<int>(as_int(j[i], "normal_subgroup[" + std::to_string(i) + "]")));
    std::string w;
    if (!is_normal_subgroup(g, elems, &w)) bad("normal_subgroup", w);
    return elems;
}

GModule parse_module(const ordjson& j, const FiniteGroup& g) {
    if (!j.is_object()) bad("module", "expected an object");
    require_keys(j, "module", {"invariant_factors", "action"});
    const ordjson& jf = require_field(j, "module", "invariant_factors");
    if (!jf.is_array()) bad("module.invariant_factors", "expected an array");
    FgAbGroup coeff;
    for (std::size_t i = 0; i < jf.size(); ++i) {
        const long long d = as_int(jf[i], "module.invariant_factors[" + std::to_string(i) + "]");
        if (d < 2)
            bad("module.invariant_factors[" + std::to_string(i) + "]",
                std::to_string(d) + " is not a valid cyclic factor order (must be >= 2)");
        coeff.torsion.push_back(Int(d));
    }

    if (!j.contains("action")) return GModule::trivial(g, coeff);

    const ordjson& ja = j["action"];
    if (!ja.is_array()) bad("module.action", "expected one matrix per group element");
    if (ja.size() != g.order())
        bad("module.action", "expected " + std::to_string(g.order()) + " matrices, got " +
                                 std::to_string(ja.size()));
    const std::size_t k = coeff.gens();
    std::vector<IntMatrix> act;
    for (std::size_t e = 0; e < ja.size(); ++e) {
        const std::string path = "module.action[" + std::to_string(e) + "]";
        const ordjson& jm = ja[e];
        if (!jm.is_array() || jm.size() != k) bad(path, "expected a " + std::to_string(k) + "-row matrix");
        IntMatrix m(k, k);
        for (std::size_t r = 0; r < k; ++r) {
            if (!jm[r].is_array() || jm[r].size() != k)
                bad(path + "[" + std::to_string(r) + "]", "expected " + std::to_string(k) + " entries");
            for (std::size_t c = 0; c < k; ++c)
                m.at(r, c) = Int(as_int(jm[r][c], path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
        }
        AbHom h{coeff, coeff, m};
        std::string w;
        if (!h.well_defined(&w)) bad(path, w);
        if (hom_image(h).group.order() != coeff.order()) bad(path, "not invertible over the invariant factors");
        act.push_back(std::move(m));
    }
    try {
        return GModule::make(g, coeff, std::move(act));
    } catch (const ValidationError& e) {
        bad("module.action", e.what());
    } catch (const PreconditionError& e) {
        bad("module.action", e.what());
    }
}

void validate_options(const ProblemOptions& o) {
    if (o.degree_max != 2 && o.degree_max != 3)
        bad("options.degree_max", std::to_string(o.degree_max) + " is not supported (2 or 3)");
    if (o.checks != "all" && o.checks != "exactness" && o.checks != "coincidence")
        bad("options.checks", "\"" + o.checks + "\" is not one of all, exactness, coincidence");
}

ProblemOptions parse_options(const ordjson& j) {
    ProblemOptions o;
    if (j.is_null()) return o;
    if (!j.is_object()) bad("options", "expected an object");
    require_keys(j, "options", {"degree_max", "checks", "report"});
    if (j.contains("degree_max")) o.degree_max = static_cast<int>(as_int(j["degree_max"], "options.degree_max"));
    if (j.contains("checks")) {
        if (!j["checks"].is_string()) bad("options.checks", "expected a string");
        o.checks = j["checks"].get<std::string>();
    }
    if (j.contains("report")) {
        if (!j["report"].is_string()) bad("options.report", "expected a string");
        o.report_path = j["report"].get<std::string>();
    }
    validate_options(o);
    return o;
}

} // namespace

bool operator==(const ProblemSpec& a, const ProblemSpec& b) {
    return a.fixture == b.fixture && a.name == b.name && a.summary == b.summary && a.g == b.g &&
           a.n_elems == b.n_elems && a.mod.coeff == b.mod.coeff && a.mod.act == b.mod.act &&
           a.options == b.options;
}

ProblemSpec problem_for_fixture(const Fixture& f) {
    ProblemSpec s;
    s.fixture = f.name;
    s.name = f.name;
    s.summary = f.summary;
    s.g = f.g;
    s.n_elems = f.n_elems;
    s.mod = f.mod;
    return s;
}

ProblemSpec parse_problem_text(const std::string& text) {
    ordjson root;
    try {
        root = ordjson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("problem: ") + e.what());
    }
    if (!root.is_object()) bad("problem", "expected a top-level object");
    require_keys(root, "", {"fixture", "group", "normal_subgroup", "module", "options"});

    ProblemSpec s;
    if (root.contains("fixture")) {
        for (const char* key : {"group", "normal_subgroup", "module"})
            if (root.contains(key))
                bad(key, "a named fixture already provides this; remove one or the other");
        if (!root["fixture"].is_string()) bad("fixture", "expected a string");
        const std::string name = root["fixture"].get<std::string>();
        auto f = fixture_by_name(name);
        if (!f) bad("fixture", "unknown fixture \"" + name + "\" (available: " + available_fixture_names() + ")");
        s = problem_for_fixture(*f);
    } else {
        s.g = parse_group(require_field(root, "", "group"));
        s.n_elems = parse_normal_subgroup(require_field(root, "", "normal_subgroup"), s.g);
        s.mod = parse_module(require_field(root, "", "module"), s.g);
        s.name = "custom";
        std::ostringstream os;
        os << "order-" << s.g.order() << " group, order-" << s.n_elems.size()
           << " normal subgroup, coefficients of order " << s.mod.coeff.order();
        s.summary = os.str();
    }
    s.options = parse_options(root.contains("options") ? root["options"] : ordjson());
    return s;
}

ProblemSpec parse_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("problem: cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem_text(buf.str());
}

std::string emit_problem(const ProblemSpec& spec) {
    ordjson root;
    if (!spec.fixture.empty()) {
        root["fixture"] = spec.fixture;
    } else {
        ordjson jg;
        jg["order"] = spec.g.order();
        jg["table"] = spec.g.table();
        root["group"] = std::move(jg);
        root["normal_subgroup"] = spec.n_elems;
        ordjson jm;
        std::vector<long long> factors;
        for (const auto& d : spec.mod.coeff.torsion) factors.push_back(d.convert_to<long long>());
        jm["invariant_factors"] = factors;
        if (!spec.mod.is_trivial_action()) {
            ordjson ja = ordjson::array();
            for (const auto& m : spec.mod.act) {
                ordjson rows = ordjson::array();
                for (std::size_t r = 0; r < m.rows(); ++r) {
                    ordjson row = ordjson::array();
                    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).convert_to<long long>());
                    rows.push_back(std::move(row));
                }
                ja.push_back(std::move(rows));
            }
            jm["action"] = std::move(ja);
        }
        root["module"] = std::move(jm);
    }
    ordjson jo;
    jo["degree_max"] = spec.options.degree_max;
    jo["checks"] = spec.options.checks;
    if (!spec.options.report_path.empty()) jo["report"] = spec.options.report_path;
    root["options"] = std::move(jo);
    return root.dump(2) + "\n";
}

} // namespace seventerm
