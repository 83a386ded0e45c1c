#ifndef HMFW_IO_HPP
#define HMFW_IO_HPP

#include <json.hpp>

#include "descent.hpp"
#include "hypotheses.hpp"
#include "version.hpp"

// ProblemSpec parsing and report serialization. One JSON document in, one out;
// the output embeds the parsed input verbatim so a report is self-describing.
// nlohmann::json keeps object keys sorted, which makes every dump deterministic.

namespace hmfw {

using json = nlohmann::json;

inline const std::vector<std::string>& known_tasks() {
    static const std::vector<std::string> t{"transfer", "descend", "hypotheses",
                                            "impliedshape", "shapes"};
    return t;
}

struct ProblemSpec {
    std::int64_t p = 3;
    std::vector<int> places;
    IVec k, l;
    std::vector<std::string> tasks; // materialized (defaults applied)
    bool tasks_explicit = false;

    friend bool operator==(const ProblemSpec& a, const ProblemSpec& b) {
        return a.p == b.p && a.places == b.places && a.k == b.k && a.l == b.l &&
               a.tasks == b.tasks;
    }
};

inline ProblemSpec parse_problem_spec(const json& j) {
    if (!j.is_object()) throw structural_error("problem document must be a JSON object");
    for (const auto& [key, val] : j.items()) {
        (void)val;
        if (key != "p" && key != "places" && key != "k" && key != "l" && key != "tasks")
            throw structural_error("unknown field '" + key + "' in problem document");
    }
    ProblemSpec s;
    if (!j.contains("p") || !j["p"].is_number_integer())
        throw structural_error("field 'p' must be an integer");
    s.p = j["p"].get<std::int64_t>();
    if (!j.contains("places") || !j["places"].is_array() || j["places"].empty())
        throw structural_error("field 'places' must be a non-empty array of residue degrees");
    for (const auto& e : j["places"]) {
        if (!e.is_number_integer())
            throw structural_error("field 'places' must contain integers");
        s.places.push_back(e.get<int>());
    }
    PlaceStructure ps(s.p, s.places); // validates p and the degrees
    if (!j.contains("k") || !j["k"].is_array())
        throw structural_error("field 'k' must be an array of integers");
    for (const auto& e : j["k"]) {
        if (!e.is_number_integer()) throw structural_error("field 'k' must contain integers");
        s.k.push_back(e.get<std::int64_t>());
    }
    if (static_cast<int>(s.k.size()) != ps.total_degree())
        throw structural_error("field 'k' has length " + std::to_string(s.k.size()) +
                               ", expected n = " + std::to_string(ps.total_degree()));
    if (j.contains("l")) {
        if (!j["l"].is_array()) throw structural_error("field 'l' must be an array of integers");
        for (const auto& e : j["l"]) {
            if (!e.is_number_integer()) throw structural_error("field 'l' must contain integers");
            s.l.push_back(e.get<std::int64_t>());
        }
        if (s.l.size() != s.k.size())
            throw structural_error("field 'l' must have the same length as 'k'");
    } else {
        s.l.assign(s.k.size(), 0);
    }
    if (j.contains("tasks")) {
        if (!j["tasks"].is_array() || j["tasks"].empty())
            throw structural_error("field 'tasks' must be a non-empty array of task names");
        for (const auto& e : j["tasks"]) {
            if (!e.is_string()) throw structural_error("field 'tasks' must contain strings");
            auto name = e.get<std::string>();
            const auto& kt = known_tasks();
            if (std::find(kt.begin(), kt.end(), name) == kt.end())
                throw structural_error("unknown task '" + name + "'");
            if (std::find(s.tasks.begin(), s.tasks.end(), name) != s.tasks.end())
                throw structural_error("task '" + name + "' listed twice");
            s.tasks.push_back(name);
        }
        s.tasks_explicit = true;
    } else {
        s.tasks = known_tasks();
    }
    return s;
}

inline json to_json(const ProblemSpec& s) {
    return json{{"p", s.p}, {"places", s.places}, {"k", s.k}, {"l", s.l}, {"tasks", s.tasks}};
}

inline json json_of(const EmbeddingIndex& t) { return json::array({t.place, t.i}); }

inline json json_of(const EmbeddingSet& s) {
    json a = json::array();
    for (const auto& t : s) a.push_back(json_of(t));
    return a;
}

inline json json_of(const Weight& w) { return json{{"k", w.k}, {"l", w.l}}; }

inline json json_of(const ExponentVector& e) {
    return json{{"a", e.a}, {"residue", residue(e)}};
}

inline json json_of(const CharacterShape& cs) {
    json j{{"context", cs.context == CharacterShape::Context::theta_companion
                           ? "theta_companion"
                           : "regular_place"},
           {"place", cs.place},
           {"chi1", json_of(cs.chi1)},
           {"chi2", json_of(cs.chi2)}};
    if (cs.mu) j["mu"] = json_of(*cs.mu);
    return j;
}

inline json json_of(const TransferResult& tr, const PlaceStructure& ps) {
    json mu_list = json::array();
    for (const auto& [mu, w] : tr.k_mu)
        mu_list.push_back(json{{"mu", json_of(mu)},
                               {"weight", json_of(w)},
                               {"yang", yang_condition(ps, w.k)}});
    json wrapped = json::array();
    for (const auto& t : tr.wrapped_window) wrapped.push_back(json_of(t));
    return json{{"M", json_of(tr.M)},
                {"M_tilde", json_of(tr.M_tilde)},
                {"k_prime", json_of(tr.k_prime)},
                {"k_prime_yang", yang_condition(ps, tr.k_prime.k)},
                {"k_mu", mu_list},
                {"k_theta", json_of(tr.k_theta)},
                {"wrapped_window", wrapped}};
}

inline json json_of(const HypothesisReport& hr) {
    json setup = json::array();
    for (const auto& s : hr.setup)
        setup.push_back(json{{"name", s.name}, {"ok", s.ok}, {"detail", s.detail}});
    json conds = json::array();
    for (const auto& c : hr.conditions) {
        json shapes = json::array();
        for (const auto& cs : c.shapes) shapes.push_back(json_of(cs));
        conds.push_back(json{{"id", c.id},
                             {"statement", c.statement},
                             {"verdict", to_string(c.verdict)},
                             {"detail", c.detail},
                             {"shapes", shapes}});
    }
    return json{{"theorem", to_string(hr.theorem)}, {"setup", setup}, {"conditions", conds}};
}

inline json json_of(const MPrimeCase& c, const PlaceStructure& ps) {
    json pos = json::array();
    for (const auto& t : pattern_positions(ps, c)) pos.push_back(json_of(t));
    return json{{"tau", json_of(c.tau)},
                {"kind", to_string(c.kind)},
                {"s", c.s},
                {"t", c.t},
                {"boundary", to_string(c.boundary)},
                {"anchor", json_of(c.anchor)},
                {"positions", pos},
                {"expected_segment", expected_pattern(c, ps.p())}};
}

inline json json_of(const StripTrace& tr) {
    json steps = json::array();
    for (const auto& st : tr.steps)
        steps.push_back(json{{"tau", json_of(st.tau)}, {"k", st.after.k}});
    json stripped = json::array();
    for (const auto& [tau, count] : tr.stripped)
        stripped.push_back(json{{"tau", json_of(tau)}, {"count", count}});
    return json{{"start", json_of(tr.start)},
                {"steps", steps},
                {"final", json_of(tr.final)},
                {"stripped", stripped}};
}

inline json json_of(const ImpliedShapeCheck& c) {
    json viol = json::array();
    for (const auto& J : c.violations) viol.push_back(json_of(J));
    return json{{"mu", json_of(c.mu)},
                {"subsets_tested", c.subsets_tested},
                {"violations", viol}};
}

} // namespace hmfw

#endif
