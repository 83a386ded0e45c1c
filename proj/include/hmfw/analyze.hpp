#ifndef HMFW_ANALYZE_HPP
#define HMFW_ANALYZE_HPP

#include <sstream>

#include "io.hpp"

// Drives every requested task over one problem and assembles the report. A task that the
// weight's shape rules out is recorded as inapplicable with the failed condition; that is
// only an error (exit 3) when the caller asked for the task by name. Findings (violated
// invariants, failed roundtrips, non-empty congruence scans) dominate and exit 1.

namespace hmfw {

struct AnalyzeOutcome {
    json report;
    std::vector<std::string> findings;
    std::vector<std::string> inapplicable; // task names
    int exit_code = 0;
};

namespace detail {

inline bool k_positive(const IVec& k) {
    for (auto v : k)
        if (v < 1) return false;
    return true;
}

inline json analyze_transfer(const PlaceStructure& ps, const Weight& w,
                             std::vector<std::string>& findings, bool& applicable) {
    if (!k_positive(w.k)) {
        applicable = false;
        return json{{"applicable", false}, {"reason", "requires k_tau >= 1 everywhere"}};
    }
    try {
        TransferResult tr = compute_transfer(ps, w);
        json j = json_of(tr, ps);
        j["applicable"] = true;
        return j;
    } catch (const invariant_error& e) {
        findings.push_back(std::string("transfer: ") + e.what());
        return json{{"applicable", true}, {"invariant_violation", e.what()}};
    }
}

inline json analyze_descend(const PlaceStructure& ps, const Weight& w,
                            std::vector<std::string>& findings, bool& applicable) {
    try {
        RoundtripResult r = verify_roundtrip(ps, w.k);
        json cases = json::array();
        bool patterns_ok = true;
        for (const auto& c : classify_M_prime(ps, w.k)) {
            json cj = json_of(c, ps);
            auto pos = pattern_positions(ps, c);
            IVec actual;
            for (const auto& t : pos) actual.push_back(r.k_double_prime[ps.global_index(t)]);
            cj["actual_segment"] = actual;
            bool match = actual == expected_pattern(c, ps.p());
            cj["segment_match"] = match;
            patterns_ok = patterns_ok && match;
            cases.push_back(std::move(cj));
        }
        if (!patterns_ok) findings.push_back("descend: a k'' segment deviates from its forced pattern");
        if (!r.ok) findings.push_back("descend: roundtrip failed (" + r.detail + ")");
        return json{{"applicable", true},
                    {"k_double_prime", r.k_double_prime},
                    {"m_prime", json_of(r.m_prime)},
                    {"cases", cases},
                    {"patterns_match", patterns_ok},
                    {"strip", json_of(r.trace)},
                    {"roundtrip", r.ok},
                    {"detail", r.detail}};
    } catch (const inapplicable_error& e) {
        applicable = false;
        return json{{"applicable", false}, {"reason", e.what()}, {"condition", e.condition}};
    } catch (const invariant_error& e) {
        findings.push_back(std::string("descend: ") + e.what());
        return json{{"applicable", true}, {"invariant_violation", e.what()}};
    }
}

inline json analyze_hypotheses(const PlaceStructure& ps, const Weight& w) {
    return json{{"companion", json_of(check_hypotheses(ps, w.k, TheoremId::companion))},
                {"regularization", json_of(check_hypotheses(ps, w.k, TheoremId::regularization))}};
}

inline json analyze_impliedshape(const PlaceStructure& ps, const Weight& w,
                                 std::vector<std::string>& findings, bool& applicable) {
    for (auto v : w.l)
        if (v != 0) {
            applicable = false;
            return json{{"applicable", false}, {"reason", "requires l = 0"}};
        }
    auto fail = [&](const std::string& reason) {
        applicable = false;
        return json{{"applicable", false}, {"reason", reason}};
    };
    if (!k_positive(w.k) || find_k_out_of_range(ps, w.k))
        return fail("condition (1) fails: k outside [1, p]");
    if (auto t = find_two_one_pattern(ps, w.k))
        return fail("condition (2) fails: (2,1) pattern at " + to_string(*t));
    if (auto v = find_all_ones_place(ps, w.k))
        return fail("condition (3) fails: place " + std::to_string(*v) + " has k identically 1");

    json checks = json::array();
    for (const auto& mu : compute_M_tilde(ps, w.k)) {
        ImpliedShapeCheck c = verify_impliedshape(ps, w.k, mu);
        if (!c.violations.empty()) {
            std::ostringstream os;
            os << "impliedshape: " << c.violations.size() << " violating subset(s) at mu = "
               << to_string(mu);
            findings.push_back(os.str());
        }
        checks.push_back(json_of(c));
    }
    return json{{"applicable", true}, {"checks", checks}};
}

inline json analyze_shapes(const PlaceStructure& ps, const Weight& w, bool& applicable) {
    if (!k_positive(w.k)) {
        applicable = false;
        return json{{"applicable", false}, {"reason", "requires k_tau >= 1 everywhere"}};
    }
    json shapes = json::array();
    for (const auto& cs : forbidden_shapes(ps, w)) shapes.push_back(json_of(cs));
    return json{{"applicable", true}, {"shapes", shapes}};
}

} // namespace detail

inline AnalyzeOutcome run_analyze(const ProblemSpec& spec) {
    PlaceStructure ps(spec.p, spec.places);
    Weight w = make_weight(ps, spec.k, spec.l);

    AnalyzeOutcome out;
    json results;
    for (const auto& task : spec.tasks) {
        bool applicable = true;
        if (task == "transfer")
            results[task] = detail::analyze_transfer(ps, w, out.findings, applicable);
        else if (task == "descend")
            results[task] = detail::analyze_descend(ps, w, out.findings, applicable);
        else if (task == "hypotheses")
            results[task] = detail::analyze_hypotheses(ps, w);
        else if (task == "impliedshape")
            results[task] = detail::analyze_impliedshape(ps, w, out.findings, applicable);
        else if (task == "shapes")
            results[task] = detail::analyze_shapes(ps, w, applicable);
        if (!applicable) out.inapplicable.push_back(task);
    }

    out.report = json{{"engine", json{{"name", kEngineName}, {"version", kEngineVersion}}},
                      {"input", to_json(spec)},
                      {"results", results},
                      {"verdicts", json{{"ok", out.findings.empty()},
                                        {"findings", out.findings},
                                        {"inapplicable", out.inapplicable}}}};
    if (!out.findings.empty()) out.exit_code = 1;
    else if (spec.tasks_explicit && !out.inapplicable.empty()) out.exit_code = 3;
    return out;
}

// plain-text rendering of the same report, for eyes rather than pipelines
inline std::string render_human(const json& rep) {
    std::ostringstream os;
    auto vec = [](const json& a) {
        std::string s = "[";
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i) s += ",";
            s += a[i].dump();
        }
        return s + "]";
    };
    auto emb = [](const json& e) {
        return "v" + e[0].dump() + ":t" + e[1].dump();
    };
    auto embset = [&](const json& a) {
        std::string s = "{";
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i) s += ", ";
            s += emb(a[i]);
        }
        return s + "}";
    };

    const json& in = rep["input"];
    os << rep["engine"]["name"].get<std::string>() << " "
       << rep["engine"]["version"].get<std::string>() << "\n";
    os << "input: p=" << in["p"] << " places=" << vec(in["places"]) << " k=" << vec(in["k"])
       << " l=" << vec(in["l"]) << "\n";

    const json& res = rep["results"];
    if (res.contains("transfer")) {
        const json& t = res["transfer"];
        os << "\n[transfer]\n";
        if (!t["applicable"].get<bool>()) {
            os << "  inapplicable: " << t["reason"].get<std::string>() << "\n";
        } else {
            os << "  M       = " << embset(t["M"]) << "\n";
            os << "  M~      = " << embset(t["M_tilde"]) << "\n";
            os << "  k'      = " << vec(t["k_prime"]["k"]) << "  l' = " << vec(t["k_prime"]["l"])
               << "  (yang: " << (t["k_prime_yang"].get<bool>() ? "yes" : "no") << ")\n";
            for (const auto& m : t["k_mu"])
                os << "  k^" << emb(m["mu"]) << " = " << vec(m["weight"]["k"])
                   << "  l = " << vec(m["weight"]["l"])
                   << "  (yang: " << (m["yang"].get<bool>() ? "yes" : "no") << ")\n";
            os << "  k^Th    = " << vec(t["k_theta"]["k"]) << "  l = " << vec(t["k_theta"]["l"])
               << "\n";
            if (!t["wrapped_window"].empty())
                os << "  note: wrapped M~ window at " << embset(t["wrapped_window"]) << "\n";
        }
    }
    if (res.contains("descend")) {
        const json& d = res["descend"];
        os << "\n[descend]\n";
        if (!d["applicable"].get<bool>()) {
            os << "  inapplicable: " << d["reason"].get<std::string>() << "\n";
        } else if (d.contains("invariant_violation")) {
            os << "  INVARIANT VIOLATION: " << d["invariant_violation"].get<std::string>() << "\n";
        } else {
            os << "  k''     = " << vec(d["k_double_prime"]) << "\n";
            os << "  M'      = " << embset(d["m_prime"]) << "\n";
            for (const auto& c : d["cases"])
                os << "  case " << c["kind"].get<std::string>() << " at " << emb(c["tau"])
                   << " (s=" << c["s"] << ", t=" << c["t"] << ", "
                   << c["boundary"].get<std::string>() << "): segment "
                   << vec(c["actual_segment"])
                   << (c["segment_match"].get<bool>() ? " matches" : " MISMATCH") << "\n";
            os << "  strip   =";
            for (const auto& st : d["strip"]["steps"]) os << " " << emb(st["tau"]);
            os << "\n  roundtrip: " << (d["roundtrip"].get<bool>() ? "ok" : "FAILED") << "\n";
        }
    }
    if (res.contains("hypotheses")) {
        os << "\n[hypotheses]\n";
        for (const char* name : {"companion", "regularization"}) {
            const json& h = res["hypotheses"][name];
            os << "  " << name << ":\n";
            for (const auto& s : h["setup"])
                os << "    setup " << s["name"].get<std::string>() << ": "
                   << (s["ok"].get<bool>() ? "ok" : "NOT MET (" + s["detail"].get<std::string>() + ")")
                   << "\n";
            for (const auto& c : h["conditions"]) {
                os << "    (" << c["id"].get<std::string>() << ") "
                   << c["verdict"].get<std::string>();
                if (!c["detail"].get<std::string>().empty())
                    os << " -- " << c["detail"].get<std::string>();
                os << "\n";
            }
        }
    }
    if (res.contains("impliedshape")) {
        const json& i = res["impliedshape"];
        os << "\n[impliedshape]\n";
        if (!i["applicable"].get<bool>()) {
            os << "  inapplicable: " << i["reason"].get<std::string>() << "\n";
        } else if (i["checks"].empty()) {
            os << "  M~ empty; nothing to check\n";
        } else {
            for (const auto& c : i["checks"]) {
                os << "  mu = " << emb(c["mu"]) << ": " << c["subsets_tested"]
                   << " subsets, " << c["violations"].size() << " violation(s)";
                if (!c["violations"].empty()) {
                    os << " <-- VIOLATIONS:";
                    for (const auto& J : c["violations"]) os << " " << embset(J);
                }
                os << "\n";
            }
        }
    }
    if (res.contains("shapes")) {
        const json& s = res["shapes"];
        os << "\n[shapes]\n";
        if (!s["applicable"].get<bool>()) {
            os << "  inapplicable: " << s["reason"].get<std::string>() << "\n";
        } else if (s["shapes"].empty()) {
            os << "  none\n";
        } else {
            for (const auto& cs : s["shapes"]) {
                os << "  " << cs["context"].get<std::string>() << " place " << cs["place"];
                if (cs.contains("mu")) os << " mu=" << emb(cs["mu"]);
                os << ": chi1 " << vec(cs["chi1"]["a"]) << " chi2 " << vec(cs["chi2"]["a"]) << "\n";
            }
        }
    }
    const json& v = rep["verdicts"];
    os << "\nverdict: " << (v["ok"].get<bool>() ? "ok" : "FINDINGS") << "\n";
    for (const auto& f : v["findings"]) os << "  finding: " << f.get<std::string>() << "\n";
    for (const auto& t : v["inapplicable"]) os << "  inapplicable task: " << t.get<std::string>() << "\n";
    return os.str();
}

} // namespace hmfw

#endif
