#ifndef HMFW_HYPOTHESES_HPP
#define HMFW_HYPOTHESES_HPP

#include "inertial.hpp"

// Hypothesis reports for the two theorems the engine serves.
//
//   companion      -- an irregular eigenform (partial weight one) admits companion forms in
//                     the regular weights k', k^mu, k^theta. Its checkable conditions are
//                     numbered (3), (4), (5) in the statement: (3) rho avoids certain
//                     inertial shapes at each mu in M~, (4) no place has k identically 1,
//                     (5) k_mu != 1 mod p for mu in M~.
//   regularization -- a geometrically modular rho of irregular weight is already modular
//                     of regular weight. Conditions (1) 1 <= k_tau <= p, (2) no
//                     (k_tau, k_{Fr^-1 tau}) = (2, 1), (3) no all-ones place, (4) rho
//                     avoids an unramified-times-powers shape at each fully regular place.
//
// Conditions that depend only on k are decided outright; conditions about rho cannot be,
// so they come back as needs_rho together with the exact shapes to test rho against.
// The setup block records whether the weight even belongs to the theorem's ambient family
// (k >= 1, irregularity, minimal cone); a violated setup downgrades the conditions that
// need M/M~ to not_evaluated instead of inventing a verdict.

namespace hmfw {

enum class TheoremId { companion, regularization };

enum class Verdict { holds, fails, needs_rho, not_evaluated };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        case Verdict::needs_rho: return "undecidable_needs_rho";
        case Verdict::not_evaluated: return "not_evaluated";
    }
    return "?";
}

inline const char* to_string(TheoremId t) {
    return t == TheoremId::companion ? "companion" : "regularization";
}

struct SetupCheck {
    std::string name;
    bool ok = true;
    std::string detail;
};

struct ConditionReport {
    std::string id;        // the condition's number in the theorem statement
    std::string statement; // what it asserts, in words
    Verdict verdict = Verdict::holds;
    std::string detail;                 // witness on failure, note otherwise
    std::vector<CharacterShape> shapes; // populated for needs_rho
};

struct HypothesisReport {
    TheoremId theorem = TheoremId::companion;
    std::vector<SetupCheck> setup;
    std::vector<ConditionReport> conditions;
};

inline HypothesisReport check_hypotheses(const PlaceStructure& ps, const IVec& k, TheoremId which) {
    ps.check_length(k, "k");
    HypothesisReport rep;
    rep.theorem = which;

    bool k_positive = true;
    EmbeddingIndex bad_pos{};
    for (const auto& t : ps.embeddings())
        if (k[ps.global_index(t)] < 1) { k_positive = false; bad_pos = t; break; }
    bool irregular = !is_regular(k);

    if (which == TheoremId::companion) {
        rep.setup.push_back({"k_at_least_one", k_positive,
                             k_positive ? "" : "k[" + to_string(bad_pos) + "] < 1"});
        rep.setup.push_back({"irregular", irregular,
                             irregular ? "" : "weight is regular; transfer is trivial"});
        rep.setup.push_back({"minimal_cone", k_positive && in_minimal_cone(ps, k),
                             !k_positive ? "not evaluated" :
                             in_minimal_cone(ps, k) ? "" : "p*k_tau < k_{Fr^-1 tau} somewhere"});

        ConditionReport c3{"3", "rho avoids the Theta-companion inertial shapes at every mu in M~",
                           Verdict::holds, "", {}};
        ConditionReport c4{"4", "no place has k identically 1", Verdict::holds, "", {}};
        ConditionReport c5{"5", "k_mu != 1 (mod p) for every mu in M~", Verdict::holds, "", {}};

        if (auto v = find_all_ones_place(ps, k)) {
            c4.verdict = Verdict::fails;
            c4.detail = "place " + std::to_string(*v) + " has k identically 1";
        }
        if (!k_positive) {
            c3.verdict = c5.verdict = Verdict::not_evaluated;
            c3.detail = c5.detail = "M~ undefined: some k_tau < 1";
        } else {
            EmbeddingSet mt = compute_M_tilde(ps, k);
            if (mt.empty()) {
                c3.detail = "M~ is empty; nothing to avoid";
            } else {
                c3.verdict = Verdict::needs_rho;
                for (auto& cs : forbidden_shapes(ps, k))
                    if (cs.context == CharacterShape::Context::theta_companion)
                        c3.shapes.push_back(std::move(cs));
                c3.detail = std::to_string(c3.shapes.size()) + " shape(s) to rule out";
            }
            for (const auto& mu : mt) {
                auto km = k[ps.global_index(mu)];
                if ((km - 1) % ps.p() == 0) {
                    c5.verdict = Verdict::fails;
                    c5.detail = "k[" + to_string(mu) + "] = " + std::to_string(km) +
                                " is 1 mod p";
                    break;
                }
            }
        }
        rep.conditions = {c3, c4, c5};
    } else {
        rep.setup.push_back({"irregular", irregular,
                             irregular ? "" : "weight is regular; nothing to regularize"});

        ConditionReport c1{"1", "1 <= k_tau <= p for every tau", Verdict::holds, "", {}};
        ConditionReport c2{"2", "no tau with (k_tau, k_{Fr^-1 tau}) = (2, 1)", Verdict::holds, "", {}};
        ConditionReport c3{"3", "no place has k identically 1", Verdict::holds, "", {}};
        ConditionReport c4{"4", "rho avoids unramified x (cyclotomic-power) shapes at fully regular places",
                           Verdict::holds, "", {}};

        if (auto t = find_k_out_of_range(ps, k)) {
            c1.verdict = Verdict::fails;
            c1.detail = "k[" + to_string(*t) + "] = " + std::to_string(k[ps.global_index(*t)]) +
                        " outside [1, " + std::to_string(ps.p()) + "]";
        }
        if (auto t = find_two_one_pattern(ps, k)) {
            c2.verdict = Verdict::fails;
            c2.detail = "witness " + to_string(*t);
        }
        if (auto v = find_all_ones_place(ps, k)) {
            c3.verdict = Verdict::fails;
            c3.detail = "place " + std::to_string(*v) + " has k identically 1";
        }
        std::vector<CharacterShape> reg;
        for (int v = 0; v < ps.place_count(); ++v) {
            bool fully_regular = true;
            for (const auto& t : ps.embeddings_of_place(v))
                if (k[ps.global_index(t)] < 2) { fully_regular = false; break; }
            if (!fully_regular) continue;
            const int f = ps.degree(v);
            CharacterShape cs;
            cs.context = CharacterShape::Context::regular_place;
            cs.place = v;
            cs.chi1 = make_exponent_vector(ps.p(), IVec(f, 0));
            cs.chi2 = make_exponent_vector(ps.p(), IVec(f, 0));
            for (int i = 0; i < f; ++i) cs.chi2.a[i] = 1 - k[ps.global_index({v, i})];
            reg.push_back(std::move(cs));
        }
        if (reg.empty()) {
            c4.detail = "no fully regular place";
        } else {
            c4.verdict = Verdict::needs_rho;
            c4.shapes = std::move(reg);
            c4.detail = std::to_string(c4.shapes.size()) + " shape(s) to rule out";
        }
        rep.conditions = {c1, c2, c3, c4};
    }
    return rep;
}

} // namespace hmfw

#endif
