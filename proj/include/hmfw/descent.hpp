#ifndef HMFW_DESCENT_HPP
#define HMFW_DESCENT_HPP

#include <map>
#include <string>

#include "transfer.hpp"

// Reverse direction: start from the doubly-adjusted companion
//
//     k'' = k' - sum_{mu in M~} hasse_weight(mu)  =  k + sum_{tau in M'} hasse_weight(tau),
//     M'  = M \ M~,
//
// and recover (k, M') by repeatedly dividing out Hasse invariants wherever the strict
// inequality p*k_tau < k_{Fr^-1 tau} permits. classify_M_prime sorts each tau in M' into
// the three shapes the recovery argument distinguishes, expected_pattern gives the exact
// k''-segment each shape forces, and verify_roundtrip runs the whole loop.
//
// Throughout, (s, t) are FORWARD run lengths along Fr: case (i) has k = 1 on
// tau, Fr tau, ..., Fr^{s-1} tau; cases (ii)/(iii) have k = 2 on tau .. Fr^{s-1} tau and
// k = 1 on Fr^s tau .. Fr^{s+t-1} tau; in both, Fr^{s+t} tau lands in M~.

namespace hmfw {

// Both defining formulas for k'' are evaluated and must agree; disagreement means the
// transfer bookkeeping is broken, not the input.
inline IVec compute_k_double_prime(const PlaceStructure& ps, const IVec& k) {
    TransferResult tr = compute_transfer(ps, make_weight(ps, k));
    Weight a = tr.k_prime;
    for (const auto& mu : tr.M_tilde) a = unapply_hasse(ps, a, mu);
    Weight b = make_weight(ps, k);
    for (const auto& t : tr.M)
        if (!tr.M_tilde.count(t)) b = apply_hasse(ps, b, t);
    if (a.k != b.k)
        throw invariant_error("the two defining formulas for k'' disagree");
    return a.k;
}

enum class MPrimeKind { one_run, two_then_one, two_then_two };

// Which value X closes the pattern segment at Fr^-1 tau.
enum class BoundaryRow {
    one_in_M,          // previous entry 1, previous in M        -> X = p
    one_not_in_M,      // previous entry 1, previous not in M    -> X = p+1
    two_not_in_Mtilde, // previous entry 2, previous not in M~   -> X = p+1
    two_in_Mtilde,     // previous entry 2, previous in M~       -> X = p+2
    plain              // cases (ii)/(iii) without the M~ bump   -> X = p+1
};

inline const char* to_string(MPrimeKind k) {
    switch (k) {
        case MPrimeKind::one_run: return "i";
        case MPrimeKind::two_then_one: return "ii";
        case MPrimeKind::two_then_two: return "iii";
    }
    return "?";
}

inline const char* to_string(BoundaryRow b) {
    switch (b) {
        case BoundaryRow::one_in_M: return "one_in_M";
        case BoundaryRow::one_not_in_M: return "one_not_in_M";
        case BoundaryRow::two_not_in_Mtilde: return "two_not_in_Mtilde";
        case BoundaryRow::two_in_Mtilde: return "two_in_Mtilde";
        case BoundaryRow::plain: return "plain";
    }
    return "?";
}

struct MPrimeCase {
    EmbeddingIndex tau;
    MPrimeKind kind = MPrimeKind::one_run;
    int s = 1, t = 0;
    BoundaryRow boundary = BoundaryRow::plain;
    EmbeddingIndex anchor; // Fr^{s+t} tau, the M~ member the walk ends on
};

inline std::vector<MPrimeCase> classify_M_prime(const PlaceStructure& ps, const IVec& k) {
    require_k_at_least_one(ps, k, "classify_M_prime");
    EmbeddingSet M = compute_M(ps, k);
    EmbeddingSet Mt = compute_M_tilde(ps, k);
    auto at = [&](const EmbeddingIndex& t) { return k[ps.global_index(t)]; };

    std::vector<MPrimeCase> out;
    for (const auto& tau : M) {
        if (Mt.count(tau)) continue;
        const int f = ps.degree(tau.place);
        MPrimeCase c;
        c.tau = tau;

        if (at(tau) == 1) {
            c.kind = MPrimeKind::one_run;
            c.s = 1;
            EmbeddingIndex q = ps.frobenius(tau);
            while (at(q) == 1 && c.s < f) { ++c.s; q = ps.frobenius(q); }
            if (c.s == f)
                throw invariant_error("forward walk from " + to_string(tau) +
                                      " wrapped: place has k identically 1");
            c.anchor = q;
            auto b = ps.frobenius_inverse(tau);
            if (at(b) == 1) c.boundary = M.count(b) ? BoundaryRow::one_in_M : BoundaryRow::one_not_in_M;
            else if (at(b) == 2) c.boundary = Mt.count(b) ? BoundaryRow::two_in_Mtilde
                                                          : BoundaryRow::two_not_in_Mtilde;
            else
                throw invariant_error("member of M with predecessor entry > 2 at " + to_string(tau));
        } else if (at(tau) == 2) {
            auto prev = at(ps.frobenius_inverse(tau));
            if (prev == 1) c.kind = MPrimeKind::two_then_one;
            else if (prev == 2) c.kind = MPrimeKind::two_then_two;
            else
                throw invariant_error("member of M with predecessor entry > 2 at " + to_string(tau));
            c.s = 1;
            EmbeddingIndex q = ps.frobenius(tau);
            while (at(q) == 2 && c.s < f) { ++c.s; q = ps.frobenius(q); }
            c.t = 0;
            while (at(q) == 1 && c.s + c.t < f) { ++c.t; q = ps.frobenius(q); }
            if (c.s + c.t >= f)
                throw invariant_error("forward walk from " + to_string(tau) +
                                      " wrapped around its place");
            c.anchor = q;
            auto b = ps.frobenius_inverse(tau);
            c.boundary = (at(b) == 2 && Mt.count(b)) ? BoundaryRow::two_in_Mtilde : BoundaryRow::plain;
        } else {
            throw invariant_error("member of M' with k_tau > 2 at " + to_string(tau) +
                                  "; it should have been in M~");
        }
        if (!Mt.count(c.anchor))
            throw invariant_error("forward walk from " + to_string(tau) + " ended at " +
                                  to_string(c.anchor) + " which is not in M~");
        out.push_back(c);
    }
    return out;
}

// Positions whose k''-entries the case forces, in pattern order:
// Fr^{s+t-1} tau, ..., Fr tau, tau, Fr^-1 tau.
inline std::vector<EmbeddingIndex> pattern_positions(const PlaceStructure& ps, const MPrimeCase& c) {
    std::vector<EmbeddingIndex> pos;
    int run = c.s + c.t;
    EmbeddingIndex q = c.tau;
    std::vector<EmbeddingIndex> chain{q};
    for (int j = 1; j < run; ++j) { q = ps.frobenius(q); chain.push_back(q); }
    for (int j = run - 1; j >= 0; --j) pos.push_back(chain[j]);
    pos.push_back(ps.frobenius_inverse(c.tau));
    return pos;
}

// The forced k''-values at pattern_positions. Segments of neighbouring cases may overlap
// inside a place; each asserts per-entry values, so overlap is harmless by construction.
inline IVec expected_pattern(const MPrimeCase& c, std::int64_t p) {
    std::int64_t x = 0;
    switch (c.boundary) {
        case BoundaryRow::one_in_M: x = p; break;
        case BoundaryRow::one_not_in_M:
        case BoundaryRow::two_not_in_Mtilde:
        case BoundaryRow::plain: x = p + 1; break;
        case BoundaryRow::two_in_Mtilde: x = p + 2; break;
    }
    IVec seg;
    if (c.kind == MPrimeKind::one_run) {
        seg.push_back(0);
        seg.insert(seg.end(), c.s - 1, p);
    } else if (c.t == 0) {
        seg.push_back(1);
        seg.insert(seg.end(), c.s - 1, p + 1);
    } else {
        seg.push_back(0);
        seg.insert(seg.end(), c.t - 1, p);
        seg.insert(seg.end(), c.s, p + 1);
    }
    seg.push_back(x);
    return seg;
}

struct StripStep {
    EmbeddingIndex tau;
    Weight after;
};

struct StripTrace {
    Weight start;
    std::vector<StripStep> steps;
    Weight final;
    std::map<EmbeddingIndex, int> stripped; // multiplicity per embedding
};

// Keep dividing out Hasse invariants while anything is strippable; the picker chooses
// among the strippable embeddings. Total k drops by p-1 > 0 each step, which bounds the
// number of steps for any input that terminates at all; the cap turns a non-terminating
// (inadmissible) input into a loud error instead of a spin.
template <class Picker>
StripTrace strip_by(const PlaceStructure& ps, Weight w, Picker&& pick) {
    ps.check_length(w.k, "k");
    ps.check_length(w.l, "l");
    StripTrace trace;
    trace.start = w;
    std::int64_t cap = 0;
    for (auto v : w.k) cap += v;
    if (cap < 0) cap = 0;
    while (true) {
        EmbeddingSet s = strippable_set(ps, w.k);
        if (s.empty()) break;
        if (static_cast<std::int64_t>(trace.steps.size()) >= cap)
            throw invariant_error("strip did not terminate within its budget; "
                                  "input cannot come from a companion weight");
        EmbeddingIndex tau = pick(s);
        w = unapply_hasse(ps, w, tau);
        trace.steps.push_back({tau, w});
        ++trace.stripped[tau];
    }
    trace.final = w;
    return trace;
}

// deterministic default: always the lowest embedding in place-major order
inline StripTrace greedy_strip(const PlaceStructure& ps, Weight w) {
    return strip_by(ps, std::move(w), [](const EmbeddingSet& s) { return *s.begin(); });
}

struct RoundtripResult {
    bool ok = false;
    IVec k_double_prime;
    EmbeddingSet m_prime;
    StripTrace trace;
    std::string detail;
};

// Build k'' from k, strip greedily, and demand we land back on k having divided out
// exactly the Hasse invariants of M', once each. Weights outside the recovery theorem's
// hypotheses are rejected as inapplicable rather than reported as failures.
inline RoundtripResult verify_roundtrip(const PlaceStructure& ps, const IVec& k) {
    ps.check_length(k, "k");
    for (const auto& t : ps.embeddings())
        if (k[ps.global_index(t)] < 1)
            throw inapplicable_error("positivity", "k[" + to_string(t) + "] < 1");
    if (!in_minimal_cone(ps, k))
        throw inapplicable_error("cone", "k is not in the minimal cone");
    if (auto v = find_all_ones_place(ps, k))
        throw inapplicable_error("all-ones", "place " + std::to_string(*v) +
                                                 " has k identically 1");
    TransferResult tr = compute_transfer(ps, make_weight(ps, k));
    for (const auto& mu : tr.M_tilde)
        if ((k[ps.global_index(mu)] - 1) % ps.p() == 0)
            throw inapplicable_error("k_mu_mod_p", "k[" + to_string(mu) + "] is 1 mod p");

    RoundtripResult r;
    r.k_double_prime = compute_k_double_prime(ps, k);
    for (const auto& t : tr.M)
        if (!tr.M_tilde.count(t)) r.m_prime.insert(t);

    r.trace = greedy_strip(ps, make_weight(ps, r.k_double_prime));
    bool k_back = r.trace.final.k == k;
    bool strips_match = r.trace.stripped.size() == r.m_prime.size();
    if (strips_match)
        for (const auto& [tau, count] : r.trace.stripped)
            if (count != 1 || !r.m_prime.count(tau)) { strips_match = false; break; }
    r.ok = k_back && strips_match;
    if (!r.ok) {
        r.detail = !k_back ? "strip did not return to the original weight"
                           : "strip multiset differs from M'";
    }
    return r;
}

} // namespace hmfw

#endif
