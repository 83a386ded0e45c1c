#ifndef HMFW_TRANSFER_HPP
#define HMFW_TRANSFER_HPP

#include <optional>
#include <utility>

#include "shift_operators.hpp"

// Transfer of an irregular weight to its regular companions.
//
// For k with every k_tau >= 1, let
//
//   M  = { tau : for some s >= 1,  k_{Fr^{-1}tau} = ... = k_{Fr^{-(s-1)}tau} = 2
//                                  and  k_{Fr^{-s}tau} = 1 }
//   M~ = { tau in M : k_tau >= 3 }
//        union { tau : k_tau = 2, k_{Fr^{-1}tau} = 1, and either k_{Fr^{-2}tau} = 1
//                      or (k_{Fr^{-2}tau} = 2 and Fr^{-2}tau in M) }
//
// and then
//
//   k'      = k + sum_{tau in M} hasse_weight(tau),            l' = l
//   k^mu    = Th_mu( k + sum_{tau in M, tau != mu} ... ),      l^mu = l - e_mu   (mu in M~)
//   k^theta = Th at every mu in M~ of (k + sum_{M \ M~} ...),  l - sum_{M~} e_mu
//
// k' and every k^mu come out regular whenever k >= 1; that is asserted here, not assumed.
// The M~ membership test reads a window of up to three consecutive cycle positions; when a
// place has fewer than three embeddings the window wraps onto itself. The definition is
// applied literally with cyclic indices, and such members are reported (wrapped_window) so
// callers can surface the degeneracy instead of hiding it.

namespace hmfw {

inline bool in_M(const PlaceStructure& ps, const IVec& k, EmbeddingIndex tau) {
    int f = ps.degree(tau.place);
    for (int s = 1; s <= f; ++s) {
        tau = ps.frobenius_inverse(tau); // now at distance s behind the start
        auto v = k[ps.global_index(tau)];
        if (v == 1) return true;
        if (v != 2) return false;
    }
    return false; // the whole place is 2s
}

inline EmbeddingSet compute_M(const PlaceStructure& ps, const IVec& k) {
    require_k_at_least_one(ps, k, "compute_M");
    EmbeddingSet out;
    for (const auto& t : ps.embeddings())
        if (in_M(ps, k, t)) out.insert(t);
    return out;
}

inline bool in_M_tilde(const PlaceStructure& ps, const IVec& k, const EmbeddingIndex& tau) {
    auto at = [&](const EmbeddingIndex& t) { return k[ps.global_index(t)]; };
    if (at(tau) >= 3) return in_M(ps, k, tau);
    if (at(tau) != 2) return false;
    auto b1 = ps.frobenius_inverse(tau);
    if (at(b1) != 1) return false;
    auto b2 = ps.frobenius_inverse(b1);
    if (at(b2) == 1) return true;
    return at(b2) == 2 && in_M(ps, k, b2);
}

inline EmbeddingSet compute_M_tilde(const PlaceStructure& ps, const IVec& k) {
    require_k_at_least_one(ps, k, "compute_M_tilde");
    EmbeddingSet out;
    for (const auto& t : ps.embeddings())
        if (in_M_tilde(ps, k, t)) out.insert(t);
    return out;
}

struct TransferResult {
    EmbeddingSet M, M_tilde;
    Weight k_prime;                                      // fully Hasse-adjusted companion
    std::vector<std::pair<EmbeddingIndex, Weight>> k_mu; // one Theta companion per mu in M~
    Weight k_theta;                                      // Theta applied at all of M~ at once
    std::vector<EmbeddingIndex> wrapped_window;          // M~ members whose 3-step test wrapped
};

// --- weight-shape predicates shared by the theorem gates ---

// first tau with k_tau < 1 or k_tau > p, if any
inline std::optional<EmbeddingIndex> find_k_out_of_range(const PlaceStructure& ps, const IVec& k) {
    ps.check_length(k, "k");
    for (const auto& t : ps.embeddings()) {
        auto v = k[ps.global_index(t)];
        if (v < 1 || v > ps.p()) return t;
    }
    return std::nullopt;
}

// first tau with (k_tau, k_{Fr^-1 tau}) = (2, 1), if any
inline std::optional<EmbeddingIndex> find_two_one_pattern(const PlaceStructure& ps, const IVec& k) {
    ps.check_length(k, "k");
    for (const auto& t : ps.embeddings())
        if (k[ps.global_index(t)] == 2 && k[ps.global_index(ps.frobenius_inverse(t))] == 1)
            return t;
    return std::nullopt;
}

// first place with k_tau = 1 at every embedding, if any
inline std::optional<int> find_all_ones_place(const PlaceStructure& ps, const IVec& k) {
    ps.check_length(k, "k");
    for (int v = 0; v < ps.place_count(); ++v) {
        bool all = true;
        for (const auto& t : ps.embeddings_of_place(v))
            if (k[ps.global_index(t)] != 1) { all = false; break; }
        if (all) return v;
    }
    return std::nullopt;
}

inline TransferResult compute_transfer(const PlaceStructure& ps, const Weight& w) {
    require_k_at_least_one(ps, w.k, "compute_transfer");
    ps.check_length(w.l, "l");

    TransferResult r;
    r.M = compute_M(ps, w.k);
    r.M_tilde = compute_M_tilde(ps, w.k);

    r.k_prime = w;
    for (const auto& t : r.M) r.k_prime = apply_hasse(ps, r.k_prime, t);
    if (!is_regular(r.k_prime))
        throw invariant_error("k' failed to be regular; companion construction is broken");

    for (const auto& mu : r.M_tilde) {
        Weight cw = w;
        for (const auto& t : r.M)
            if (t != mu) cw = apply_hasse(ps, cw, t);
        cw = theta_shift(ps, cw, mu);
        if (!is_regular(cw.k))
            throw invariant_error("k^mu failed to be regular at mu = " + to_string(mu));
        r.k_mu.emplace_back(mu, std::move(cw));
    }

    r.k_theta = w;
    for (const auto& t : r.M)
        if (!r.M_tilde.count(t)) r.k_theta = apply_hasse(ps, r.k_theta, t);
    for (const auto& mu : r.M_tilde) r.k_theta = theta_shift(ps, r.k_theta, mu);

    for (const auto& mu : r.M_tilde) {
        if (w.k[ps.global_index(mu)] != 2) continue;
        if (ps.degree(mu.place) < 3) r.wrapped_window.push_back(mu);
    }
    return r;
}

} // namespace hmfw

#endif
