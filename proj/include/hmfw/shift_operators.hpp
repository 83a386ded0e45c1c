#ifndef HMFW_SHIFT_OPERATORS_HPP
#define HMFW_SHIFT_OPERATORS_HPP

#include "weight_space.hpp"

// The two weight shifts the whole theory runs on:
//
//  * multiplication by the partial Hasse invariant at tau moves k by
//        Ha_tau : k -> k + p*e_{Fr^{-1} tau} - e_tau            (l untouched)
//  * the partial Theta operator at tau moves (k, l) by
//        Th_tau : k -> k + e_tau + p*e_{Fr^{-1} tau},  l -> l - e_tau
//    which degenerates to k_tau += p+1 when the place has a single embedding.
//
// Stripping a Hasse invariant (unapply_hasse) is what descent does; it is legal to
// *divide* by Ha_tau precisely when p*k_tau < k_{Fr^{-1} tau}, and strippable_set
// collects the tau where that strict inequality holds.

namespace hmfw {

// weight of the partial Hasse invariant at tau, as a vector over Sigma
inline IVec hasse_weight(const PlaceStructure& ps, const EmbeddingIndex& tau) {
    ps.check(tau);
    IVec w(ps.total_degree(), 0);
    w[ps.global_index(ps.frobenius_inverse(tau))] += ps.p();
    w[ps.global_index(tau)] -= 1;
    return w;
}

inline Weight apply_hasse(const PlaceStructure& ps, Weight w, const EmbeddingIndex& tau) {
    ps.check_length(w.k, "k");
    ps.check_length(w.l, "l");
    IVec h = hasse_weight(ps, tau);
    for (std::size_t j = 0; j < h.size(); ++j) w.k[j] += h[j];
    return w;
}

inline Weight unapply_hasse(const PlaceStructure& ps, Weight w, const EmbeddingIndex& tau) {
    ps.check_length(w.k, "k");
    ps.check_length(w.l, "l");
    IVec h = hasse_weight(ps, tau);
    for (std::size_t j = 0; j < h.size(); ++j) w.k[j] -= h[j];
    return w;
}

inline Weight theta_shift(const PlaceStructure& ps, Weight w, const EmbeddingIndex& tau) {
    ps.check_length(w.k, "k");
    ps.check_length(w.l, "l");
    auto prev = ps.frobenius_inverse(tau);
    if (prev == tau) {
        w.k[ps.global_index(tau)] += ps.p() + 1; // Frobenius fixes tau: one embedding in the place
    } else {
        w.k[ps.global_index(tau)] += 1;
        w.k[ps.global_index(prev)] += ps.p();
    }
    w.l[ps.global_index(tau)] -= 1;
    return w;
}

// tau where dividing by Ha_tau keeps the weight sensible: p*k_tau < k_{Fr^{-1} tau}, strict.
// Empty exactly when k lies in the minimal cone.
inline EmbeddingSet strippable_set(const PlaceStructure& ps, const IVec& k) {
    ps.check_length(k, "k");
    EmbeddingSet out;
    for (const auto& t : ps.embeddings()) {
        auto prev = ps.frobenius_inverse(t);
        if (ps.p() * k[ps.global_index(t)] < k[ps.global_index(prev)]) out.insert(t);
    }
    return out;
}

// p(k_tau - 2) > k_{Fr^{-1} tau} - 2 for every tau: the cone on which geometric
// modularity of a regular weight is known to imply algebraic modularity.
inline bool yang_condition(const PlaceStructure& ps, const IVec& k) {
    ps.check_length(k, "k");
    for (const auto& t : ps.embeddings()) {
        auto prev = ps.frobenius_inverse(t);
        if (ps.p() * (k[ps.global_index(t)] - 2) <= k[ps.global_index(prev)] - 2) return false;
    }
    return true;
}

enum class ShiftKind { hasse, theta };

struct ShiftRecord {
    ShiftKind kind;
    EmbeddingIndex tau;
    IVec delta_k, delta_l;
};

inline ShiftRecord hasse_record(const PlaceStructure& ps, const EmbeddingIndex& tau) {
    return {ShiftKind::hasse, tau, hasse_weight(ps, tau), IVec(ps.total_degree(), 0)};
}

inline ShiftRecord theta_record(const PlaceStructure& ps, const EmbeddingIndex& tau) {
    Weight zero{IVec(ps.total_degree(), 0), IVec(ps.total_degree(), 0)};
    Weight shifted = theta_shift(ps, zero, tau);
    return {ShiftKind::theta, tau, shifted.k, shifted.l};
}

} // namespace hmfw

#endif
