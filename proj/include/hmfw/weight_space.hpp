#ifndef HMFW_WEIGHT_SPACE_HPP
#define HMFW_WEIGHT_SPACE_HPP

#include <compare>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"

// Conventions.
//
// A weight lives over a totally real field in which the prime p is unramified. All that
// matters combinatorially is the set of primes above p ("places") and, for each place v,
// its residue degree f_v. The f_v embeddings of the residue field are a single Frobenius
// orbit; we label them tau_{v,0}, ..., tau_{v,f_v-1} so that applying Frobenius moves the
// label DOWN by one:
//
//     Fr . tau_{v,i} = tau_{v,i-1 mod f_v},   hence   Fr^{-1} . tau_{v,i} = tau_{v,i+1 mod f_v}.
//
// Everything downstream (Hasse weights, companion weights, strip patterns) is written
// against this orientation, so it is fixed here once and tested exhaustively.
//
// A weight is a pair of integer vectors (k, l) indexed by the full embedding set Sigma,
// stored place-major: place 0's embeddings first (i = 0..f_0-1), then place 1's, and so on.

namespace hmfw {

using IVec = std::vector<std::int64_t>;

struct EmbeddingIndex {
    int place = 0;
    int i = 0; // index inside the place's Frobenius cycle
    friend auto operator<=>(const EmbeddingIndex&, const EmbeddingIndex&) = default;
};

using EmbeddingSet = std::set<EmbeddingIndex>;

inline std::string to_string(const EmbeddingIndex& t) {
    return "v" + std::to_string(t.place) + ":t" + std::to_string(t.i);
}

namespace detail {
inline bool is_odd_prime(std::int64_t p) {
    if (p < 3 || p % 2 == 0) return false;
    for (std::int64_t q = 3; q * q <= p; q += 2)
        if (p % q == 0) return false;
    return true;
}
} // namespace detail

class PlaceStructure {
public:
    PlaceStructure(std::int64_t p, std::vector<int> degrees)
        : p_(p), degrees_(std::move(degrees)) {
        if (!detail::is_odd_prime(p_))
            throw structural_error("p must be an odd prime, got " + std::to_string(p_));
        if (degrees_.empty())
            throw structural_error("need at least one place above p");
        offsets_.reserve(degrees_.size() + 1);
        offsets_.push_back(0);
        for (int f : degrees_) {
            if (f < 1)
                throw structural_error("residue degree must be >= 1, got " + std::to_string(f));
            offsets_.push_back(offsets_.back() + f);
        }
    }

    std::int64_t p() const { return p_; }
    const std::vector<int>& degrees() const { return degrees_; }
    int place_count() const { return static_cast<int>(degrees_.size()); }
    int degree(int place) const { check_place(place); return degrees_[place]; }
    int total_degree() const { return offsets_.back(); } // n = sum of residue degrees

    bool valid(const EmbeddingIndex& t) const {
        return t.place >= 0 && t.place < place_count() && t.i >= 0 && t.i < degrees_[t.place];
    }

    int global_index(const EmbeddingIndex& t) const {
        check(t);
        return offsets_[t.place] + t.i;
    }

    EmbeddingIndex embedding_at(int global) const {
        if (global < 0 || global >= total_degree())
            throw structural_error("global embedding index out of range: " + std::to_string(global));
        int place = 0;
        while (offsets_[place + 1] <= global) ++place;
        return {place, global - offsets_[place]};
    }

    // Fr . tau_i = tau_{i-1}
    EmbeddingIndex frobenius(const EmbeddingIndex& t) const {
        check(t);
        int f = degrees_[t.place];
        return {t.place, (t.i + f - 1) % f};
    }

    // Fr^{-1} . tau_i = tau_{i+1}
    EmbeddingIndex frobenius_inverse(const EmbeddingIndex& t) const {
        check(t);
        int f = degrees_[t.place];
        return {t.place, (t.i + 1) % f};
    }

    std::vector<EmbeddingIndex> embeddings() const {
        std::vector<EmbeddingIndex> out;
        out.reserve(total_degree());
        for (int v = 0; v < place_count(); ++v)
            for (int i = 0; i < degrees_[v]; ++i)
                out.push_back({v, i});
        return out;
    }

    std::vector<EmbeddingIndex> embeddings_of_place(int place) const {
        check_place(place);
        std::vector<EmbeddingIndex> out;
        out.reserve(degrees_[place]);
        for (int i = 0; i < degrees_[place]; ++i) out.push_back({place, i});
        return out;
    }

    // e_tau as a vector over all of Sigma
    IVec basis_vector(const EmbeddingIndex& t) const {
        IVec e(total_degree(), 0);
        e[global_index(t)] = 1;
        return e;
    }

    void check(const EmbeddingIndex& t) const {
        if (!valid(t))
            throw structural_error("invalid embedding index " + to_string(t));
    }

    void check_length(const IVec& a, const char* what) const {
        if (static_cast<int>(a.size()) != total_degree())
            throw structural_error(std::string(what) + " has length " + std::to_string(a.size()) +
                                   ", expected n = " + std::to_string(total_degree()));
    }

    friend bool operator==(const PlaceStructure& a, const PlaceStructure& b) {
        return a.p_ == b.p_ && a.degrees_ == b.degrees_;
    }

private:
    void check_place(int place) const {
        if (place < 0 || place >= place_count())
            throw structural_error("invalid place index " + std::to_string(place));
    }

    std::int64_t p_;
    std::vector<int> degrees_;
    std::vector<int> offsets_;
};

struct Weight {
    IVec k, l;
    friend bool operator==(const Weight&, const Weight&) = default;
};

inline Weight make_weight(const PlaceStructure& ps, IVec k, IVec l = {}) {
    ps.check_length(k, "k");
    if (l.empty()) l.assign(k.size(), 0);
    ps.check_length(l, "l");
    return Weight{std::move(k), std::move(l)};
}

// k_tau >= 2 everywhere; the companion-weight machinery exists to reach this region.
inline bool is_regular(const IVec& k) {
    for (auto v : k)
        if (v < 2) return false;
    return true;
}

inline bool is_regular(const Weight& w) { return is_regular(w.k); }

// Minimal cone: p * k_tau >= k_{Fr^{-1} tau} for every tau. Weights outside it can be
// brought inside by dividing out partial Hasse invariants (see descent.hpp).
inline bool in_minimal_cone(const PlaceStructure& ps, const IVec& k) {
    ps.check_length(k, "k");
    for (const auto& t : ps.embeddings()) {
        auto prev = ps.frobenius_inverse(t);
        if (ps.p() * k[ps.global_index(t)] < k[ps.global_index(prev)]) return false;
    }
    return true;
}

inline void require_k_at_least_one(const PlaceStructure& ps, const IVec& k, const char* who) {
    ps.check_length(k, "k");
    for (const auto& t : ps.embeddings())
        if (k[ps.global_index(t)] < 1)
            throw weight_domain_error(std::string(who) + ": needs k_tau >= 1 everywhere, got k[" +
                                      to_string(t) + "] = " + std::to_string(k[ps.global_index(t)]));
}

} // namespace hmfw

#endif
