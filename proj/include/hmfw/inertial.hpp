#ifndef HMFW_INERTIAL_HPP
#define HMFW_INERTIAL_HPP

#include <algorithm>
#include <cstdint>
#include <optional>

#include "transfer.hpp"

// Arithmetic of tame inertial characters at a place of residue degree f.
//
// A character of inertia is described by its exponent vector a = (a_0, ..., a_{f-1})
// against the fundamental characters; two vectors give the same character iff
//
//     sum_i a_i p^{f-1-i}  =  sum_i b_i p^{f-1-i}   (mod p^f - 1).
//
// residue() computes that canonical value exactly. string_decompose() recognises the
// vectors with residue 0 among those bounded by p: they are precisely the cyclic
// concatenations of zero runs and of signed runs
//
//     +(-1, p-1, ..., p-1, p)     or     -(1, 1-p, ..., 1-p, -p)
//
// read in increasing cyclic index order (wrap-around allowed), with the single
// exception d = +-(p-1, ..., p-1), which has residue 0 but no such decomposition.
// residue() is the authority; the decomposition is a diagnostic certificate.

namespace hmfw {

struct ExponentVector {
    std::int64_t p = 3;
    int f = 1;
    IVec a; // length f, index 0 carries weight p^{f-1}
    friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
};

inline ExponentVector make_exponent_vector(std::int64_t p, IVec a) {
    if (!detail::is_odd_prime(p))
        throw structural_error("p must be an odd prime, got " + std::to_string(p));
    if (a.empty()) throw structural_error("exponent vector must have length >= 1");
    return {p, static_cast<int>(a.size()), std::move(a)};
}

namespace detail {
// p^f - 1 if it fits a signed 64-bit integer
inline std::int64_t character_modulus(std::int64_t p, int f) {
    __int128 m = 1;
    for (int j = 0; j < f; ++j) {
        m *= p;
        if (m > (__int128(1) << 62)) // keep well inside int64 range
            throw structural_error("p^f - 1 too large for exact character arithmetic (p=" +
                                   std::to_string(p) + ", f=" + std::to_string(f) + ")");
    }
    return static_cast<std::int64_t>(m - 1);
}
} // namespace detail

// canonical representative in [0, p^f - 1)
inline std::int64_t residue(const ExponentVector& d) {
    if (static_cast<int>(d.a.size()) != d.f)
        throw structural_error("exponent vector length disagrees with f");
    if (!detail::is_odd_prime(d.p))
        throw structural_error("p must be an odd prime, got " + std::to_string(d.p));
    std::int64_t m = detail::character_modulus(d.p, d.f);
    if (m == 0) return 0; // unreachable: p >= 3, f >= 1
    __int128 acc = 0;
    for (int i = 0; i < d.f; ++i) {
        acc = acc * d.p + d.a[i]; // Horner, most significant first
        acc %= m;
    }
    auto r = static_cast<std::int64_t>(acc % m);
    return r < 0 ? r + m : r;
}

struct StringBlock {
    int start = 0;  // cyclic index of the first entry
    int length = 1;
    int sign = 0;   // +1, -1, or 0 for a zero run
    friend bool operator==(const StringBlock&, const StringBlock&) = default;
};

// Decompose d into zero runs and signed runs, or report that none exists. Entries must
// lie in [-p, p]. For odd p each value determines its role uniquely (-1 opens a positive
// run, p closes it, p-1 continues it; negated for negative runs; 0 is a zero run), so
// the partition is forced and no search is needed.
inline std::optional<std::vector<StringBlock>> string_decompose(const ExponentVector& d) {
    if (static_cast<int>(d.a.size()) != d.f)
        throw structural_error("exponent vector length disagrees with f");
    if (!detail::is_odd_prime(d.p))
        throw structural_error("p must be an odd prime, got " + std::to_string(d.p));
    const int f = d.f;
    const std::int64_t p = d.p;
    for (auto v : d.a)
        if (v < -p || v > p)
            throw weight_domain_error("string entry out of range [-p, p]: " + std::to_string(v));

    enum Role { zero, open_pos, mid_pos, close_pos, open_neg, mid_neg, close_neg, bad };
    std::vector<Role> role(f);
    for (int i = 0; i < f; ++i) {
        auto v = d.a[i];
        role[i] = v == 0      ? zero
                : v == -1     ? open_pos
                : v == p - 1  ? mid_pos
                : v == p      ? close_pos
                : v == 1      ? open_neg
                : v == 1 - p  ? mid_neg
                : v == -p     ? close_neg
                              : bad;
        if (role[i] == bad) return std::nullopt;
    }

    std::vector<bool> used(f, false);
    std::vector<StringBlock> blocks;
    for (int i = 0; i < f; ++i) {
        if (role[i] != open_pos && role[i] != open_neg) continue;
        const bool pos = role[i] == open_pos;
        const Role mid = pos ? mid_pos : mid_neg;
        const Role close = pos ? close_pos : close_neg;
        int len = 1, j = (i + 1) % f;
        while (len < f && role[j] == mid) { ++len; j = (j + 1) % f; }
        if (len >= f || role[j] != close) return std::nullopt; // run never closes
        ++len;
        for (int step = 0; step < len; ++step) {
            int q = (i + step) % f;
            if (used[q]) return std::nullopt;
            used[q] = true;
        }
        blocks.push_back({i, len, pos ? +1 : -1});
    }
    // everything not consumed by a signed run must be a zero entry
    for (int i = 0; i < f; ++i)
        if (!used[i] && role[i] != zero) return std::nullopt;
    // group leftover zeros into maximal cyclic runs; a run head is a free zero whose
    // cyclic predecessor is not (the fully-zero cycle has no head, so it starts at 0)
    std::vector<int> heads;
    bool any_free = false;
    for (int i = 0; i < f; ++i) {
        if (used[i]) continue;
        any_free = true;
        int prev = (i + f - 1) % f;
        if (used[prev] || prev == i) heads.push_back(i);
    }
    if (any_free && heads.empty()) heads.push_back(0);
    for (int i : heads) {
        int len = 0, j = i;
        while (len < f && !used[j]) { used[j] = true; ++len; j = (j + 1) % f; }
        blocks.push_back({i, len, 0});
    }
    std::sort(blocks.begin(), blocks.end(),
              [](const StringBlock& x, const StringBlock& y) { return x.start < y.start; });
    return blocks;
}

// Exponents of the two inertial characters attached to a regular weight k' on one place,
// for a chosen subset J of the embeddings (bit i of J = membership of cycle index i):
//   s'_i = 1 - k'_i on J, 0 off J;   t'_i complements it.
inline std::pair<ExponentVector, ExponentVector>
lift_exponents_regular(std::int64_t p, const IVec& k_prime_place, std::uint64_t J) {
    auto f = static_cast<int>(k_prime_place.size());
    if (f < 1 || f > 62) throw structural_error("place degree out of range for subset masks");
    if (J >> f) throw structural_error("subset mask has bits beyond the place degree");
    ExponentVector s = make_exponent_vector(p, IVec(f, 0));
    ExponentVector t = make_exponent_vector(p, IVec(f, 0));
    for (int i = 0; i < f; ++i) {
        if ((J >> i) & 1) s.a[i] = 1 - k_prime_place[i];
        else t.a[i] = 1 - k_prime_place[i];
    }
    return {s, t};
}

// Exponents attached to the Theta companion (k^mu, l^mu) on mu's place. Only the
// all-zero l with a single -1 at mu ever arises here (descent arithmetic lives at l = 0),
// and that shape is required.
inline std::pair<ExponentVector, ExponentVector>
mu_exponents(std::int64_t p, const IVec& k_mu_place, const IVec& l_mu_place, int mu_local) {
    auto f = static_cast<int>(k_mu_place.size());
    if (f < 1 || l_mu_place.size() != k_mu_place.size())
        throw structural_error("k^mu and l^mu must have equal positive length");
    if (mu_local < 0 || mu_local >= f) throw structural_error("mu outside the place");
    for (int i = 0; i < f; ++i) {
        std::int64_t want = (i == mu_local) ? -1 : 0;
        if (l_mu_place[i] != want)
            throw weight_domain_error("l^mu must be -1 at mu and 0 elsewhere (companions of l = 0)");
    }
    ExponentVector s = make_exponent_vector(p, IVec(f, 0));
    ExponentVector t = make_exponent_vector(p, IVec(f, 0));
    for (int i = 0; i < f; ++i) {
        s.a[i] = -l_mu_place[i];
        t.a[i] = 1 - k_mu_place[i] - l_mu_place[i];
    }
    return {s, t};
}

struct ImpliedShapeCheck {
    EmbeddingIndex mu;
    std::uint64_t subsets_tested = 0;
    std::vector<EmbeddingSet> violations; // subsets J whose character matches; expected empty
};

// Raw congruence scan behind the implied-shape check, no hypothesis gate. Relabels the
// cycle so mu sits at position 0, compares the mu companion's first character (exponent
// e_mu) with the k'-lift on every subset J of the place, and reports the J where the two
// characters coincide, in the caller's original labeling.
inline ImpliedShapeCheck impliedshape_congruence(const PlaceStructure& ps, const IVec& k,
                                                 const EmbeddingIndex& mu) {
    require_k_at_least_one(ps, k, "impliedshape_congruence");
    ps.check(mu);
    const int f = ps.degree(mu.place);
    if (f > 24) throw structural_error("subset scan over 2^f is unreasonable for f > 24");

    TransferResult tr = compute_transfer(ps, make_weight(ps, k));
    if (!tr.M_tilde.count(mu))
        throw weight_domain_error("impliedshape_congruence: mu must lie in M~");

    IVec k_rel(f); // k' on mu's place, relabeled so index 0 is mu and Fr^-1 walks forward
    for (int j = 0; j < f; ++j) {
        EmbeddingIndex orig{mu.place, (mu.i + j) % f};
        k_rel[j] = tr.k_prime.k[ps.global_index(orig)];
    }

    ImpliedShapeCheck out;
    out.mu = mu;
    ExponentVector s_mu = make_exponent_vector(ps.p(), IVec(f, 0));
    s_mu.a[0] = 1;
    for (std::uint64_t J = 0; J < (std::uint64_t(1) << f); ++J) {
        auto [s_prime, t_prime] = lift_exponents_regular(ps.p(), k_rel, J);
        ExponentVector diff = s_mu;
        for (int j = 0; j < f; ++j) diff.a[j] -= s_prime.a[j];
        ++out.subsets_tested;
        if (residue(diff) == 0) {
            EmbeddingSet bad;
            for (int j = 0; j < f; ++j)
                if ((J >> j) & 1) bad.insert({mu.place, (mu.i + j) % f});
            out.violations.push_back(std::move(bad));
        }
    }
    return out;
}

// Gated form: only meaningful under the regularization theorem's combinatorial
// hypotheses, so those are enforced up front.
inline ImpliedShapeCheck verify_impliedshape(const PlaceStructure& ps, const IVec& k,
                                             const EmbeddingIndex& mu) {
    ps.check_length(k, "k");
    if (auto t = find_k_out_of_range(ps, k))
        throw inapplicable_error("range", "condition (1) fails: k[" + to_string(*t) +
                                              "] outside [1, p]");
    if (auto t = find_two_one_pattern(ps, k))
        throw inapplicable_error("two-one", "condition (2) fails: (k_tau, k_{Fr^-1 tau}) = (2,1) at " +
                                                to_string(*t));
    if (auto v = find_all_ones_place(ps, k))
        throw inapplicable_error("all-ones", "condition (3) fails: place " + std::to_string(*v) +
                                                 " has k identically 1");
    EmbeddingSet mt = compute_M_tilde(ps, k);
    if (!mt.count(mu))
        throw inapplicable_error("mu", "mu = " + to_string(mu) + " is not in M~");
    return impliedshape_congruence(ps, k, mu);
}

struct CharacterShape {
    enum class Context { theta_companion, regular_place };
    Context context = Context::theta_companion;
    int place = 0;
    std::optional<EmbeddingIndex> mu; // set for theta_companion shapes
    ExponentVector chi1, chi2;
};

// The inertial shapes the theorems forbid rho from taking: one per Theta companion
// (mu in M~), and one per fully regular place. The regular-place shapes belong to a
// statement made at l = 0, so they are only emitted there; the companion shapes use
// whatever l the weight carries.
inline std::vector<CharacterShape> forbidden_shapes(const PlaceStructure& ps, const Weight& w) {
    require_k_at_least_one(ps, w.k, "forbidden_shapes");
    const IVec& k = w.k;
    TransferResult tr = compute_transfer(ps, w);
    bool l_zero = true;
    for (auto v : w.l)
        if (v != 0) { l_zero = false; break; }
    std::vector<CharacterShape> out;
    for (const auto& [mu, w] : tr.k_mu) {
        const int f = ps.degree(mu.place);
        CharacterShape cs;
        cs.context = CharacterShape::Context::theta_companion;
        cs.place = mu.place;
        cs.mu = mu;
        cs.chi1 = make_exponent_vector(ps.p(), IVec(f, 0));
        cs.chi2 = make_exponent_vector(ps.p(), IVec(f, 0));
        for (int i = 0; i < f; ++i) {
            int g = ps.global_index({mu.place, i});
            cs.chi1.a[i] = -w.l[g];
            cs.chi2.a[i] = 1 - w.k[g] - w.l[g];
        }
        out.push_back(std::move(cs));
    }
    for (int v = 0; l_zero && v < ps.place_count(); ++v) {
        bool regular_place = true;
        for (const auto& t : ps.embeddings_of_place(v))
            if (k[ps.global_index(t)] < 2) { regular_place = false; break; }
        if (!regular_place) continue;
        const int f = ps.degree(v);
        CharacterShape cs;
        cs.context = CharacterShape::Context::regular_place;
        cs.place = v;
        cs.chi1 = make_exponent_vector(ps.p(), IVec(f, 0)); // unramified: all exponents 0
        cs.chi2 = make_exponent_vector(ps.p(), IVec(f, 0));
        for (int i = 0; i < f; ++i)
            cs.chi2.a[i] = 1 - k[ps.global_index({v, i})];
        out.push_back(std::move(cs));
    }
    return out;
}

inline std::vector<CharacterShape> forbidden_shapes(const PlaceStructure& ps, const IVec& k) {
    return forbidden_shapes(ps, make_weight(ps, k));
}

} // namespace hmfw

#endif
