#ifndef HMFW_ENUMERATE_HPP
#define HMFW_ENUMERATE_HPP

#include <functional>
#include <sstream>

#include "descent.hpp"
#include "inertial.hpp"

// Exhaustive sweeps. run_enumeration drives the whole property suite over every weight
// in a box [k_min, k_max]^n (n = places * f, every place of degree f) and over every
// bounded string vector of length f, and reports anything that contradicts what the
// theory promises. It is the CLI's enumerate engine; the test suite uses the smaller
// helpers directly for mixed place partitions.

namespace hmfw {

// odometer over vectors of `length` entries in [lo, hi]
inline void for_each_vector(int length, std::int64_t lo, std::int64_t hi,
                            const std::function<void(const IVec&)>& fn) {
    IVec v(length, lo);
    while (true) {
        fn(v);
        int pos = 0;
        while (pos < length && v[pos] == hi) v[pos++] = lo;
        if (pos == length) return;
        ++v[pos];
    }
}

// ordered compositions of n (all ways to split n embeddings into consecutive places)
inline std::vector<std::vector<int>> place_compositions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int left) {
        if (left == 0) { out.push_back(cur); return; }
        for (int part = 1; part <= left; ++part) {
            cur.push_back(part);
            rec(left - part);
            cur.pop_back();
        }
    };
    rec(n);
    return out;
}

inline bool companion_admissible(const PlaceStructure& ps, const IVec& k) {
    for (auto v : k)
        if (v < 1) return false;
    if (!in_minimal_cone(ps, k)) return false;
    if (find_all_ones_place(ps, k)) return false;
    for (const auto& mu : compute_M_tilde(ps, k))
        if ((k[ps.global_index(mu)] - 1) % ps.p() == 0) return false;
    return true;
}

inline bool regularization_admissible(const PlaceStructure& ps, const IVec& k) {
    return !find_k_out_of_range(ps, k) && !find_two_one_pattern(ps, k) &&
           !find_all_ones_place(ps, k);
}

// Core per-weight checks; returns human-readable complaints, empty when all is well.
inline std::vector<std::string> check_weight_properties(const PlaceStructure& ps, const IVec& k) {
    std::vector<std::string> bad;
    auto describe = [&](const char* what) {
        std::ostringstream os;
        os << what << " at p=" << ps.p() << " degrees=[";
        for (std::size_t i = 0; i < ps.degrees().size(); ++i)
            os << (i ? "," : "") << ps.degrees()[i];
        os << "] k=[";
        for (std::size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i];
        os << "]";
        return os.str();
    };

    TransferResult tr;
    try {
        tr = compute_transfer(ps, make_weight(ps, k));
    } catch (const invariant_error& e) {
        bad.push_back(describe(e.what()));
        return bad;
    }
    for (const auto& mu : tr.M_tilde)
        if (!tr.M.count(mu)) bad.push_back(describe("M~ escapes M"));
    for (const auto& [mu, w] : tr.k_mu) {
        IVec expect = tr.k_prime.k;
        expect[ps.global_index(mu)] += 2;
        if (w.k != expect) bad.push_back(describe("k^mu != k' + 2e_mu"));
    }

    if (companion_admissible(ps, k)) {
        try {
            RoundtripResult r = verify_roundtrip(ps, k);
            if (!r.ok) bad.push_back(describe(("roundtrip: " + r.detail).c_str()));
            for (const auto& c : classify_M_prime(ps, k)) {
                IVec actual;
                for (const auto& t : pattern_positions(ps, c))
                    actual.push_back(r.k_double_prime[ps.global_index(t)]);
                if (actual != expected_pattern(c, ps.p()))
                    bad.push_back(describe("k'' segment mismatch"));
            }
        } catch (const inapplicable_error& e) {
            bad.push_back(describe((std::string("admissible weight rejected: ") + e.what()).c_str()));
        } catch (const invariant_error& e) {
            bad.push_back(describe(e.what()));
        }
    }

    if (regularization_admissible(ps, k)) {
        for (const auto& mu : tr.M_tilde) {
            ImpliedShapeCheck c = impliedshape_congruence(ps, k, mu);
            if (!c.violations.empty())
                bad.push_back(describe(("impliedshape violation at mu = " + to_string(mu)).c_str()));
        }
    }
    return bad;
}

// residue-vs-decomposition agreement for one string vector
inline std::optional<std::string> check_string_vector(std::int64_t p, const IVec& d) {
    ExponentVector ev = make_exponent_vector(p, d);
    bool zero = residue(ev) == 0;
    bool decomposes = string_decompose(ev).has_value();
    bool all_pm1 = true;
    for (auto v : d)
        if (v != p - 1) { all_pm1 = false; break; }
    if (!all_pm1) {
        all_pm1 = true;
        for (auto v : d)
            if (v != 1 - p) { all_pm1 = false; break; }
    }
    if (all_pm1) {
        if (!zero || decomposes) {
            std::ostringstream os;
            os << "exceptional vector misbehaves at p=" << p;
            return os.str();
        }
        return std::nullopt;
    }
    if (zero != decomposes) {
        std::ostringstream os;
        os << "string mismatch at p=" << p << " d=[";
        for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
        os << "]: residue " << (zero ? "0" : "nonzero") << " but decomposition "
           << (decomposes ? "exists" : "missing");
        return os.str();
    }
    return std::nullopt;
}

struct EnumerateParams {
    std::int64_t p = 3;
    int places = 1;
    int f = 1;
    std::int64_t k_min = 1, k_max = 3;
    std::uint64_t work_cap = 10'000'000; // refuse bigger jobs
};

struct EnumerateSummary {
    std::uint64_t weights = 0;
    std::uint64_t skipped_nonpositive = 0;
    std::uint64_t roundtrip_checked = 0;
    std::uint64_t impliedshape_checked = 0;
    std::uint64_t string_vectors = 0;
    std::vector<std::string> findings;
};

inline EnumerateSummary run_enumeration(const EnumerateParams& prm) {
    if (prm.k_min > prm.k_max) throw structural_error("empty weight range: k_min > k_max");
    if (prm.places < 1 || prm.f < 1)
        throw structural_error("need at least one place of degree at least 1");
    PlaceStructure ps(prm.p, std::vector<int>(prm.places, prm.f));
    detail::character_modulus(prm.p, prm.f); // fail early if p^f - 1 cannot be exact

    const int n = ps.total_degree();
    auto span = static_cast<std::uint64_t>(prm.k_max - prm.k_min + 1);
    std::uint64_t weight_count = 1;
    for (int i = 0; i < n; ++i) {
        if (weight_count > prm.work_cap / span + 1) weight_count = prm.work_cap + 1;
        else weight_count *= span;
    }
    std::uint64_t string_span = static_cast<std::uint64_t>(2 * prm.p + 1);
    std::uint64_t string_count = 1;
    for (int i = 0; i < prm.f; ++i) {
        if (string_count > prm.work_cap / string_span + 1) string_count = prm.work_cap + 1;
        else string_count *= string_span;
    }
    if (weight_count > prm.work_cap || string_count > prm.work_cap) {
        std::ostringstream os;
        os << "job too large: about " << weight_count << " weights and " << string_count
           << " string vectors against a cap of " << prm.work_cap;
        throw structural_error(os.str());
    }

    EnumerateSummary sum;
    for_each_vector(n, prm.k_min, prm.k_max, [&](const IVec& k) {
        ++sum.weights;
        for (auto v : k)
            if (v < 1) { ++sum.skipped_nonpositive; return; }
        if (companion_admissible(ps, k)) ++sum.roundtrip_checked;
        if (regularization_admissible(ps, k)) ++sum.impliedshape_checked;
        auto bad = check_weight_properties(ps, k);
        sum.findings.insert(sum.findings.end(), bad.begin(), bad.end());
    });

    for_each_vector(prm.f, -prm.p, prm.p, [&](const IVec& d) {
        ++sum.string_vectors;
        if (auto complaint = check_string_vector(prm.p, d))
            sum.findings.push_back(*complaint);
    });
    return sum;
}

} // namespace hmfw

#endif
