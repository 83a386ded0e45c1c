#include <catch2/catch_amalgamated.hpp>

#include <functional>

#include <hmfw/descent.hpp>

using namespace hmfw;

namespace {

void odometer(int len, std::int64_t lo, std::int64_t hi, const std::function<void(const IVec&)>& fn) {
    IVec v(len, lo);
    while (true) {
        fn(v);
        int pos = 0;
        while (pos < len && v[pos] == hi) v[pos++] = lo;
        if (pos == len) return;
        ++v[pos];
    }
}

const MPrimeCase& case_at(const std::vector<MPrimeCase>& cs, EmbeddingIndex tau) {
    for (const auto& c : cs)
        if (c.tau == tau) return c;
    throw std::runtime_error("no case at " + to_string(tau));
}

std::string inapplicable_condition(const PlaceStructure& ps, const IVec& k) {
    try {
        verify_roundtrip(ps, k);
    } catch (const inapplicable_error& e) {
        return e.condition;
    }
    return "";
}

} // namespace

TEST_CASE("k'' on the worked families") {
    for (std::int64_t p : {3, 5, 7}) {
        PlaceStructure ps(p, {3});
        for (std::int64_t k2 = 3; k2 <= p; ++k2)
            CHECK(compute_k_double_prime(ps, {1, 1, k2}) == IVec{0, p + 1, k2});
        CHECK(compute_k_double_prime(ps, {1, 1, 2}) == IVec{0, p, p + 2});
    }
    for (std::int64_t p : {3, 5}) {
        PlaceStructure ps8(p, {8});
        for (std::int64_t k2 = 3; k2 <= p; ++k2)
            CHECK(compute_k_double_prime(ps8, {1, 1, k2, 2, 2, 1, 2, 2}) ==
                  IVec{0, p + 1, k2, 1, p + 2, 0, p + 1, p + 2});
        PlaceStructure ps4(p, {4});
        CHECK(compute_k_double_prime(ps4, {3, 1, 3, 1}) == IVec{3, 1, 3, 1}); // M' empty
    }
    // cross-check the second defining formula by hand on (1,1,2): M' = {tau_0, tau_1}
    PlaceStructure ps(3, {3});
    Weight manual = make_weight(ps, {1, 1, 2});
    manual = apply_hasse(ps, manual, {0, 0});
    manual = apply_hasse(ps, manual, {0, 1});
    CHECK(compute_k_double_prime(ps, {1, 1, 2}) == manual.k);
}

TEST_CASE("classification of the cubic and its k2 = 2 degeneration") {
    PlaceStructure ps(3, {3});
    auto cs = classify_M_prime(ps, {1, 1, 3});
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].tau == EmbeddingIndex{0, 0});
    CHECK(cs[0].kind == MPrimeKind::one_run);
    CHECK(cs[0].s == 1);
    CHECK(cs[0].t == 0);
    CHECK(cs[0].boundary == BoundaryRow::one_not_in_M);
    CHECK(cs[0].anchor == EmbeddingIndex{0, 2});
    CHECK(pattern_positions(ps, cs[0]) == std::vector<EmbeddingIndex>{{0, 0}, {0, 1}});
    CHECK(expected_pattern(cs[0], 3) == IVec{0, 4});

    auto cs2 = classify_M_prime(ps, {1, 1, 2});
    REQUIRE(cs2.size() == 2);
    const auto& c0 = case_at(cs2, {0, 0});
    CHECK(c0.kind == MPrimeKind::one_run);
    CHECK(c0.s == 1);
    CHECK(c0.boundary == BoundaryRow::one_in_M);
    CHECK(expected_pattern(c0, 3) == IVec{0, 3});
    const auto& c1 = case_at(cs2, {0, 1});
    CHECK(c1.kind == MPrimeKind::one_run);
    CHECK(c1.s == 2);
    CHECK(c1.boundary == BoundaryRow::two_in_Mtilde);
    CHECK(c1.anchor == EmbeddingIndex{0, 2});
    CHECK(pattern_positions(ps, c1) == std::vector<EmbeddingIndex>{{0, 0}, {0, 1}, {0, 2}});
    CHECK(expected_pattern(c1, 3) == IVec{0, 3, 5});
}

TEST_CASE("classification of the degree-eight example") {
    for (std::int64_t p : {3, 5}) {
        PlaceStructure ps(p, {8});
        IVec k{1, 1, 3, 2, 2, 1, 2, 2};
        auto cs = classify_M_prime(ps, k);
        REQUIRE(cs.size() == 4);

        const auto& c0 = case_at(cs, {0, 0});
        CHECK(c0.kind == MPrimeKind::one_run);
        CHECK(c0.s == 1);
        CHECK(c0.boundary == BoundaryRow::one_not_in_M);
        CHECK(c0.anchor == EmbeddingIndex{0, 7});

        const auto& c3 = case_at(cs, {0, 3});
        CHECK(c3.kind == MPrimeKind::two_then_two);
        CHECK(c3.s == 1);
        CHECK(c3.t == 0);
        CHECK(c3.boundary == BoundaryRow::two_in_Mtilde);
        CHECK(c3.anchor == EmbeddingIndex{0, 2});
        CHECK(expected_pattern(c3, p) == IVec{1, p + 2});
        CHECK(pattern_positions(ps, c3) == std::vector<EmbeddingIndex>{{0, 3}, {0, 4}});

        const auto& c5 = case_at(cs, {0, 5});
        CHECK(c5.kind == MPrimeKind::one_run);
        CHECK(c5.s == 1);
        CHECK(c5.boundary == BoundaryRow::two_not_in_Mtilde);
        CHECK(c5.anchor == EmbeddingIndex{0, 4});
        CHECK(expected_pattern(c5, p) == IVec{0, p + 1});

        const auto& c6 = case_at(cs, {0, 6});
        CHECK(c6.kind == MPrimeKind::two_then_two);
        CHECK(c6.s == 1);
        CHECK(c6.t == 1);
        CHECK(c6.boundary == BoundaryRow::two_in_Mtilde);
        CHECK(c6.anchor == EmbeddingIndex{0, 4});
        CHECK(pattern_positions(ps, c6) == std::vector<EmbeddingIndex>{{0, 5}, {0, 6}, {0, 7}});
        CHECK(expected_pattern(c6, p) == IVec{0, p + 1, p + 2});
    }
}

TEST_CASE("classification with a long forward one-run") {
    PlaceStructure ps(3, {4});
    IVec k{2, 2, 1, 1};
    auto cs = classify_M_prime(ps, k);
    REQUIRE(cs.size() == 3);

    const auto& c0 = case_at(cs, {0, 0});
    CHECK(c0.kind == MPrimeKind::two_then_two);
    CHECK(c0.s == 1);
    CHECK(c0.t == 2);
    CHECK(c0.boundary == BoundaryRow::two_in_Mtilde);
    CHECK(c0.anchor == EmbeddingIndex{0, 1});
    CHECK(pattern_positions(ps, c0) ==
          std::vector<EmbeddingIndex>{{0, 2}, {0, 3}, {0, 0}, {0, 1}});
    CHECK(expected_pattern(c0, 3) == IVec{0, 3, 4, 5});

    const auto& c2 = case_at(cs, {0, 2});
    CHECK(c2.kind == MPrimeKind::one_run);
    CHECK(c2.s == 1);
    CHECK(c2.boundary == BoundaryRow::one_in_M);

    const auto& c3 = case_at(cs, {0, 3});
    CHECK(c3.kind == MPrimeKind::one_run);
    CHECK(c3.s == 2);
    CHECK(c3.boundary == BoundaryRow::two_not_in_Mtilde);
    CHECK(expected_pattern(c3, 3) == IVec{0, 3, 4});

    // and the forced segments really sit inside k''
    IVec kpp = compute_k_double_prime(ps, k);
    CHECK(kpp == IVec{4, 5, 0, 3});
    for (const auto& c : cs) {
        auto pos = pattern_positions(ps, c);
        auto seg = expected_pattern(c, 3);
        REQUIRE(pos.size() == seg.size());
        for (std::size_t j = 0; j < pos.size(); ++j)
            CHECK(kpp[ps.global_index(pos[j])] == seg[j]);
    }
}

TEST_CASE("expected segments for the three shapes") {
    MPrimeCase a{{0, 0}, MPrimeKind::one_run, 1, 0, BoundaryRow::one_not_in_M, {0, 1}};
    CHECK(expected_pattern(a, 3) == IVec{0, 4});
    MPrimeCase b{{0, 0}, MPrimeKind::two_then_one, 2, 0, BoundaryRow::plain, {0, 2}};
    CHECK(expected_pattern(b, 3) == IVec{1, 4, 4});
    MPrimeCase c{{0, 0}, MPrimeKind::two_then_two, 1, 1, BoundaryRow::two_in_Mtilde, {0, 2}};
    CHECK(expected_pattern(c, 3) == IVec{0, 4, 5});
    MPrimeCase d{{0, 0}, MPrimeKind::one_run, 3, 0, BoundaryRow::one_in_M, {0, 3}};
    CHECK(expected_pattern(d, 5) == IVec{0, 5, 5, 5});
}

TEST_CASE("greedy stripping") {
    PlaceStructure ps(3, {2});
    StripTrace tr = greedy_strip(ps, make_weight(ps, {0, 4}, {7, -2}));
    REQUIRE(tr.steps.size() == 1);
    CHECK(tr.steps[0].tau == EmbeddingIndex{0, 0});
    CHECK(tr.final.k == IVec{1, 1});
    CHECK(tr.final.l == IVec{7, -2}); // stripping never touches l
    CHECK(tr.stripped == std::map<EmbeddingIndex, int>{{{0, 0}, 1}});

    StripTrace none = greedy_strip(ps, make_weight(ps, {2, 2}));
    CHECK(none.steps.empty());
    CHECK(none.final.k == IVec{2, 2});

    // a weight no companion ever produces: stripping spins, the budget stops it
    CHECK_THROWS_AS(greedy_strip(ps, make_weight(ps, {-5, 4})), invariant_error);
}

TEST_CASE("greedy strip of the degree-eight k'' needs a second stage") {
    PlaceStructure ps(3, {8});
    IVec k{1, 1, 3, 2, 2, 1, 2, 2};
    IVec kpp = compute_k_double_prime(ps, k);
    EmbeddingSet first = strippable_set(ps, kpp);
    CHECK(first == EmbeddingSet{{0, 0}, {0, 3}, {0, 5}});
    CHECK(first.count({0, 6}) == 0); // tau_6 only becomes strippable later

    StripTrace tr = greedy_strip(ps, make_weight(ps, kpp));
    REQUIRE(tr.steps.size() == 4);
    CHECK(tr.steps[0].tau == EmbeddingIndex{0, 0});
    CHECK(tr.steps[1].tau == EmbeddingIndex{0, 3});
    CHECK(tr.steps[2].tau == EmbeddingIndex{0, 5});
    CHECK(tr.steps[3].tau == EmbeddingIndex{0, 6});
    CHECK(tr.final.k == k);
}

TEST_CASE("roundtrip on the worked families") {
    for (std::int64_t p : {3, 5, 7}) {
        PlaceStructure ps(p, {3});
        for (std::int64_t k2 = 2; k2 <= p; ++k2) {
            RoundtripResult r = verify_roundtrip(ps, {1, 1, k2});
            CHECK(r.ok);
            CHECK(r.detail.empty());
            if (k2 >= 3) {
                CHECK(r.k_double_prime == IVec{0, p + 1, k2});
                CHECK(r.m_prime == EmbeddingSet{{0, 0}});
            } else {
                CHECK(r.k_double_prime == IVec{0, p, p + 2});
                CHECK(r.m_prime == EmbeddingSet{{0, 0}, {0, 1}});
            }
        }
    }
    for (std::int64_t p : {3, 5}) {
        PlaceStructure ps8(p, {8});
        for (std::int64_t k2 = 3; k2 <= p; ++k2) {
            RoundtripResult r = verify_roundtrip(ps8, {1, 1, k2, 2, 2, 1, 2, 2});
            CHECK(r.ok);
            CHECK(r.m_prime == EmbeddingSet{{0, 0}, {0, 3}, {0, 5}, {0, 6}});
        }
        PlaceStructure ps4(p, {4});
        RoundtripResult r = verify_roundtrip(ps4, {3, 1, 3, 1});
        CHECK(r.ok);
        CHECK(r.m_prime.empty());
        CHECK(r.trace.steps.empty());
    }
    // regular weights round-trip vacuously
    PlaceStructure ps(3, {2});
    RoundtripResult r = verify_roundtrip(ps, {2, 2});
    CHECK(r.ok);
    CHECK(r.k_double_prime == IVec{2, 2});
}

TEST_CASE("roundtrip rejects weights outside the recovery hypotheses") {
    PlaceStructure ps2(3, {2});
    CHECK(inapplicable_condition(ps2, {0, 2}) == "positivity");
    CHECK(inapplicable_condition(ps2, {1, 1}) == "all-ones");
    PlaceStructure ps3(3, {3});
    CHECK(inapplicable_condition(ps3, {1, 1, 4}) == "cone");
    CHECK(inapplicable_condition(ps3, {4, 1, 2}) == "k_mu_mod_p");
    CHECK(inapplicable_condition(ps3, {1, 1, 3}).empty());
}

TEST_CASE("strip order does not change the outcome on admissible weights") {
    auto lowest = [](const EmbeddingSet& s) { return *s.begin(); };
    auto highest = [](const EmbeddingSet& s) { return *s.rbegin(); };
    for (const auto& degs : {std::vector<int>{3}, {2, 1}}) {
        PlaceStructure ps(3, degs);
        odometer(ps.total_degree(), 1, 3, [&](const IVec& k) {
            RoundtripResult r;
            try {
                r = verify_roundtrip(ps, k);
            } catch (const inapplicable_error&) {
                return;
            }
            REQUIRE(r.ok);
            Weight w = make_weight(ps, r.k_double_prime);
            StripTrace a = strip_by(ps, w, lowest);
            StripTrace b = strip_by(ps, w, highest);
            CHECK(a.final == b.final);
            CHECK(a.stripped == b.stripped);
        });
    }
}
