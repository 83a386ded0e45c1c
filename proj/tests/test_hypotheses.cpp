#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>

#include <hmfw/hypotheses.hpp>

using namespace hmfw;

namespace {

const ConditionReport& cond(const HypothesisReport& r, const std::string& id) {
    for (const auto& c : r.conditions)
        if (c.id == id) return c;
    throw std::runtime_error("no condition " + id);
}

const SetupCheck& setup(const HypothesisReport& r, const std::string& name) {
    for (const auto& s : r.setup)
        if (s.name == name) return s;
    throw std::runtime_error("no setup check " + name);
}

} // namespace

TEST_CASE("verdict names") {
    CHECK(std::string(to_string(Verdict::holds)) == "holds");
    CHECK(std::string(to_string(Verdict::fails)) == "fails");
    CHECK(std::string(to_string(Verdict::needs_rho)) == "undecidable_needs_rho");
    CHECK(std::string(to_string(Verdict::not_evaluated)) == "not_evaluated");
    CHECK(std::string(to_string(TheoremId::companion)) == "companion");
    CHECK(std::string(to_string(TheoremId::regularization)) == "regularization");
}

TEST_CASE("cubic weight satisfies the regularization hypotheses") {
    PlaceStructure ps(3, {3});
    auto rep = check_hypotheses(ps, {1, 1, 3}, TheoremId::regularization);
    CHECK(setup(rep, "irregular").ok);
    CHECK(cond(rep, "1").verdict == Verdict::holds);
    CHECK(cond(rep, "2").verdict == Verdict::holds);
    CHECK(cond(rep, "3").verdict == Verdict::holds);
    CHECK(cond(rep, "4").verdict == Verdict::holds);
    CHECK(cond(rep, "4").detail == "no fully regular place");
    CHECK(cond(rep, "4").shapes.empty());
}

TEST_CASE("cubic weight under the companion theorem") {
    PlaceStructure ps(3, {3});
    auto rep = check_hypotheses(ps, {1, 1, 3}, TheoremId::companion);
    CHECK(setup(rep, "k_at_least_one").ok);
    CHECK(setup(rep, "irregular").ok);
    CHECK(setup(rep, "minimal_cone").ok);
    const auto& c3 = cond(rep, "3");
    CHECK(c3.verdict == Verdict::needs_rho);
    REQUIRE(c3.shapes.size() == 1);
    CHECK(c3.shapes[0].context == CharacterShape::Context::theta_companion);
    CHECK(c3.shapes[0].mu == EmbeddingIndex{0, 2});
    CHECK(c3.shapes[0].chi1.a == IVec{0, 0, 1});
    CHECK(c3.shapes[0].chi2.a == IVec{-2, -3, -2});
    CHECK(cond(rep, "4").verdict == Verdict::holds);
    CHECK(cond(rep, "5").verdict == Verdict::holds);
}

TEST_CASE("the two-one pattern defeats regularization") {
    PlaceStructure ps(3, {2});
    auto rep = check_hypotheses(ps, {2, 1}, TheoremId::regularization);
    CHECK(cond(rep, "1").verdict == Verdict::holds);
    CHECK(cond(rep, "2").verdict == Verdict::fails);
    CHECK(cond(rep, "2").detail == "witness v0:t0");
    CHECK(cond(rep, "3").verdict == Verdict::holds);
}

TEST_CASE("k_mu = 1 mod p defeats the companion theorem even outside the cone") {
    PlaceStructure ps(3, {3});
    auto rep = check_hypotheses(ps, {1, 1, 4}, TheoremId::companion);
    CHECK(setup(rep, "k_at_least_one").ok);
    CHECK_FALSE(setup(rep, "minimal_cone").ok);
    // conditions are still decidable from k alone, so they get real verdicts
    CHECK(cond(rep, "3").verdict == Verdict::needs_rho);
    CHECK(cond(rep, "3").shapes.size() == 1);
    CHECK(cond(rep, "4").verdict == Verdict::holds);
    const auto& c5 = cond(rep, "5");
    CHECK(c5.verdict == Verdict::fails);
    CHECK(c5.detail.find("v0:t2") != std::string::npos);
    CHECK(c5.detail.find("4") != std::string::npos);
}

TEST_CASE("all-ones place fails both theorems' combinatorial conditions") {
    PlaceStructure ps(5, {2, 1});
    auto comp = check_hypotheses(ps, {1, 1, 3}, TheoremId::companion);
    CHECK(cond(comp, "4").verdict == Verdict::fails);
    CHECK(cond(comp, "4").detail.find("place 0") != std::string::npos);
    auto reg = check_hypotheses(ps, {1, 1, 3}, TheoremId::regularization);
    CHECK(cond(reg, "3").verdict == Verdict::fails);
}

TEST_CASE("regular weights flunk the setup but the conditions still report") {
    PlaceStructure ps(3, {2});
    auto comp = check_hypotheses(ps, {2, 3}, TheoremId::companion);
    CHECK_FALSE(setup(comp, "irregular").ok);
    CHECK(cond(comp, "3").verdict == Verdict::holds);
    CHECK(cond(comp, "3").detail == "M~ is empty; nothing to avoid");
    CHECK(cond(comp, "5").verdict == Verdict::holds);

    auto reg = check_hypotheses(ps, {2, 3}, TheoremId::regularization);
    CHECK_FALSE(setup(reg, "irregular").ok);
    const auto& c4 = cond(reg, "4");
    CHECK(c4.verdict == Verdict::needs_rho);
    REQUIRE(c4.shapes.size() == 1);
    CHECK(c4.shapes[0].context == CharacterShape::Context::regular_place);
    CHECK(c4.shapes[0].place == 0);
    CHECK_FALSE(c4.shapes[0].mu.has_value());
    CHECK(c4.shapes[0].chi1.a == IVec{0, 0});
    CHECK(c4.shapes[0].chi2.a == IVec{-1, -2});
}

TEST_CASE("nonpositive k short-circuits what depends on M~") {
    PlaceStructure ps(3, {2});
    auto comp = check_hypotheses(ps, {0, 3}, TheoremId::companion);
    CHECK_FALSE(setup(comp, "k_at_least_one").ok);
    CHECK(cond(comp, "3").verdict == Verdict::not_evaluated);
    CHECK(cond(comp, "5").verdict == Verdict::not_evaluated);
    CHECK(cond(comp, "4").verdict == Verdict::holds); // no all-ones place, decidable anyway

    auto reg = check_hypotheses(ps, {0, 3}, TheoremId::regularization);
    CHECK(cond(reg, "1").verdict == Verdict::fails);
    CHECK(cond(reg, "1").detail.find("v0:t0") != std::string::npos);
}

TEST_CASE("fully regular places produce exactly one shape each") {
    PlaceStructure ps(3, {2, 2});
    auto reg = check_hypotheses(ps, {1, 3, 2, 2}, TheoremId::regularization);
    const auto& c4 = cond(reg, "4");
    CHECK(c4.verdict == Verdict::needs_rho);
    REQUIRE(c4.shapes.size() == 1);
    CHECK(c4.shapes[0].place == 1);
    CHECK(c4.shapes[0].chi2.a == IVec{-1, -1});

    auto comp = check_hypotheses(ps, {1, 3, 2, 2}, TheoremId::companion);
    const auto& c3 = cond(comp, "3");
    CHECK(c3.verdict == Verdict::needs_rho);
    REQUIRE(c3.shapes.size() == 1);
    CHECK(c3.shapes[0].mu == EmbeddingIndex{0, 1});
}
