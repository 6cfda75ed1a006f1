#include <doctest.h>

#include <vector>

#include "tadscan/compare.hpp"

using namespace tadscan;

namespace {

std::vector<BoundaryCall> calls(std::initializer_list<int32_t> positions, double p = 0.01) {
    std::vector<BoundaryCall> out;
    for (int32_t pos : positions) out.push_back({pos, p});
    return out;
}

int64_t count_class(const std::vector<BoundaryMatch>& ms, MatchClass c) {
    int64_t n = 0;
    for (const auto& m : ms)
        if (m.classification == c) ++n;
    return n;
}

} // namespace

TEST_SUITE("compare") {

TEST_CASE("chi-squared(4) survival closed-form values") {
    CHECK(fisher_combine(1.0, 1.0) == doctest::Approx(1.0));
    // frozen from exp(-x/2)*(1+x/2) evaluated independently
    CHECK(fisher_combine(0.5, 0.5) == doctest::Approx(0.5965735903).epsilon(1e-8));
    CHECK(fisher_combine(0.01, 0.01) == doctest::Approx(1.0210340372e-3).epsilon(1e-8));
    CHECK_THROWS(fisher_combine(0.0, 0.5));
    CHECK_THROWS(fisher_combine(0.5, 1.5));
    CHECK_THROWS(fisher_combine(-0.1, 0.5));
}

TEST_CASE("combination is monotone in each argument") {
    double prev = -1.0;
    for (int i = 1; i <= 100; ++i) {
        const double p = i / 100.0;
        const double f = fisher_combine(p, 0.37);
        CHECK(f > prev);
        prev = f;
    }
    // combining with an uninformative p-value never gives a smaller statistic
    for (double p : {0.001, 0.2, 0.9}) {
        CHECK(fisher_combine(p, 1.0) >= fisher_combine(p, 0.5));
    }
}

TEST_CASE("identical lists match fully at distance zero") {
    const auto a = calls({10, 40, 90}, 0.004);
    const auto ms = match_and_classify(a, a, 2, 0.01);
    REQUIRE(ms.size() == 3);
    for (const auto& m : ms) {
        REQUIRE(m.pos_a.has_value());
        REQUIRE(m.pos_b.has_value());
        CHECK(*m.pos_a == *m.pos_b);
        CHECK(*m.p_fisher == doctest::Approx(fisher_combine(0.004, 0.004)));
        CHECK(m.classification == MatchClass::conserved);
    }
}

TEST_CASE("distance beyond tolerance leaves both sides changed") {
    const auto ms = match_and_classify(calls({100}), calls({103}), 2, 0.01);
    REQUIRE(ms.size() == 2);
    CHECK(count_class(ms, MatchClass::changed_in_a) == 1);
    CHECK(count_class(ms, MatchClass::changed_in_b) == 1);
}

TEST_CASE("distance ties break to the smaller a-position") {
    const auto ms = match_and_classify(calls({100, 104}), calls({102}), 2, 0.01);
    REQUIRE(ms.size() == 2);
    bool saw_match = false, saw_changed = false;
    for (const auto& m : ms) {
        if (m.pos_a && m.pos_b) {
            CHECK(*m.pos_a == 100);
            CHECK(*m.pos_b == 102);
            saw_match = true;
        } else if (m.pos_a) {
            CHECK(*m.pos_a == 104);
            CHECK(m.classification == MatchClass::changed_in_a);
            saw_changed = true;
        }
    }
    CHECK(saw_match);
    CHECK(saw_changed);
}

TEST_CASE("matched pairs failing the conserved threshold are matched_weak") {
    const auto ms = match_and_classify(calls({50}, 0.05), calls({50}, 0.05), 2, 0.01);
    REQUIRE(ms.size() == 1);
    CHECK(ms[0].classification == MatchClass::matched_weak);
    CHECK(*ms[0].p_fisher > 0.01);
}

TEST_CASE("half-overlapping sets match the hand enumeration") {
    // tol 2: (10,11) and (80,81) match; 30 vs 36 is 6 apart
    const auto ms = match_and_classify(calls({10, 30, 55, 80}), calls({11, 36, 81, 95, 120}), 2, 0.01);
    CHECK(count_class(ms, MatchClass::conserved) == 2);
    CHECK(count_class(ms, MatchClass::changed_in_a) == 2);
    CHECK(count_class(ms, MatchClass::changed_in_b) == 3);
}

TEST_CASE("swapping inputs swaps the changed classes and keeps the match count") {
    const auto a = calls({10, 30, 55, 80});
    const auto b = calls({11, 36, 81, 95, 120});
    const auto ab = match_and_classify(a, b, 2, 0.01);
    const auto ba = match_and_classify(b, a, 2, 0.01);
    const auto matched = [&](const std::vector<BoundaryMatch>& ms) {
        return count_class(ms, MatchClass::conserved) + count_class(ms, MatchClass::matched_weak);
    };
    CHECK(matched(ab) == matched(ba));
    CHECK(count_class(ab, MatchClass::changed_in_a) == count_class(ba, MatchClass::changed_in_b));
    CHECK(count_class(ab, MatchClass::changed_in_b) == count_class(ba, MatchClass::changed_in_a));
}

TEST_CASE("match count is monotone in the tolerance") {
    const auto a = calls({10, 30, 55, 80, 100});
    const auto b = calls({13, 27, 61, 86, 101});
    int64_t prev = -1;
    for (int32_t tol = 0; tol <= 8; ++tol) {
        const auto ms = match_and_classify(a, b, tol, 0.01);
        const int64_t matched =
            count_class(ms, MatchClass::conserved) + count_class(ms, MatchClass::matched_weak);
        CHECK(matched >= prev);
        prev = matched;
    }
}

} // TEST_SUITE
