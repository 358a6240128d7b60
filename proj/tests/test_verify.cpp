#include <doctest.h>

#include "support/oracles.hpp"

using namespace msrkit;

namespace {

Mat transpose(const Mat& m) {
    Mat out(m.field_ptr(), m.cols(), m.rows());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) out.at(c, r) = m.at(r, c);
    return out;
}

} // namespace

TEST_CASE("independence") {
    auto set = build_r2(2, Field::make(3, 1));
    for (bool b : check_independence(set)) CHECK(b);

    SUBCASE("an eigenspace is invariant, not independent") {
        auto set3 = build_r3(1, Field::make(7, 1));
        ASSet broken = set3;
        broken.pairs[0].s = set3.pairs[1].s; // S_Z' is an eigenspace of A_Z
        auto flags = check_independence(broken);
        CHECK_FALSE(flags[0]);
        CHECK(flags[1]);
        CHECK(flags[2]);
    }

    SUBCASE("r = 1 degenerate set with the full space") {
        auto f = Field::make(5, 1);
        Mat full(f, 2, 2);
        full.at(0, 0) = 1;
        full.at(1, 1) = 1;
        ASSet deg{f, 1, 2, 0, "degenerate", {ASPair{Mat::identity(f, 2), Subspace::span(full), {0, 0}}},
                  std::nullopt, {}};
        CHECK(check_independence(deg) == std::vector<bool>{true});
    }
}

TEST_CASE("invariance") {
    auto set = build_r3(1, Field::make(7, 1));
    auto flags = check_invariance(set);
    CHECK(flags.size() == 6);
    for (const auto& [i, j, ok] : flags) CHECK(ok);

    SUBCASE("a random subspace is not invariant") {
        ASSet broken = set;
        Mat gen(broken.field, 1, 3);
        gen.at(0, 0) = 1;
        gen.at(0, 1) = 2;
        gen.at(0, 2) = 3;
        broken.pairs[0].s = Subspace::span(gen);
        bool some_false = false;
        for (const auto& [i, j, ok] : check_invariance(broken)) some_false = some_false || !ok;
        CHECK(some_false);
    }

    SUBCASE("a singleton set is vacuously invariant") {
        ASSet single = set;
        single.pairs.resize(1);
        CHECK(check_invariance(single).empty());
    }
}

TEST_CASE("nonsingular condition list") {
    SUBCASE("two parities") {
        auto set = build_r2(2, Field::make(3, 1));
        auto checks = check_nonsingular(set);
        CHECK(checks.size() == 4 + 6); // inverses + pairwise differences
        for (const auto& c : checks) CHECK(c.ok);
    }
    SUBCASE("the long three-parity set has 6 + 6 + 4 block checks") {
        ASSet set = build_r3plus_auto(1);
        auto checks = check_nonsingular(set);
        int block2 = 0, block2sq = 0, block3 = 0;
        for (const auto& c : checks) {
            CHECK(c.ok);
            block2 += c.desc.rfind("block2(", 0) == 0;
            block2sq += c.desc.rfind("block2sq(", 0) == 0;
            block3 += c.desc.rfind("block3(", 0) == 0;
        }
        CHECK(block2 == 6);
        CHECK(block2sq == 6);
        CHECK(block3 == 4);
    }
    SUBCASE("a duplicated matrix fails") {
        auto set = build_r3(1, Field::make(7, 1));
        set.pairs[1].a = set.pairs[0].a;
        CHECK_FALSE(oracle::nonsingular_verdict(check_nonsingular(set)));
    }
    SUBCASE("unsupported r") {
        ASSet set;
        set.field = Field::make(5, 1);
        set.r = 4;
        set.ell = 4;
        CHECK_THROWS_AS(check_nonsingular(set), UnsupportedR);
    }
}

TEST_CASE("access optimality flags") {
    auto set = build_r2(3, Field::make(2, 2));
    for (bool b : check_access_optimal(set)) CHECK(b);

    ASSet lng = build_r3plus_auto(1);
    auto flags = check_access_optimal(lng);
    for (size_t i = 0; i < flags.size(); ++i) CHECK(flags[i] == (lng.pairs[i].label.color != 3));
}

TEST_CASE("intersection audit") {
    SUBCASE("two parities at m = 4") {
        auto set = build_r2(4, Field::make(5, 1));
        for (const auto& a : audit_intersections(set)) {
            if (a.cross_matching) {
                CHECK(a.dim == 4);
                CHECK(a.ok);
            } else {
                CHECK(a.dim == 0); // disjoint color sets of one matching
            }
        }
    }
    SUBCASE("three parities at m = 2") {
        auto set = build_r3(2, Field::make(13, 1));
        for (const auto& a : audit_intersections(set))
            if (a.cross_matching) CHECK(a.dim == 1);
    }
    SUBCASE("no pair of a passing set exceeds the ell/r^2 bound") {
        for (ASSet set : {build_r2(4, Field::make(5, 1)), build_r3(2, Field::make(13, 1)),
                          build_r3plus_auto(2)}) {
            const int bound = set.ell / (set.r * set.r);
            for (const auto& a : audit_intersections(set)) CHECK(a.dim <= bound);
        }
    }
}

TEST_CASE("full certificate") {
    auto set = build_r2(2, Field::make(3, 1));
    Certificate cert = full_certificate(set);
    CHECK(cert.passed);

    SUBCASE("a transposed matrix is caught and located") {
        ASSet broken = set;
        broken.pairs[2].a = transpose(broken.pairs[2].a);
        Certificate bad = full_certificate(broken);
        CHECK_FALSE(bad.passed);
        bool located = false;
        for (const auto& [i, j, ok] : bad.invariance) located = located || (!ok && (i == 2 || j == 2));
        for (size_t i = 0; i < bad.independence.size(); ++i)
            located = located || (!bad.independence[i] && i == 2);
        CHECK(located);
    }
}

TEST_CASE("condition list is oracle-equivalent to brute-force block enumeration") {
    std::vector<ASSet> sets;
    sets.push_back(build_r2(2, Field::make(3, 1)));
    sets.push_back(build_r2(3, Field::make(2, 2)));
    sets.push_back(build_r3(1, Field::make(7, 1)));
    sets.push_back(build_r3(2, Field::make(13, 1)));
    sets.push_back(build_r3plus_auto(1));
    for (const auto& set : sets) {
        REQUIRE(set.ell <= 9);
        CHECK(oracle::nonsingular_verdict(check_nonsingular(set)) ==
              oracle::all_block_submatrices_invertible(set));
        CHECK(oracle::all_block_submatrices_invertible(set));
        ASSet broken = set;
        broken.pairs[0].a = broken.pairs[1].a;
        CHECK(oracle::nonsingular_verdict(check_nonsingular(broken)) ==
              oracle::all_block_submatrices_invertible(broken));
        CHECK_FALSE(oracle::all_block_submatrices_invertible(broken));
    }
}
