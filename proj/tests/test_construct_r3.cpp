#include <doctest.h>

#include "support/oracles.hpp"

using namespace msrkit;

namespace {

Mat combo(const FieldPtr& f, int ell, std::vector<std::pair<int, felt_t>> terms) {
    Mat r(f, 1, ell);
    for (auto [idx, coeff] : terms) r.at(0, idx) = f->add(r.at(0, idx), coeff);
    return r;
}

} // namespace

TEST_CASE("companion-block matrix") {
    auto f = Field::make(7, 1);
    Mat a = matrix_a_r3(f, 3);
    Mat want(f, 3, 3);
    want.at(0, 2) = 1;
    want.at(1, 0) = 1;
    want.at(2, 1) = 1;
    CHECK(a == want);
    CHECK_THROWS_AS(matrix_a_r3(f, 6), BadLength);

    // (1,1,1) is fixed; (1, g1, g2) picks up the factor g1
    auto roots = cube_roots_of_unity(f);
    Mat ones = combo(f, 3, {{0, 1}, {1, 1}, {2, 1}});
    CHECK(mat_mul(ones, a) == ones);
    Mat eig = combo(f, 3, {{0, 1}, {1, roots.g1.value()}, {2, roots.g2.value()}});
    CHECK(mat_mul(eig, a) == scalar_mul(roots.g1, eig));
}

TEST_CASE("per-edge change-matrix block") {
    auto f = Field::make(7, 1);
    auto roots = cube_roots_of_unity(f);
    Felt one(f, 1);
    SUBCASE("explicit rows at alpha = beta = 1 over GF(7)") {
        Mat blk = block_n(f, roots, one, one, unit_row(f, 3, 0), unit_row(f, 3, 1), unit_row(f, 3, 2));
        CHECK(blk.row(0) == std::vector<felt_t>{1, 0, 0});
        CHECK(blk.row(1) == std::vector<felt_t>{1, 5, 1}); // u - g1/(g1-1) v + 1/(g1-1) w
        CHECK(blk.row(2) == std::vector<felt_t>{1, 1, 5});
    }
    SUBCASE("row space is preserved") {
        std::mt19937_64 rng(5);
        for (int t = 0; t < 10; ++t) {
            Mat rows = oracle::random_mat(f, 3, 6, rng);
            if (Subspace::span(rows).dim() != 3) continue;
            Mat blk = block_n(f, roots, Felt(f, 2), Felt(f, 3), mat_mul(unit_row(f, 3, 0), rows),
                              mat_mul(unit_row(f, 3, 1), rows), mat_mul(unit_row(f, 3, 2), rows));
            CHECK(Subspace::span(blk) == Subspace::span(rows));
        }
    }
    SUBCASE("zero constants are rejected") {
        CHECK_THROWS_AS(block_n(f, roots, Felt(f, 0), one, unit_row(f, 3, 0), unit_row(f, 3, 1),
                                unit_row(f, 3, 2)),
                        ZeroConstant);
    }
}

TEST_CASE("characteristic-dependent constants") {
    auto f4 = Field::make(2, 2);
    auto c4 = constants_for_char(f4);
    CHECK(c4.alpha.value() == 1);
    CHECK(c4.alpha_p.value() == 2);  // omega
    CHECK(c4.alpha_pp.value() == 2);
    CHECK(c4.beta.value() == 1);
    CHECK(c4.beta_p.value() == 3);   // omega^2
    CHECK(c4.beta_pp.value() == 1);

    auto f7 = Field::make(7, 1);
    auto c7 = constants_for_char(f7);
    CHECK(c7.alpha.value() == 4);
    CHECK(c7.alpha_p.value() == 1);
    CHECK(c7.alpha_pp.value() == 1);
    CHECK(c7.beta.value() == 1);
    CHECK(c7.beta_p.value() == 2);
    CHECK(c7.beta_pp.value() == 1);

    auto f13 = Field::make(13, 1);
    auto c13 = constants_for_char(f13);
    for (const Felt& v : {c13.alpha, c13.alpha_p, c13.alpha_pp, c13.beta, c13.beta_p, c13.beta_pp})
        CHECK(v.value() == 1);

    // products never hit the field image of 9
    for (auto f : {f4, f7, f13}) {
        auto c = constants_for_char(f);
        felt_t nine = f->from_int(9);
        CHECK(f->mul(c.alpha_pp.value(), c.beta.value()) != nine);
        CHECK(f->mul(c.alpha_p.value(), c.beta_pp.value()) != nine);
        CHECK(f->mul(c.alpha.value(), c.beta_p.value()) != nine);
    }
}

TEST_CASE("one matching gives a verified triple with the stated eigenstructure") {
    auto f = Field::make(7, 1);
    auto roots = cube_roots_of_unity(f);
    auto c = constants_for_char(f);
    auto z = matchings_r3(1)[0];
    const felt_t lambda = 1;
    auto triple = triple_from_matching(f, z, lambda, c, 0);

    ASSet set{f, 3, 3, 1, kVariantR3, {triple[0], triple[1], triple[2]}, std::nullopt, {}};
    CHECK(full_certificate(set).passed);

    // S_Z'' is the g1*lambda eigenspace of A_Z, S_Z' the g2*lambda one
    const Mat& az = triple[0].a;
    for (int i = 0; i < z.edges(); ++i) {
        Mat zpp = unit_row(f, 3, z.colors[2][i]);
        CHECK(mat_mul(zpp, az) == scalar_mul(f->mul(roots.g1.value(), lambda), zpp));
        Mat zp = unit_row(f, 3, z.colors[1][i]);
        CHECK(mat_mul(zp, az) == scalar_mul(f->mul(roots.g2.value(), lambda), zp));
    }

    CHECK_THROWS_AS(triple_from_matching(f, z, 0, c, 0), ZeroLambda);
}

TEST_CASE("sixth-power-distinct lambda scan") {
    CHECK(assign_lambdas_r3(Field::make(7, 1), 1) == std::vector<felt_t>{1});
    CHECK(assign_lambdas_r3(Field::make(13, 1), 2) == std::vector<felt_t>{1, 2});
    CHECK_THROWS_AS(assign_lambdas_r3(Field::make(7, 1), 2), FieldTooSmall);

    SUBCASE("scan agrees with a direct sixth-power sieve") {
        auto f = Field::make(19, 1);
        auto ls = assign_lambdas_r3(f, 3);
        REQUIRE(ls.size() == 3);
        for (size_t i = 0; i < ls.size(); ++i)
            for (size_t j = i + 1; j < ls.size(); ++j)
                CHECK(f->pow(ls[i], 6) != f->pow(ls[j], 6));
        // each kept element is the canonical-least not colliding with earlier picks
        for (size_t i = 0; i < ls.size(); ++i)
            for (felt_t v = i ? felt_t(ls[i - 1] + 1) : felt_t(1); v < ls[i]; ++v) {
                bool collides = false;
                for (size_t j = 0; j < i; ++j) collides = collides || f->pow(v, 6) == f->pow(ls[j], 6);
                CHECK(collides);
            }
    }
}

TEST_CASE("build_r3 produces verified access-optimal sets over both parities") {
    for (auto [m, p, k] : {std::tuple{1, 7, 1}, {1, 2, 2}, {2, 13, 1}}) {
        auto f = Field::make(p, k);
        ASSet set = build_r3(m, f);
        CHECK(set.k() == 3 * m);
        Certificate cert = full_certificate(set);
        CHECK(cert.passed);
        for (bool b : cert.access_optimal) CHECK(b);
    }
    CHECK_THROWS_AS(build_r3(1, Field::make(3, 1)), BadCharacteristic);
    CHECK_THROWS_AS(build_r3(2, Field::make(7, 1)), FieldTooSmall);
}

TEST_CASE("access-optimal matrices from distinct matchings commute") {
    ASSet set = build_r3(2, Field::make(13, 1));
    for (int i = 0; i < set.k(); ++i)
        for (int j = i + 1; j < set.k(); ++j) {
            bool same = set.pairs[i].label.matching == set.pairs[j].label.matching;
            if (!same)
                CHECK(mat_mul(set.pairs[i].a, set.pairs[j].a) ==
                      mat_mul(set.pairs[j].a, set.pairs[i].a));
        }
}
