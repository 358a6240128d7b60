#include <doctest.h>

#include "support/oracles.hpp"

using namespace msrkit;

// Every admissible field size must work, not just the smallest one per m.

TEST_CASE("two-parity builds verify at every admissible q") {
    int built = 0;
    for (int m = 2; m <= 5; ++m)
        for (int q = m + 1; q <= 32; ++q) {
            if (!constructible_q(q)) continue;
            ASSet set = build_r2(m, field_for_q(q)); // throws on any verification failure
            CHECK(set.k() == 2 * m);
            ++built;
        }
    CHECK(built >= 40);
}

TEST_CASE("three-parity builds verify at every admissible q") {
    int built = 0;
    for (int m = 1; m <= 3; ++m)
        for (int q = 4; q <= 64; ++q) {
            if (!constructible_q(q) || (q - 1) % 3 != 0) continue;
            if (prime_power(q)->first == 3) continue;
            bool odd = q % 2 == 1;
            if ((odd && q < 6 * m + 1) || (!odd && q < 3 * m + 1)) continue;
            ASSet set = build_r3(m, field_for_q(q));
            CHECK(set.k() == 3 * m);
            ++built;
        }
    CHECK(built >= 20);
}

TEST_CASE("long three-parity builds verify at every scanned q with a valid h") {
    int built = 0;
    for (int q = 44; q <= 100; ++q) {
        if (!constructible_q(q) || (q - 1) % 3 != 0) continue;
        if (prime_power(q)->first == 3) continue;
        try {
            ASSet set = build_r3plus(1, field_for_q(q));
            CHECK(set.k() == 4);
            ++built;
        } catch (const NoValidH&) {
            // a field without a usable ratio is skipped by the scan as well
        }
    }
    CHECK(built >= 5);
}
