#pragma once

#include <optional>
#include <string>
#include <vector>

#include "msrkit/linalg.hpp"

namespace msrkit {

/// Where a pair came from: matching index and color slot within it.
/// Color r (i.e. 3 in the long three-parity family) marks the edge-sum slot.
struct PairLabel {
    int matching = 0;
    int color = 0;
    friend bool operator==(const PairLabel& a, const PairLabel& b) {
        return a.matching == b.matching && a.color == b.color;
    }
};

/// One (encoding matrix, repair subspace) pair.
struct ASPair {
    Mat a;
    Subspace s;
    PairLabel label;
};

inline constexpr const char* kVariantR2 = "r2-access-optimal";
inline constexpr const char* kVariantR3 = "r3-access-optimal";
inline constexpr const char* kVariantR3Long = "r3-long";

struct ASSet {
    FieldPtr field;
    int r = 0;
    int ell = 0;
    int m = 0;
    std::string variant;
    std::vector<ASPair> pairs;
    // r3-long extras
    std::optional<felt_t> h;
    std::vector<felt_t> lambda_base;

    int k() const { return int(pairs.size()); }
    int q() const { return field->q(); }
};

} // namespace msrkit
