#pragma once

#include <vector>

#include "msrkit/errors.hpp"

namespace msrkit {

/// Perfect colored matching of the complete r-uniform hypergraph on ell
/// vertices. colors[c] lists the vertices of color c in edge order, so
/// edge j is { colors[0][j], ..., colors[r-1][j] }. Vertex i stands for
/// the unit vector e_i; its digit string (base r, digit 0 leftmost and
/// most significant) is the string form used by the cube constructions.
struct Matching {
    int r = 0;
    int ell = 0;
    std::vector<std::vector<int>> colors;

    std::vector<int> edge(int j) const {
        std::vector<int> e(r);
        for (int c = 0; c < r; ++c) e[c] = colors[c][j];
        return e;
    }
    int edges() const { return ell / r; }
};

inline bool matching_is_valid(const Matching& m) {
    if (m.r < 1 || m.ell <= 0 || m.ell % m.r != 0) return false;
    if (int(m.colors.size()) != m.r) return false;
    std::vector<char> seen(m.ell, 0);
    for (const auto& color : m.colors) {
        if (int(color.size()) != m.ell / m.r) return false;
        for (int v : color) {
            if (v < 0 || v >= m.ell || seen[v]) return false;
            seen[v] = 1;
        }
    }
    return true;
}

/// All m-bit strings with the given (index, bit) constraints, ordered
/// lexicographically; bit 0 is the leftmost (most significant) position.
/// Returned as vertex indices.
inline std::vector<int> boolean_cube(int m, const std::vector<std::pair<int, int>>& constraints) {
    std::vector<int> fixed(m, -1);
    for (auto [idx, bit] : constraints) {
        if (idx < 0 || idx >= m) throw BadIndex("cube constraint index out of range");
        if (bit != 0 && bit != 1) throw BadIndex("cube constraint bit must be 0 or 1");
        if (fixed[idx] != -1) throw BadIndex("duplicate cube constraint index");
        fixed[idx] = bit;
    }
    std::vector<int> out;
    const int total = 1 << m;
    out.reserve(total >> constraints.size());
    for (int v = 0; v < total; ++v) {
        bool ok = true;
        for (int i = 0; i < m && ok; ++i)
            if (fixed[i] != -1 && ((v >> (m - 1 - i)) & 1) != fixed[i]) ok = false;
        if (ok) out.push_back(v);
    }
    return out;
}

/// All length-m ternary strings with digit i equal to b, ordered
/// lexicographically; digit 0 is the leftmost (most significant) position.
inline std::vector<int> ternary_cube(int m, int i, int b) {
    if (i < 0 || i >= m) throw BadIndex("ternary cube index out of range");
    if (b < 0 || b > 2) throw BadIndex("ternary cube value must be in {0,1,2}");
    int total = 1;
    for (int t = 0; t < m; ++t) total *= 3;
    int place = 1;
    for (int t = 0; t < m - 1 - i; ++t) place *= 3;
    std::vector<int> out;
    out.reserve(total / 3);
    for (int v = 0; v < total; ++v)
        if ((v / place) % 3 == b) out.push_back(v);
    return out;
}

namespace detail {
inline std::vector<int> concat(std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}
} // namespace detail

/// The m matchings of the two-parity construction on 2^m vertices. The two
/// endpoints of every edge of matching i differ exactly in bit i; matchings
/// 2t and 2t+1 share the bit pair (2t, 2t+1), and an odd trailing matching
/// splits on the last bit alone.
inline std::vector<Matching> matchings_r2(int m) {
    if (m < 2) throw TooSmall("two-parity construction needs m >= 2");
    const int ell = 1 << m;
    std::vector<Matching> out;
    out.reserve(m);
    for (int t = 0; 2 * t + 1 < m; ++t) {
        const int a = 2 * t; // matchings 2t and 2t+1 split on the bit pair (2t, 2t+1)
        Matching even{2, ell, {detail::concat(boolean_cube(m, {{a, 0}, {a + 1, 0}}),
                                              boolean_cube(m, {{a, 0}, {a + 1, 1}})),
                               detail::concat(boolean_cube(m, {{a, 1}, {a + 1, 0}}),
                                              boolean_cube(m, {{a, 1}, {a + 1, 1}}))}};
        Matching odd{2, ell, {detail::concat(boolean_cube(m, {{a, 0}, {a + 1, 0}}),
                                             boolean_cube(m, {{a, 1}, {a + 1, 0}})),
                              detail::concat(boolean_cube(m, {{a, 0}, {a + 1, 1}}),
                                             boolean_cube(m, {{a, 1}, {a + 1, 1}}))}};
        out.push_back(std::move(even));
        out.push_back(std::move(odd));
    }
    if (m % 2 == 1)
        out.push_back(Matching{2, ell, {boolean_cube(m, {{m - 1, 0}}), boolean_cube(m, {{m - 1, 1}})}});
    return out;
}

/// The m matchings of the three-parity constructions on 3^m vertices:
/// matching i has color sets C(i,0), C(i,1), C(i,2).
inline std::vector<Matching> matchings_r3(int m) {
    if (m < 1) throw TooSmall("three-parity construction needs m >= 1");
    int ell = 1;
    for (int t = 0; t < m; ++t) ell *= 3;
    std::vector<Matching> out;
    out.reserve(m);
    for (int i = 0; i < m; ++i)
        out.push_back(Matching{3, ell, {ternary_cube(m, i, 0), ternary_cube(m, i, 1), ternary_cube(m, i, 2)}});
    return out;
}

/// True iff every edge of x lies inside a single color set of y and vice
/// versa. A matching never pairs with itself: its own edges are rainbow.
inline bool pairing_condition(const Matching& x, const Matching& y) {
    if (x.r != y.r || x.ell != y.ell) throw DimensionMismatch("pairing_condition shape mismatch");
    auto monochromatic = [](const Matching& a, const Matching& b) {
        std::vector<int> color_of(b.ell, -1);
        for (int c = 0; c < b.r; ++c)
            for (int v : b.colors[c]) color_of[v] = c;
        for (int j = 0; j < a.edges(); ++j) {
            auto e = a.edge(j);
            for (int c = 1; c < a.r; ++c)
                if (color_of[e[c]] != color_of[e[0]]) return false;
        }
        return true;
    };
    return monochromatic(x, y) && monochromatic(y, x);
}

} // namespace msrkit
