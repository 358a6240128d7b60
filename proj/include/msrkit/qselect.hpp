#pragma once

#include <algorithm>
#include <optional>

#include "msrkit/construct_r2.hpp"
#include "msrkit/construct_r3.hpp"
#include "msrkit/construct_r3plus.hpp"

namespace msrkit {

inline constexpr int kMaxFieldSize = 1024;

/// Decomposes q as p^k for prime p, or returns nothing.
inline std::optional<std::pair<int, int>> prime_power(int q) {
    if (q < 2) return std::nullopt;
    int p = 2;
    while (p * p <= q && q % p != 0) ++p;
    if (p * p > q) p = q;
    int k = 0, n = q;
    while (n % p == 0) { n /= p; ++k; }
    if (n != 1) return std::nullopt;
    return std::make_pair(p, k);
}

/// True when make_field can actually produce GF(q): q prime, or a prime
/// power covered by the built-in modulus table.
inline bool constructible_q(int q) {
    auto pp = prime_power(q);
    if (!pp) return false;
    auto [p, k] = *pp;
    if (k == 1) return true;
    const auto& table = detail::modulus_table();
    return std::any_of(table.begin(), table.end(),
                       [&](const auto& e) { return e.first == std::make_pair(p, k); });
}

inline FieldPtr field_for_q(int q) {
    auto pp = prime_power(q);
    if (!pp) throw Error("q = " + std::to_string(q) + " is not a prime power");
    return Field::make(pp->first, pp->second);
}

enum class Parity { Any, Odd, Even };

namespace detail {

template <typename Admissible>
inline int next_q(int from, Admissible admissible) {
    for (int q = from; q <= kMaxFieldSize; ++q)
        if (constructible_q(q) && admissible(q)) return q;
    return -1;
}

} // namespace detail

/// Two-parity set over the smallest admissible q >= m+1 (or the forced q),
/// escalating past verification failures up to the field-size cap.
inline ASSet build_r2_auto(int m, std::optional<int> forced_q = std::nullopt) {
    if (forced_q) return build_r2(m, field_for_q(*forced_q));
    int q = m + 1;
    while (true) {
        q = detail::next_q(q, [](int) { return true; });
        if (q < 0) throw FieldTooSmall("no admissible q <= 1024 for the two-parity set");
        try {
            return build_r2(m, field_for_q(q));
        } catch (const VerificationFailed&) {
        } catch (const FieldTooSmall&) {
        }
        ++q;
    }
}

namespace detail {

inline bool r3_admissible(int q, int m, Parity parity) {
    auto pp = prime_power(q);
    if (!pp || pp->first == 3 || (q - 1) % 3 != 0) return false;
    if (q % 2 == 1) return parity != Parity::Even && q >= 6 * m + 1;
    return parity != Parity::Odd && q >= 3 * m + 1;
}

} // namespace detail

/// Access-optimal three-parity set over the smallest admissible q of the
/// requested parity class (odd: 3|q-1, q >= 6m+1; even: 3|q-1, q >= 3m+1).
inline ASSet build_r3_auto(int m, Parity parity = Parity::Any,
                           std::optional<int> forced_q = std::nullopt) {
    if (forced_q) return build_r3(m, field_for_q(*forced_q));
    int q = 2;
    while (true) {
        q = detail::next_q(q, [&](int c) { return detail::r3_admissible(c, m, parity); });
        if (q < 0) throw FieldTooSmall("no admissible q <= 1024 for the three-parity set");
        try {
            return build_r3(m, field_for_q(q));
        } catch (const VerificationFailed&) {
        } catch (const FieldTooSmall&) {
        }
        ++q;
    }
}

/// Long three-parity set: scans q > 42m+1 with 3 | q-1 and characteristic
/// != 3, advancing past candidates without a valid h or lambda family.
inline ASSet build_r3plus_auto(int m, std::optional<int> forced_q = std::nullopt) {
    if (forced_q) return build_r3plus(m, field_for_q(*forced_q));
    int q = 42 * m + 2;
    while (true) {
        q = detail::next_q(q, [](int c) {
            auto pp = prime_power(c);
            return pp && pp->first != 3 && (c - 1) % 3 == 0;
        });
        if (q < 0) throw NoValidH("no admissible q <= 1024 for the long three-parity set");
        try {
            return build_r3plus(m, field_for_q(q));
        } catch (const NoValidH&) {
        } catch (const Infeasible&) {
        } catch (const VerificationFailed&) {
        }
        ++q;
    }
}

} // namespace msrkit
