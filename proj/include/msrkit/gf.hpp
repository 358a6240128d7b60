#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <vector>

#include "msrkit/errors.hpp"

namespace msrkit {

using felt_t = std::uint16_t;

inline bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// GF(p^k) with a fixed canonical element encoding: the element whose
/// coefficient vector is (c_0,...,c_{k-1}) (constant term first) is the
/// integer sum c_i * p^i. Prime fields are the k = 1 case. All arithmetic
/// is table-driven; elements are plain integers in [0, q).
class Field {
public:
    /// Builds GF(p) for prime p, or GF(p^k) with a modulus from the
    /// built-in table. Throws NotPrime / NoModulusAvailable.
    static std::shared_ptr<const Field> make(int p, int k);

    int p() const { return p_; }
    int k() const { return k_; }
    int q() const { return q_; }
    int characteristic() const { return p_; }
    /// Modulus coefficients, constant term first, length k+1; empty for k = 1.
    const std::vector<int>& modulus() const { return modulus_; }

    felt_t add(felt_t a, felt_t b) const { return add_[size_t(a) * q_ + b]; }
    felt_t sub(felt_t a, felt_t b) const { return add_[size_t(a) * q_ + neg_[b]]; }
    felt_t mul(felt_t a, felt_t b) const { return mul_[size_t(a) * q_ + b]; }
    felt_t neg(felt_t a) const { return neg_[a]; }
    felt_t inv(felt_t a) const {
        if (a == 0) throw DivisionByZero("inverse of zero");
        return inv_[a];
    }
    felt_t pow(felt_t a, std::uint64_t e) const {
        felt_t r = 1, base = a;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }
    /// Image of an ordinary integer under repeated addition of 1.
    felt_t from_int(std::uint64_t n) const { return felt_t(n % p_); }

    /// Structural equality; element encodings are interchangeable iff true.
    bool same(const Field& o) const {
        return p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_;
    }

private:
    Field() = default;
    void build_tables();

    int p_ = 0, k_ = 0, q_ = 0;
    std::vector<int> modulus_;
    std::vector<felt_t> add_, mul_, neg_, inv_;
};

using FieldPtr = std::shared_ptr<const Field>;

namespace detail {

// (p, k) -> modulus, constant term first. The table is fixed; every
// constructed field is bit-reproducible.
inline const std::vector<std::pair<std::pair<int, int>, std::vector<int>>>& modulus_table() {
    static const std::vector<std::pair<std::pair<int, int>, std::vector<int>>> t = {
        {{2, 2}, {1, 1, 1}},          // x^2 + x + 1
        {{2, 3}, {1, 1, 0, 1}},       // x^3 + x + 1
        {{2, 4}, {1, 1, 0, 0, 1}},    // x^4 + x + 1
        {{2, 6}, {1, 1, 0, 0, 0, 0, 1}}, // x^6 + x + 1
    };
    return t;
}

inline std::vector<int> poly_mul_mod(const std::vector<int>& a, const std::vector<int>& b,
                                     const std::vector<int>& modulus, int p) {
    std::vector<int> prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            prod[i + j] = int((prod[i + j] + std::int64_t(a[i]) * b[j]) % p);
    int deg = int(modulus.size()) - 1;
    for (int i = int(prod.size()) - 1; i >= deg; --i) {
        int c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (int j = 0; j < deg; ++j)
            prod[i - deg + j] = ((prod[i - deg + j] - c * modulus[j]) % p + p * p) % p;
    }
    prod.resize(deg);
    return prod;
}

inline int poly_eval(const std::vector<int>& poly, int x, int p) {
    int r = 0;
    for (int i = int(poly.size()) - 1; i >= 0; --i) r = (r * x + poly[i]) % p;
    return r;
}

// Root check for degree <= 3, trial division by lower-degree monic
// polynomials otherwise.
inline bool poly_irreducible(const std::vector<int>& poly, int p) {
    int deg = int(poly.size()) - 1;
    if (deg <= 3) {
        for (int x = 0; x < p; ++x)
            if (poly_eval(poly, x, p) == 0) return false;
        return deg >= 1;
    }
    for (int d = 1; d <= deg / 2; ++d) {
        std::int64_t count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (std::int64_t idx = 0; idx < count; ++idx) {
            std::vector<int> div(d + 1, 0);
            std::int64_t v = idx;
            for (int i = 0; i < d; ++i) { div[i] = int(v % p); v /= p; }
            div[d] = 1;
            // long division remainder
            std::vector<int> rem = poly;
            for (int i = int(rem.size()) - 1; i >= d; --i) {
                int c = rem[i];
                if (c == 0) continue;
                for (int j = 0; j <= d; ++j)
                    rem[i - d + j] = ((rem[i - d + j] - c * div[j]) % p + p * p) % p;
            }
            bool zero = true;
            for (int i = 0; i < d; ++i) zero = zero && rem[i] == 0;
            if (zero) return false;
        }
    }
    return true;
}

} // namespace detail

inline std::shared_ptr<const Field> Field::make(int p, int k) {
    if (!is_prime(p)) throw NotPrime("p = " + std::to_string(p) + " is not prime");
    if (k < 1) throw Error("extension degree must be >= 1");
    std::int64_t q = 1;
    for (int i = 0; i < k; ++i) {
        q *= p;
        if (q > 1024) throw Error("field size above the supported cap of 1024");
    }
    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = p;
    f->k_ = k;
    f->q_ = int(q);
    if (k > 1) {
        const auto& table = detail::modulus_table();
        auto it = std::find_if(table.begin(), table.end(),
                               [&](const auto& e) { return e.first == std::make_pair(p, k); });
        if (it == table.end())
            throw NoModulusAvailable("no built-in modulus for GF(" + std::to_string(p) + "^" +
                                     std::to_string(k) + ")");
        f->modulus_ = it->second;
        if (!detail::poly_irreducible(f->modulus_, p))
            throw Error("built-in modulus is reducible");
    }
    f->build_tables();
    return f;
}

inline void Field::build_tables() {
    const int q = q_;
    add_.resize(size_t(q) * q);
    mul_.resize(size_t(q) * q);
    neg_.resize(q);
    inv_.assign(q, 0);
    if (k_ == 1) {
        for (int a = 0; a < q; ++a) {
            neg_[a] = felt_t((q - a) % q);
            for (int b = 0; b < q; ++b) {
                add_[size_t(a) * q + b] = felt_t((a + b) % q);
                mul_[size_t(a) * q + b] = felt_t((std::int64_t(a) * b) % q);
            }
        }
    } else {
        auto digits = [&](int v) {
            std::vector<int> d(k_);
            for (int i = 0; i < k_; ++i) { d[i] = v % p_; v /= p_; }
            return d;
        };
        auto undigits = [&](const std::vector<int>& d) {
            int v = 0;
            for (int i = k_ - 1; i >= 0; --i) v = v * p_ + d[i];
            return v;
        };
        for (int a = 0; a < q; ++a) {
            auto da = digits(a);
            std::vector<int> dn(k_);
            for (int i = 0; i < k_; ++i) dn[i] = (p_ - da[i]) % p_;
            neg_[a] = felt_t(undigits(dn));
            for (int b = 0; b < q; ++b) {
                auto db = digits(b);
                std::vector<int> ds(k_);
                for (int i = 0; i < k_; ++i) ds[i] = (da[i] + db[i]) % p_;
                add_[size_t(a) * q + b] = felt_t(undigits(ds));
                mul_[size_t(a) * q + b] =
                    felt_t(undigits(detail::poly_mul_mod(da, db, modulus_, p_)));
            }
        }
    }
    // a^(q-2) = a^(-1) on the nonzero elements
    for (int a = 1; a < q; ++a) {
        felt_t r = 1, base = felt_t(a);
        int e = q - 2;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        inv_[a] = r;
    }
}

/// Element of a field, carrying its field handle. Scalar API type; bulk
/// linear algebra stores raw values instead.
class Felt {
public:
    Felt() = default;
    Felt(FieldPtr f, felt_t v) : f_(std::move(f)), v_(v) {}

    felt_t value() const { return v_; }
    const FieldPtr& field() const { return f_; }
    bool is_zero() const { return v_ == 0; }

    friend Felt operator+(const Felt& a, const Felt& b) { return {a.fld(b), a.f_->add(a.v_, b.v_)}; }
    friend Felt operator-(const Felt& a, const Felt& b) { return {a.fld(b), a.f_->sub(a.v_, b.v_)}; }
    friend Felt operator*(const Felt& a, const Felt& b) { return {a.fld(b), a.f_->mul(a.v_, b.v_)}; }
    friend Felt operator/(const Felt& a, const Felt& b) {
        return {a.fld(b), a.f_->mul(a.v_, b.f_->inv(b.v_))};
    }
    Felt operator-() const { return {f_, f_->neg(v_)}; }
    Felt inv() const { return {f_, f_->inv(v_)}; }
    Felt pow(std::uint64_t e) const { return {f_, f_->pow(v_, e)}; }

    friend bool operator==(const Felt& a, const Felt& b) {
        return a.v_ == b.v_ && a.f_->same(*b.f_);
    }
    friend bool operator!=(const Felt& a, const Felt& b) { return !(a == b); }

private:
    FieldPtr fld(const Felt& o) const {
        if (!f_->same(*o.f_)) throw Error("operands belong to different fields");
        return f_;
    }
    FieldPtr f_;
    felt_t v_ = 0;
};

struct CubeRoots {
    Felt one, g1, g2;
};

/// The three order-3 roots of unity (1, g1, g2) with 1 + g1 + g2 = 0 and
/// g2 = g1^2. g1 is the first element in canonical order with x^3 = 1, x != 1.
inline CubeRoots cube_roots_of_unity(const FieldPtr& f) {
    if ((f->q() - 1) % 3 != 0)
        throw NoOrder3Roots("3 does not divide q - 1 for q = " + std::to_string(f->q()));
    for (int v = 2; v < f->q(); ++v) {
        if (f->pow(felt_t(v), 3) == 1) {
            felt_t g1 = felt_t(v);
            felt_t g2 = f->mul(g1, g1);
            if (f->add(1, f->add(g1, g2)) != 0) throw Error("root-of-unity sum is not zero");
            return {Felt(f, 1), Felt(f, g1), Felt(f, g2)};
        }
    }
    throw NoOrder3Roots("no element of order 3 found");
}

/// F_q^* in canonical order: 1, 2, ..., q-1.
inline std::vector<Felt> enumerate_nonzero(const FieldPtr& f) {
    std::vector<Felt> out;
    out.reserve(f->q() - 1);
    for (int v = 1; v < f->q(); ++v) out.emplace_back(f, felt_t(v));
    return out;
}

} // namespace msrkit
