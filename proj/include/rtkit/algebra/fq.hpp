#ifndef RTKIT_ALGEBRA_FQ_HPP
#define RTKIT_ALGEBRA_FQ_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <rtkit/errors.hpp>

namespace rtkit
{

namespace detail
{

inline bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m)
{
    unsigned __int128 r = 1 % m, x = b % m;
    while (e) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(r);
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e)
{
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

// Dense polynomials over F_p, low degree first, no trailing zeros.
using fp_poly = std::vector<std::uint32_t>;

inline void trim(fp_poly &a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline fp_poly poly_mod(fp_poly a, const fp_poly &m, std::uint32_t p)
{
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint64_t inv_lead = powmod(m.back(), p - 2, p);
    while (a.size() > dm) {
        const std::uint64_t q = a.back() * inv_lead % p;
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i)
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - q) * m[i]) % p);
        trim(a);
    }
    return a;
}

inline fp_poly poly_mulmod(const fp_poly &a, const fp_poly &b, const fp_poly &m, std::uint32_t p)
{
    if (a.empty() || b.empty()) return {};
    fp_poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    return poly_mod(std::move(r), m, p);
}

inline fp_poly poly_gcd(fp_poly a, fp_poly b, std::uint32_t p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        fp_poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline bool has_root(const fp_poly &m, std::uint32_t p)
{
    for (std::uint32_t x = 0; x < p; ++x) {
        std::uint64_t v = 0;
        for (std::size_t i = m.size(); i-- > 0;) v = (v * x + m[i]) % p;
        if (v == 0) return true;
    }
    return false;
}

inline bool is_irreducible(const fp_poly &m, std::uint32_t p)
{
    const std::size_t f = m.size() - 1;
    if (f == 1) return true;
    if (f <= 3) return !has_root(m, p);
    // Rabin: no factor of degree <= f/2 iff gcd(x^(p^i) - x, m) = 1 for all i <= f/2.
    fp_poly xp{0, 1};
    for (std::size_t i = 1; i <= f / 2; ++i) {
        fp_poly acc{1};
        fp_poly base = xp;
        for (std::uint32_t e = p; e; e >>= 1) {
            if (e & 1) acc = poly_mulmod(acc, base, m, p);
            base = poly_mulmod(base, base, m, p);
        }
        xp = acc;
        fp_poly diff = xp;
        diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(diff);
        if (diff.empty()) return false;
        if (poly_gcd(diff, m, p).size() != 1) return false;
    }
    return true;
}

} // namespace detail

inline constexpr unsigned kMaxFieldDegree = 8;

// Element of F_q = F_p[x]/(modulus), coefficients c[0..f-1]; unused slots are zero.
struct FqElem {
    std::array<std::uint32_t, kMaxFieldDegree> c{};

    friend bool operator==(const FqElem &, const FqElem &) = default;
    friend auto operator<=>(const FqElem &, const FqElem &) = default;
};

class FqField
{
public:
    FqField() = default;

    // Lexicographically least monic irreducible of degree f, ordering on (c_0, ..., c_{f-1}).
    static FqField make(std::uint32_t p, unsigned f)
    {
        if (p == 2) throw domain_error("fq_make: characteristic must be odd");
        if (!detail::is_prime(p)) throw domain_error("fq_make: " + std::to_string(p) + " is not prime");
        if (f < 1 || f > kMaxFieldDegree) throw domain_error("fq_make: extension degree out of range");
        if (detail::ipow(p, f) > (std::uint64_t{1} << 31)) throw domain_error("fq_make: field too large");

        const std::uint64_t count = detail::ipow(p, f);
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            detail::fp_poly m(f + 1, 0);
            m[f] = 1;
            // c_0 is the most significant digit of the enumeration.
            std::uint64_t t = idx;
            for (unsigned i = f; i-- > 0;) {
                m[i] = static_cast<std::uint32_t>(t % p);
                t /= p;
            }
            if (detail::is_irreducible(m, p)) {
                FqField F;
                F.p_ = p;
                F.f_ = f;
                F.modulus_ = std::move(m);
                return F;
            }
        }
        throw internal_error("fq_make: no irreducible polynomial found");
    }

    std::uint32_t characteristic() const noexcept { return p_; }
    unsigned degree() const noexcept { return f_; }
    std::uint64_t order() const noexcept { return detail::ipow(p_, f_); }
    std::span<const std::uint32_t> modulus() const noexcept { return modulus_; }

    friend bool operator==(const FqField &a, const FqField &b)
    {
        return a.p_ == b.p_ && a.f_ == b.f_ && a.modulus_ == b.modulus_;
    }

    FqElem zero() const { return {}; }
    FqElem one() const { return from_int(1); }

    FqElem from_int(long long v) const
    {
        FqElem x;
        const long long pp = p_;
        x.c[0] = static_cast<std::uint32_t>(((v % pp) + pp) % pp);
        return x;
    }

    FqElem from_coeffs(std::span<const std::uint32_t> cs) const
    {
        if (cs.size() > f_) throw domain_error("FqField::from_coeffs: too many coefficients");
        FqElem x;
        for (std::size_t i = 0; i < cs.size(); ++i) x.c[i] = cs[i] % p_;
        return x;
    }

    // Bijection [0, q) -> F_q, little-endian base-p digits.
    FqElem element(std::uint64_t index) const
    {
        FqElem x;
        for (unsigned i = 0; i < f_; ++i) {
            x.c[i] = static_cast<std::uint32_t>(index % p_);
            index /= p_;
        }
        return x;
    }

    std::uint64_t index_of(const FqElem &x) const
    {
        std::uint64_t idx = 0;
        for (unsigned i = f_; i-- > 0;) idx = idx * p_ + x.c[i];
        return idx;
    }

    std::vector<FqElem> elements() const
    {
        std::vector<FqElem> out;
        const std::uint64_t q = order();
        out.reserve(q);
        for (std::uint64_t i = 0; i < q; ++i) out.push_back(element(i));
        return out;
    }

    std::vector<FqElem> units() const
    {
        std::vector<FqElem> out;
        const std::uint64_t q = order();
        for (std::uint64_t i = 1; i < q; ++i) out.push_back(element(i));
        return out;
    }

    bool is_zero(const FqElem &x) const noexcept { return x == FqElem{}; }

    bool in_prime_field(const FqElem &x) const noexcept
    {
        for (unsigned i = 1; i < f_; ++i)
            if (x.c[i] != 0) return false;
        return true;
    }

    FqElem add(const FqElem &a, const FqElem &b) const noexcept
    {
        FqElem r;
        for (unsigned i = 0; i < f_; ++i) r.c[i] = (a.c[i] + b.c[i]) % p_;
        return r;
    }

    FqElem sub(const FqElem &a, const FqElem &b) const noexcept
    {
        FqElem r;
        for (unsigned i = 0; i < f_; ++i) r.c[i] = (a.c[i] + p_ - b.c[i]) % p_;
        return r;
    }

    FqElem neg(const FqElem &a) const noexcept { return sub(FqElem{}, a); }

    FqElem scale(const FqElem &a, std::uint32_t s) const noexcept
    {
        FqElem r;
        for (unsigned i = 0; i < f_; ++i) r.c[i] = static_cast<std::uint32_t>(std::uint64_t{a.c[i]} * (s % p_) % p_);
        return r;
    }

    FqElem mul(const FqElem &a, const FqElem &b) const noexcept
    {
        std::array<std::uint64_t, 2 * kMaxFieldDegree> t{};
        for (unsigned i = 0; i < f_; ++i) {
            if (a.c[i] == 0) continue;
            for (unsigned j = 0; j < f_; ++j) t[i + j] = (t[i + j] + std::uint64_t{a.c[i]} * b.c[j]) % p_;
        }
        // modulus is monic: x^f = -(m_0 + ... + m_{f-1} x^{f-1})
        for (unsigned d = 2 * f_ - 1; d-- > f_;) {
            const std::uint64_t lead = t[d];
            if (lead == 0) continue;
            t[d] = 0;
            for (unsigned i = 0; i < f_; ++i)
                t[d - f_ + i] = (t[d - f_ + i] + (p_ - lead) * modulus_[i]) % p_;
        }
        FqElem r;
        for (unsigned i = 0; i < f_; ++i) r.c[i] = static_cast<std::uint32_t>(t[i]);
        return r;
    }

    FqElem pow(FqElem b, std::uint64_t e) const noexcept
    {
        FqElem r = one();
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    FqElem inv(const FqElem &a) const
    {
        if (is_zero(a)) throw domain_error("FqField::inv: zero has no inverse");
        return pow(a, order() - 2);
    }

    FqElem div(const FqElem &a, const FqElem &b) const { return mul(a, inv(b)); }

    FqElem frobenius(const FqElem &a) const noexcept { return pow(a, p_); }

    FqElem frobenius_inverse(const FqElem &a) const noexcept
    {
        FqElem r = a;
        for (unsigned i = 1; i < f_; ++i) r = frobenius(r);
        return r;
    }

    // x = c^(p-1) for some unit c  <=>  x^((q-1)/gcd(p-1,q-1)) = 1.
    bool is_pm1_power(const FqElem &x) const
    {
        if (is_zero(x)) throw domain_error("is_pm1_power: argument must be nonzero");
        const std::uint64_t q = order();
        const std::uint64_t g = std::gcd<std::uint64_t>(p_ - 1, q - 1);
        return pow(x, (q - 1) / g) == one();
    }

    // All c != 0 with c^(p-1) = x.
    std::vector<FqElem> pm1_roots(const FqElem &x) const
    {
        std::vector<FqElem> out;
        for (const FqElem &c : units())
            if (pow(c, p_ - 1) == x) out.push_back(c);
        return out;
    }

    std::string to_string(const FqElem &x) const
    {
        if (f_ == 1) return std::to_string(x.c[0]);
        std::ostringstream os;
        bool first = true;
        for (unsigned i = f_; i-- > 0;) {
            if (x.c[i] == 0) continue;
            if (!first) os << "+";
            first = false;
            if (i == 0 || x.c[i] != 1) os << x.c[i];
            if (i >= 1) os << "t";
            if (i >= 2) os << "^" << i;
        }
        if (first) os << "0";
        return os.str();
    }

private:
    std::uint32_t p_ = 3;
    unsigned f_ = 1;
    std::vector<std::uint32_t> modulus_{0, 1};
};

} // namespace rtkit

#endif
