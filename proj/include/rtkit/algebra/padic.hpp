#ifndef RTKIT_ALGEBRA_PADIC_HPP
#define RTKIT_ALGEBRA_PADIC_HPP

#include <algorithm>
#include <cstdint>
#include <string>

#include <gmpxx.h>

#include <rtkit/algebra/fq.hpp>
#include <rtkit/errors.hpp>

namespace rtkit
{

// A residue modulo p^N that remembers N. Arithmetic never claims more
// precision than its inputs justify.
class PadicApprox
{
public:
    PadicApprox(std::uint64_t p, int precision, std::uint64_t residue = 0) : p_(p), n_(precision)
    {
        if (precision < 1) throw precision_error("PadicApprox: precision must be at least 1", 0);
        if (!detail::is_prime(p)) throw domain_error("PadicApprox: modulus base must be prime");
        // keep p^N * p^N representable in 128 bits
        std::uint64_t m = 1;
        for (int i = 0; i < precision; ++i) {
            if (m > (std::uint64_t{1} << 62) / p) throw precision_error("PadicApprox: p^N exceeds 62 bits", i);
            m *= p;
        }
        mod_ = m;
        r_ = residue % mod_;
    }

    static PadicApprox from_int(std::uint64_t p, int precision, long long v)
    {
        PadicApprox x(p, precision);
        const auto m = static_cast<long long>(x.mod_);
        x.r_ = static_cast<std::uint64_t>(((v % m) + m) % m);
        return x;
    }

    // Reduction of a p-integral rational.
    static PadicApprox from_rational(std::uint64_t p, int precision, const mpq_class &q)
    {
        PadicApprox x(p, precision);
        const mpz_class m(std::to_string(x.mod_));
        mpz_class den = q.get_den();
        if (mpz_divisible_ui_p(den.get_mpz_t(), p)) throw domain_error("PadicApprox::from_rational: value is not p-integral");
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
        mpz_class r = q.get_num() * inv;
        mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
        x.r_ = std::stoull(r.get_str());
        return x;
    }

    std::uint64_t prime() const noexcept { return p_; }
    int precision() const noexcept { return n_; }
    std::uint64_t residue() const noexcept { return r_; }
    std::uint64_t modulus() const noexcept { return mod_; }

    // p-adic valuation of the residue, capped at the precision.
    int valuation() const noexcept
    {
        if (r_ == 0) return n_;
        int v = 0;
        for (std::uint64_t t = r_; t % p_ == 0; t /= p_) ++v;
        return v;
    }

    bool is_unit() const noexcept { return r_ % p_ != 0; }

    PadicApprox with_precision(int precision) const
    {
        if (precision > n_) throw precision_error("PadicApprox: cannot raise precision", n_);
        return PadicApprox(p_, precision, r_);
    }

    friend PadicApprox operator+(const PadicApprox &a, const PadicApprox &b)
    {
        auto [x, y] = common(a, b);
        return PadicApprox(x.p_, x.n_, (x.r_ + y.r_) % x.mod_);
    }

    friend PadicApprox operator-(const PadicApprox &a, const PadicApprox &b)
    {
        auto [x, y] = common(a, b);
        return PadicApprox(x.p_, x.n_, (x.r_ + x.mod_ - y.r_) % x.mod_);
    }

    PadicApprox operator-() const { return PadicApprox(p_, n_, (mod_ - r_) % mod_); }

    friend PadicApprox operator*(const PadicApprox &a, const PadicApprox &b)
    {
        auto [x, y] = common(a, b);
        const unsigned __int128 prod = static_cast<unsigned __int128>(x.r_) * y.r_;
        return PadicApprox(x.p_, x.n_, static_cast<std::uint64_t>(prod % x.mod_));
    }

    PadicApprox pow(std::uint64_t e) const { return PadicApprox(p_, n_, detail::powmod(r_, e, mod_)); }

    // Division by an integer prime to p; precision is kept.
    PadicApprox div_unit(long long d) const
    {
        const auto pp = static_cast<long long>(p_);
        if (((d % pp) + pp) % pp == 0) throw domain_error("PadicApprox::div_unit: divisor is a multiple of p");
        const auto m = static_cast<long long>(mod_);
        const auto dd = static_cast<std::uint64_t>(((d % m) + m) % m);
        // phi(p^N) = p^(N-1) (p-1)
        const std::uint64_t inv = detail::powmod(dd, mod_ / p_ * (p_ - 1) - 1, mod_);
        return *this * PadicApprox(p_, n_, inv);
    }

    // Exact division by p; precision drops by one.
    PadicApprox div_p() const
    {
        if (r_ % p_ != 0) throw domain_error("PadicApprox::div_p: residue is not divisible by p");
        if (n_ < 2) throw precision_error("PadicApprox::div_p: precision exhausted", 0);
        return PadicApprox(p_, n_ - 1, r_ / p_);
    }

    // Equality modulo p^min(N_a, N_b).
    friend bool congruent(const PadicApprox &a, const PadicApprox &b)
    {
        auto [x, y] = common(a, b);
        return x.r_ == y.r_;
    }

    std::string to_string() const
    {
        return std::to_string(r_) + " (mod " + std::to_string(p_) + "^" + std::to_string(n_) + ")";
    }

private:
    static std::pair<PadicApprox, PadicApprox> common(const PadicApprox &a, const PadicApprox &b)
    {
        if (a.p_ != b.p_) throw domain_error("PadicApprox: mismatched primes");
        const int n = std::min(a.n_, b.n_);
        return {a.n_ == n ? a : a.with_precision(n), b.n_ == n ? b : b.with_precision(n)};
    }

    std::uint64_t p_;
    int n_;
    std::uint64_t mod_ = 1;
    std::uint64_t r_ = 0;
};

} // namespace rtkit

#endif
