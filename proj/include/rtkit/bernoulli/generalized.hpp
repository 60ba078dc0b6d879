#ifndef RTKIT_BERNOULLI_GENERALIZED_HPP
#define RTKIT_BERNOULLI_GENERALIZED_HPP

#include <cstdint>
#include <vector>

#include <rtkit/algebra/padic.hpp>
#include <rtkit/bernoulli/bernoulli.hpp>
#include <rtkit/errors.hpp>

namespace rtkit
{

inline constexpr int kMaxGeneralizedPrecision = 4;

namespace detail
{

inline void require_odd_prime(std::uint64_t p, const char *who)
{
    if (p < 3 || !is_prime(p)) throw domain_error(std::string(who) + ": p must be an odd prime");
}

inline long long mod_floor(long long a, long long m) { return ((a % m) + m) % m; }

// Largest N such that p^N still fits a PadicApprox.
inline int max_padic_precision(std::uint64_t p)
{
    int n = 0;
    std::uint64_t m = 1;
    while (m <= (std::uint64_t{1} << 62) / p) {
        m *= p;
        ++n;
    }
    return n;
}

} // namespace detail

// Teichmuller lift omega(a) mod p^N, computed as a^(p^(N-1)).
inline PadicApprox teichmuller(long long a, std::uint64_t p, int precision)
{
    detail::require_odd_prime(p, "teichmuller");
    const long long ar = detail::mod_floor(a, static_cast<long long>(p));
    if (ar == 0) throw domain_error("teichmuller: argument divisible by p");
    PadicApprox x = PadicApprox::from_int(p, precision, ar);
    std::uint64_t e = 1;
    for (int i = 1; i < precision; ++i) e *= p;
    return x.pow(e);
}

// Leopoldt's B_{n, omega^j} mod p^N for the conductor-p character omega^j, summing
// a = 1..p-1 (the a = 0 and a = p terms vanish since the character does):
//
//   B_{n,chi} = sum_a chi(a) sum_i C(n,i) B_i a^(n-i) p^(i-1),
//
// where B_i uses the Bernoulli-polynomial convention B_1 = -1/2. Every term is
// scaled by p so it becomes p-integral, the sum is taken at guard precision N+2,
// and one factor of p is divided back out.
inline PadicApprox gen_bernoulli_omega(unsigned n, long long j, std::uint64_t p, int precision)
{
    detail::require_odd_prime(p, "gen_bernoulli_omega");
    if (n < 1) throw domain_error("gen_bernoulli_omega: n must be at least 1");
    if (n > kMaxBernoulliIndex) throw domain_error("gen_bernoulli_omega: n too large");
    if (precision < 1 || precision > kMaxGeneralizedPrecision)
        throw precision_error("gen_bernoulli_omega: precision must lie in [1, 4]", kMaxGeneralizedPrecision);
    const int guard = precision + 2;
    const int reachable = detail::max_padic_precision(p) - 2;
    if (reachable < precision)
        throw precision_error("gen_bernoulli_omega: p^(N+2) exceeds the residue width", std::max(reachable, 0));

    const long long jj = detail::mod_floor(j, static_cast<long long>(p) - 1);

    // C(n,i) B_i p^i, exact then reduced; v_p(B_i) >= -1 makes each p-integral.
    std::vector<PadicApprox> scaled;
    scaled.reserve(n + 1);
    BigInt binom = 1;
    BigInt ppow = 1;
    for (unsigned i = 0; i <= n; ++i) {
        const BigRational term = BigRational(binom * ppow) * bernoulli_minus(i);
        scaled.push_back(PadicApprox::from_rational(p, guard, term));
        binom = binom * (n - i) / (i + 1);
        ppow *= static_cast<unsigned long>(p);
    }

    PadicApprox total(p, guard);
    for (std::uint64_t a = 1; a < p; ++a) {
        const PadicApprox chi = teichmuller(static_cast<long long>(a), p, guard).pow(static_cast<std::uint64_t>(jj));
        const PadicApprox av = PadicApprox::from_int(p, guard, static_cast<long long>(a));
        // Horner in a: sum_i scaled_i a^(n-i)
        PadicApprox inner = scaled[0];
        for (unsigned i = 1; i <= n; ++i) inner = inner * av + scaled[i];
        total = total + chi * inner;
    }
    if (!(total.residue() % p == 0))
        throw domain_error("gen_bernoulli_omega: B_{n,omega^j} is not p-integral for these (n, j)");
    return total.div_p().with_precision(precision);
}

// Checks (1/n) B_{n, omega^(k-n)} == (1/k) B_k mod p.
inline bool lang_congruence_check(std::uint64_t p, unsigned k, unsigned n)
{
    detail::require_odd_prime(p, "lang_congruence_check");
    if (n < 1) throw domain_error("lang_congruence_check: n must be at least 1");
    if (k < 2 || k % 2 != 0 || k >= p - 1) throw domain_error("lang_congruence_check: need even 2 <= k < p-1");

    int vn = 0;
    unsigned long unit = n;
    while (unit % p == 0) {
        unit /= static_cast<unsigned long>(p);
        ++vn;
    }
    PadicApprox lhs = gen_bernoulli_omega(n, static_cast<long long>(k) - static_cast<long long>(n), p, 1 + vn);
    if (lhs.valuation() < vn) return false; // (1/n) B is not even p-integral
    for (int i = 0; i < vn; ++i) lhs = lhs.div_p();
    lhs = lhs.div_unit(static_cast<long long>(unit));

    const PadicApprox rhs = PadicApprox::from_rational(p, 1, bernoulli_exact(k) / BigRational(k));
    return congruent(lhs, rhs);
}

} // namespace rtkit

#endif
