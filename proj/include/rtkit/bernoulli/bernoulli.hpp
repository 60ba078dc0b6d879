#ifndef RTKIT_BERNOULLI_BERNOULLI_HPP
#define RTKIT_BERNOULLI_BERNOULLI_HPP

#include <cstdint>
#include <mutex>
#include <vector>

#include <gmpxx.h>

#include <rtkit/algebra/fq.hpp>
#include <rtkit/errors.hpp>

namespace rtkit
{

using BigRational = mpq_class;
using BigInt = mpz_class;

inline constexpr unsigned kMaxBernoulliIndex = 5000;

namespace detail
{

// Process-wide memo of B_0..B_n. Growth is serialized; readers copy out under the lock.
class BernoulliCache
{
public:
    static BernoulliCache &instance()
    {
        static BernoulliCache cache;
        return cache;
    }

    BigRational get(unsigned n)
    {
        std::lock_guard lock(mutex_);
        extend_to(n);
        return values_[n];
    }

private:
    BernoulliCache() { values_.emplace_back(1); }

    // sum_{j=0}^{n} C(n+1, j) B_j = n + 1, i.e. the t e^t/(e^t - 1) convention with B_1 = +1/2.
    // Odd indices >= 3 vanish, so only j in {0, 1} and even j contribute.
    void extend_to(unsigned n)
    {
        while (values_.size() <= n) {
            const unsigned m = static_cast<unsigned>(values_.size());
            if (m >= 3 && m % 2 == 1) {
                values_.emplace_back(0);
                continue;
            }
            mpz_class binom = 1; // C(m+1, j), advanced incrementally
            BigRational acc = 0;
            for (unsigned j = 0; j < m; ++j) {
                if (j == 0 || j == 1 || j % 2 == 0) acc += binom * values_[j];
                binom = binom * (m + 1 - j) / (j + 1);
            }
            // binom is now C(m+1, m) = m + 1
            BigRational b = (BigRational(m + 1) - acc) / BigRational(binom);
            b.canonicalize();
            values_.push_back(std::move(b));
        }
    }

    std::mutex mutex_;
    std::vector<BigRational> values_;
};

} // namespace detail

// Exact B_n with generating function t e^t / (e^t - 1); B_1 = +1/2.
inline BigRational bernoulli_exact(unsigned n)
{
    if (n > kMaxBernoulliIndex) throw domain_error("bernoulli_exact: index exceeds " + std::to_string(kMaxBernoulliIndex));
    return detail::BernoulliCache::instance().get(n);
}

// B_n in the t/(e^t - 1) convention (B_1 = -1/2), as used by Bernoulli polynomials.
inline BigRational bernoulli_minus(unsigned n)
{
    if (n == 1) return BigRational(-1, 2);
    return bernoulli_exact(n);
}

inline int p_valuation(const BigInt &x, std::uint64_t p)
{
    if (x == 0) throw domain_error("p_valuation: zero has infinite valuation");
    BigInt t = x;
    int v = 0;
    while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
        ++v;
    }
    return v;
}

// Valuation of a nonzero rational.
inline int p_valuation(const BigRational &q, std::uint64_t p)
{
    return p_valuation(BigInt(q.get_num()), p) - p_valuation(BigInt(q.get_den()), p);
}

// Product of primes l with (l - 1) | n, for even n >= 2.
inline BigInt von_staudt_denominator(unsigned n)
{
    BigInt d = 1;
    for (unsigned l = 2; l <= n + 1; ++l)
        if (n % (l - 1) == 0 && detail::is_prime(l)) d *= l;
    return d;
}

} // namespace rtkit

#endif
