#include <gtest/gtest.h>

#include <gmpxx.h>

#include <vector>

#include <rtkit/bernoulli/bernoulli.hpp>
#include <rtkit/modforms/eisenstein.hpp>
#include <rtkit/modforms/hecke.hpp>
#include <rtkit/modforms/qseries.hpp>

using namespace rtkit;

namespace
{

using ZSeries = std::vector<mpz_class>;

ZSeries mul(const ZSeries &a, const ZSeries &b)
{
    ZSeries r(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; i + j < a.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// q prod (1 - q^n)^24, multiplied out factor by factor.
ZSeries delta_by_product(std::size_t prec)
{
    ZSeries acc(prec, 0);
    acc[0] = 1;
    for (std::size_t n = 1; n < prec; ++n)
        for (int t = 0; t < 24; ++t)
            for (std::size_t i = prec; i-- > n;) acc[i] -= acc[i - n];
    ZSeries d(prec, 0);
    for (std::size_t i = 1; i < prec; ++i) d[i] = acc[i - 1];
    return d;
}

ZSeries eisenstein_z(std::size_t prec, long scale, unsigned s)
{
    ZSeries e(prec, 0);
    e[0] = 1;
    for (std::size_t n = 1; n < prec; ++n) {
        mpz_class sig = 0;
        for (std::size_t d = 1; d <= n; ++d)
            if (n % d == 0) {
                mpz_class t;
                mpz_ui_pow_ui(t.get_mpz_t(), d, s);
                sig += t;
            }
        e[n] = scale * sig;
    }
    return e;
}

std::uint32_t mod(const mpz_class &v, std::uint32_t p)
{
    mpz_class r;
    mpz_mod_ui(r.get_mpz_t(), v.get_mpz_t(), p);
    return static_cast<std::uint32_t>(r.get_ui());
}

} // namespace

TEST(BasisForms, DeltaMatchesProductExpansion)
{
    const ZSeries d = delta_by_product(40);
    EXPECT_EQ(d[1], 1);
    EXPECT_EQ(d[2], -24);
    EXPECT_EQ(d[3], 252);
    for (std::uint32_t p : {5u, 7u, 11u, 691u}) {
        const auto bf = basis_forms(p, 40);
        EXPECT_EQ(bf.e4[0], 1u);
        for (std::size_t n = 0; n < 40; ++n) EXPECT_EQ(bf.delta[n], mod(d[n], p)) << n;
    }
}

TEST(BasisForms, E4CubedMinusE6Squared)
{
    const std::size_t prec = 30;
    const ZSeries e4 = eisenstein_z(prec, 240, 3), e6 = eisenstein_z(prec, -504, 5);
    const ZSeries lhs = mul(mul(e4, e4), e4);
    const ZSeries e6sq = mul(e6, e6);
    const ZSeries d = delta_by_product(prec);
    for (std::size_t n = 0; n < prec; ++n) EXPECT_EQ(lhs[n] - e6sq[n], 1728 * d[n]) << n;
    for (std::uint32_t p : {5u, 13u, 547u}) {
        const auto bf = basis_forms(p, prec);
        const QSeries diff = bf.e4 * bf.e4 * bf.e4 - bf.e6 * bf.e6;
        EXPECT_EQ(diff, bf.delta.scaled(1728));
        for (std::size_t n = 0; n < prec; ++n) {
            EXPECT_EQ(bf.e4[n], mod(e4[n], p));
            EXPECT_EQ(bf.e6[n], mod(e6[n], p));
        }
    }
}

TEST(VictorMiller, DimensionsAndEchelon)
{
    for (unsigned k = 4; k <= 120; k += 2) {
        const unsigned expected = k / 12 + (k % 12 == 2 ? 0 : 1);
        EXPECT_EQ(dim_modular_forms(k), expected);
        const auto vm = victor_miller_basis(7, k, dim_modular_forms(k) + 5);
        ASSERT_EQ(vm.forms.size(), expected) << k;
        EXPECT_EQ(vm.cusp_dimension(), expected - 1);
        for (std::size_t i = 0; i < vm.forms.size(); ++i)
            for (std::size_t j = 0; j < vm.forms.size(); ++j) EXPECT_EQ(vm.forms[j][i], i == j ? 1u : 0u);
    }
    EXPECT_EQ(dim_cusp_forms(12), 1u);
    EXPECT_EQ(dim_cusp_forms(4), 0u);
    EXPECT_EQ(dim_cusp_forms(486), 40u);
    EXPECT_THROW(victor_miller_basis(7, 24, 2), domain_error);
    EXPECT_THROW(victor_miller_basis(3, 24, 10), domain_error);
}

TEST(VictorMiller, Weight12CuspFormIsDelta)
{
    const auto vm = victor_miller_basis(691, 12, 30);
    EXPECT_EQ(vm.forms[1], basis_forms(691, 30).delta.truncated(30));
}

TEST(Hecke, Weight12Eigenvalues)
{
    for (std::uint32_t p : {5u, 7u, 11u, 13u, 691u}) {
        const auto t2 = hecke_matrix(p, 12, 2);
        EXPECT_EQ(t2.matrix(0, 0), static_cast<std::uint32_t>((p * 100 - 24) % p));
        if (p != 3) {
            const auto t3 = hecke_matrix(p, 12, 3);
            EXPECT_EQ(t3.matrix(0, 0), 252 % p);
        }
    }
}

TEST(Hecke, Commutativity)
{
    for (std::uint32_t p : {5u, 7u, 37u})
        for (unsigned k : {12u, 24u, 36u, 48u, 60u}) {
            const CuspSpace S(p, k, 5);
            const std::vector<std::uint32_t> ells{2, 3, 5};
            for (auto l1 : ells)
                for (auto l2 : ells) {
                    if (l1 == p || l2 == p || l1 >= l2) continue;
                    const auto a = S.hecke(l1).matrix, b = S.hecke(l2).matrix;
                    EXPECT_EQ(a * b, b * a) << p << " " << k << " " << l1 << " " << l2;
                }
        }
}

TEST(Hecke, Rejections)
{
    EXPECT_THROW(hecke_matrix(5, 24, 5), domain_error);
    EXPECT_THROW(hecke_matrix(7, 24, 4), domain_error);
    const CuspSpace S(7, 24, 2);
    EXPECT_THROW(S.hecke(3), domain_error);
}

// E_k = -B_k/(2k) + sum sigma_(k-1)(n) q^n is cuspidal mod p when p | B_k,
// with T_2-eigenvalue 1 + 2^(k-1).
TEST(Hecke, EisensteinSeriesIsCuspidalEigenform)
{
    for (auto [p, k] : std::vector<std::pair<std::uint32_t, unsigned>>{{691, 12}, {37, 32}, {59, 44}, {67, 58}}) {
        ASSERT_TRUE(eisenstein_congruence_exists(p, k));
        const unsigned d = dim_cusp_forms(k);
        const std::size_t prec = 2 * d + 2;
        const auto sig = detail::divisor_power_sums(prec, k - 1, p);
        const auto vm = victor_miller_basis(p, k, prec);
        EXPECT_EQ(mod(mpz_class(BigRational(bernoulli_exact(k) / (2 * k)).get_num()), p), 0u);
        // Cuspidal: E_k == sum_j a_j(E_k) f_j on all available coefficients.
        QSeries comb(p, static_cast<int>(k), prec);
        for (unsigned j = 1; j <= d; ++j) comb = comb + vm.forms[j].scaled(sig[j]);
        for (std::size_t n = 0; n < prec; ++n) EXPECT_EQ(comb[n], n == 0 ? 0u : sig[n]) << p << " " << k << " " << n;
        // Row vector v of coordinates satisfies v H = lambda v.
        const auto h = hecke_matrix(p, k, 2).matrix;
        const std::uint64_t lambda = (1 + detail::powmod(2, k - 1, p)) % p;
        for (unsigned n = 0; n < d; ++n) {
            std::uint64_t acc = 0;
            for (unsigned j = 0; j < d; ++j) acc += std::uint64_t{sig[j + 1]} * h(j, n);
            EXPECT_EQ(acc % p, lambda * sig[n + 1] % p);
        }
    }
}

TEST(EisensteinCongruence, Examples)
{
    EXPECT_TRUE(eisenstein_congruence_exists(691, 12));
    EXPECT_TRUE(eisenstein_congruence_exists(37, 32));
    EXPECT_FALSE(eisenstein_congruence_exists(37, 20));
    EXPECT_THROW(eisenstein_congruence_exists(37, 36), domain_error);
}

TEST(EisensteinLocal, Examples)
{
    const auto r691 = eisenstein_local_structure(691, 12);
    EXPECT_EQ(r691.localized_dimension, 1u);
    EXPECT_EQ(r691.structure_descriptor, "F_p[x]/x^1");
    EXPECT_TRUE(r691.is_monogenic);

    const auto r20 = eisenstein_local_structure(37, 20);
    EXPECT_EQ(r20.localized_dimension, 0u);
    EXPECT_EQ(r20.nilpotency_index, 0u);

    const auto r32 = eisenstein_local_structure(37, 32);
    EXPECT_GE(r32.localized_dimension, 1u);

    const auto r4 = eisenstein_local_structure(37, 4);
    EXPECT_EQ(r4.cusp_dimension, 0u);
    EXPECT_EQ(r4.localized_dimension, 0u);

    EXPECT_THROW(eisenstein_local_structure(37, 32, {2, 37}), domain_error);
    EXPECT_THROW(eisenstein_local_structure(37, 31), domain_error);
}

TEST(EisensteinLocal, Headline)
{
    const auto r = eisenstein_local_structure(547, 486);
    EXPECT_EQ(r.cusp_dimension, 40u);
    EXPECT_EQ(r.localized_dimension, 2u);
    EXPECT_EQ(r.nilpotency_index, 2u);
    EXPECT_EQ(r.structure_descriptor, "F_p[x]/x^2");
    EXPECT_TRUE(r.is_local);
    EXPECT_TRUE(r.classified);
}

TEST(EisensteinLocal, CongruenceEquivalence)
{
    for (unsigned k = 4; k + 1 < 37; k += 2) {
        const auto r = eisenstein_local_structure(37, k);
        EXPECT_EQ(eisenstein_congruence_exists(37, k), r.localized_dimension > 0) << k;
        EXPECT_EQ(r.localized_dimension == 0, r.nilpotency_index == 0);
        if (r.structure_descriptor.rfind("F_p[x]/x^", 0) == 0) EXPECT_EQ(r.localized_dimension, r.nilpotency_index);
    }
}

TEST(EisensteinLocal, StabilityUnderMoreGenerators)
{
    for (auto [p, k] : std::vector<std::pair<std::uint32_t, unsigned>>{
             {37, 32}, {59, 44}, {67, 58}, {691, 12}, {101, 68}, {37, 68}, {37, 104}}) {
        const auto small = eisenstein_local_structure(p, k, {2, 3});
        const auto big = eisenstein_local_structure(p, k);
        EXPECT_LE(big.localized_dimension, small.localized_dimension) << p << " " << k;
        EXPECT_LE(big.eigenspace_dimension, small.eigenspace_dimension);
    }
}

TEST(EisensteinLocal, SturmPrimes)
{
    EXPECT_EQ(sturm_primes(12), (std::vector<std::uint32_t>{2}));
    EXPECT_EQ(sturm_primes(486), (std::vector<std::uint32_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41}));
}
