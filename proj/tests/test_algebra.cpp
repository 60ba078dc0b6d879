#include <gtest/gtest.h>

#include <gmpxx.h>

#include <random>
#include <set>
#include <vector>

#include <rtkit/algebra/fp_matrix.hpp>
#include <rtkit/algebra/fq.hpp>
#include <rtkit/algebra/padic.hpp>
#include <rtkit/algebra/upoly.hpp>

using namespace rtkit;

namespace
{

using Poly = std::vector<std::uint32_t>; // little-endian, monic of the stated degree

Poly poly_mul(const Poly &a, const Poly &b, std::uint32_t p)
{
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return r;
}

std::vector<Poly> monic_of_degree(unsigned d, std::uint32_t p)
{
    std::vector<Poly> out;
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        Poly m(d + 1, 0);
        m[d] = 1;
        std::uint64_t t = idx;
        for (unsigned i = 0; i < d; ++i) {
            m[i] = static_cast<std::uint32_t>(t % p);
            t /= p;
        }
        out.push_back(m);
    }
    return out;
}

// Reducible monic polynomials of degree f, by multiplying all pairs of lower-degree monics.
std::set<Poly> reducible_monics(unsigned f, std::uint32_t p)
{
    std::set<Poly> red;
    for (unsigned d = 1; d <= f / 2; ++d)
        for (const auto &a : monic_of_degree(d, p))
            for (const auto &b : monic_of_degree(f - d, p)) red.insert(poly_mul(a, b, p));
    return red;
}

// Lexicographically least in (c_0, ..., c_{f-1}), c_0 most significant.
Poly least_irreducible_bruteforce(std::uint32_t p, unsigned f)
{
    const auto red = reducible_monics(f, p);
    std::vector<Poly> irr;
    for (const auto &m : monic_of_degree(f, p))
        if (!red.count(m)) irr.push_back(m);
    return *std::min_element(irr.begin(), irr.end(), [](const Poly &a, const Poly &b) {
        return std::lexicographical_compare(a.begin(), a.end() - 1, b.begin(), b.end() - 1);
    });
}

UPoly random_upoly(const FqField &F, unsigned e, std::size_t max_deg, std::mt19937 &rng)
{
    UPoly f(F, e);
    std::uniform_int_distribution<std::uint64_t> pick(0, F.order() - 1);
    for (std::size_t i = 0; i < std::min(max_deg, f.length()); ++i) f.set(i, F.element(pick(rng)));
    return f;
}

} // namespace

TEST(FqField, PrimeFieldModulus)
{
    const FqField F = FqField::make(3, 1);
    EXPECT_EQ(F.order(), 3u);
    EXPECT_EQ(Poly(F.modulus().begin(), F.modulus().end()), (Poly{0, 1}));
}

TEST(FqField, F9ModulusIsXSquaredPlusOne)
{
    const FqField F = FqField::make(3, 2);
    EXPECT_EQ(Poly(F.modulus().begin(), F.modulus().end()), (Poly{1, 0, 1}));
}

TEST(FqField, ModulusMatchesBruteForceIrreducibility)
{
    for (std::uint32_t p : {3u, 5u, 7u})
        for (unsigned f = 1; f <= 4; ++f) {
            if (p == 7 && f == 4) continue;
            const FqField F = FqField::make(p, f);
            EXPECT_EQ(Poly(F.modulus().begin(), F.modulus().end()), least_irreducible_bruteforce(p, f))
                << "p=" << p << " f=" << f;
        }
}

TEST(FqField, RejectsBadCharacteristic)
{
    EXPECT_THROW(FqField::make(4, 1), domain_error);
    EXPECT_THROW(FqField::make(2, 1), domain_error);
    EXPECT_THROW(FqField::make(9, 1), domain_error);
    EXPECT_THROW(FqField::make(3, 0), domain_error);
    EXPECT_THROW(FqField::make(3, 9), domain_error);
}

TEST(FqField, FieldAxiomsAndFrobenius)
{
    for (auto [p, f] : std::vector<std::pair<std::uint32_t, unsigned>>{{3, 1}, {3, 2}, {3, 3}, {5, 2}, {7, 2}, {11, 2}}) {
        const FqField F = FqField::make(p, f);
        for (const auto &x : F.elements()) {
            EXPECT_EQ(F.pow(x, F.order()), x);
            if (!F.is_zero(x)) EXPECT_EQ(F.mul(x, F.inv(x)), F.one());
            EXPECT_EQ(F.frobenius_inverse(F.frobenius(x)), x);
        }
        std::mt19937 rng(p * 100 + f);
        std::uniform_int_distribution<std::uint64_t> pick(0, F.order() - 1);
        for (int t = 0; t < 200; ++t) {
            const auto x = F.element(pick(rng)), y = F.element(pick(rng));
            EXPECT_EQ(F.frobenius(F.mul(x, y)), F.mul(F.frobenius(x), F.frobenius(y)));
            EXPECT_EQ(F.frobenius(F.add(x, y)), F.add(F.frobenius(x), F.frobenius(y)));
        }
    }
}

TEST(FqField, IndexRoundTrip)
{
    const FqField F = FqField::make(5, 2);
    for (std::uint64_t i = 0; i < F.order(); ++i) EXPECT_EQ(F.index_of(F.element(i)), i);
}

TEST(FqField, Pm1PowerMatchesEnumeration)
{
    for (std::uint32_t p : {3u, 5u, 7u, 11u})
        for (unsigned f : {1u, 2u}) {
            const FqField F = FqField::make(p, f);
            if (F.order() > 121) continue;
            std::set<FqElem> powers;
            for (const auto &c : F.units()) powers.insert(F.pow(c, p - 1));
            for (const auto &x : F.units()) {
                EXPECT_EQ(F.is_pm1_power(x), powers.count(x) == 1) << F.to_string(x);
                if (powers.count(x)) {
                    std::set<FqElem> roots;
                    for (const auto &c : F.units())
                        if (F.pow(c, p - 1) == x) roots.insert(c);
                    const auto got = F.pm1_roots(x);
                    EXPECT_EQ(std::set<FqElem>(got.begin(), got.end()), roots);
                }
            }
            EXPECT_THROW(F.is_pm1_power(F.zero()), domain_error);
        }
}

TEST(FqField, Pm1PowerPrimeField)
{
    const FqField F = FqField::make(7, 1);
    EXPECT_TRUE(F.is_pm1_power(F.one()));
    EXPECT_FALSE(F.is_pm1_power(F.from_int(3))); // 3 generates F_7^x
}

TEST(FqField, F9SquaresArePm1Powers)
{
    const FqField F = FqField::make(3, 2);
    for (const auto &c : F.units()) EXPECT_TRUE(F.is_pm1_power(F.mul(c, c)));
}

TEST(UPoly, LengthAndRequirements)
{
    const FqField F = FqField::make(3, 1);
    EXPECT_EQ(UPoly(F, 2).length(), 6u);
    EXPECT_THROW(UPoly(F, 3), domain_error);
    EXPECT_THROW(UPoly(F, 0), domain_error);
}

TEST(UPoly, FrobeniusTwistExamples)
{
    const FqField F = FqField::make(3, 1);
    EXPECT_EQ(UPoly::monomial(F, 2, F.one(), 1).frobenius_twist(), UPoly::monomial(F, 2, F.one(), 3));
    EXPECT_TRUE(UPoly::monomial(F, 2, F.one(), 2).frobenius_twist().is_zero());

    const FqField F9 = FqField::make(3, 2);
    for (const auto &c : F9.units()) {
        // phi(c) computed from the coefficient table: c = c0 + c1 t with t^2 = -1, so c^3 = c0 - c1 t.
        const FqElem expected = F9.from_coeffs(std::vector<std::uint32_t>{c.c[0], (3 - c.c[1]) % 3});
        EXPECT_EQ(UPoly::monomial(F9, 2, c, 1).frobenius_twist(), UPoly::monomial(F9, 2, expected, 3));
    }
}

TEST(UPoly, FrobeniusTwistIsRingMap)
{
    std::mt19937 rng(7);
    for (auto [p, f, e] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{
             {3, 1, 2}, {3, 2, 4}, {5, 1, 3}, {5, 2, 6}, {7, 1, 8}}) {
        const FqField F = FqField::make(p, f);
        for (int t = 0; t < 100; ++t) {
            const UPoly a = random_upoly(F, e, e, rng), b = random_upoly(F, e, e, rng);
            EXPECT_EQ((a * b).frobenius_twist(), a.frobenius_twist() * b.frobenius_twist());
            EXPECT_EQ((a + b).frobenius_twist(), a.frobenius_twist() + b.frobenius_twist());
        }
    }
}

TEST(UPoly, TruncationAndShift)
{
    const FqField F = FqField::make(5, 1);
    const UPoly a = UPoly::monomial(F, 2, F.one(), 6), b = UPoly::monomial(F, 2, F.one(), 4);
    EXPECT_TRUE((a * b).is_zero()); // 10 >= ep
    EXPECT_EQ(a.shift_up(3), UPoly::monomial(F, 2, F.one(), 9));
    EXPECT_TRUE(a.shift_up(4).is_zero());
    EXPECT_EQ(a.valuation(), 6u);
}

TEST(UPoly, DivisionByUPower)
{
    const FqField F = FqField::make(3, 1);
    const UPoly a = UPoly::monomial(F, 4, F.from_int(2), 5);
    EXPECT_EQ(a.div_u_pow(2), UPoly::monomial(F, 4, F.from_int(2), 3));
    EXPECT_THROW(a.div_u_pow(6), domain_error);
}

// The lift of y/u^r is ambiguous modulo u^(ep-r); its Frobenius twist is not,
// since p(ep-r) >= ep for r <= e.
TEST(UPoly, DivisionAmbiguityKilledByTwist)
{
    std::mt19937 rng(11);
    for (std::uint32_t p : {3u, 5u, 7u})
        for (unsigned e = 1; e <= 8; ++e) {
            if (e % p == 0) continue;
            const FqField F = FqField::make(p, 1);
            for (unsigned r = 0; r <= e; ++r) {
                EXPECT_GE(std::size_t{p} * (std::size_t{e} * p - r), std::size_t{e} * p);
                const UPoly y = random_upoly(F, e, e * p, rng).shift_up(r);
                const UPoly q = y.div_u_pow(r);
                const UPoly other = q + random_upoly(F, e, e * p, rng).shift_up(std::size_t{e} * p - r);
                EXPECT_EQ(other.shift_up(r), y);
                EXPECT_EQ(q.frobenius_twist(), other.frobenius_twist());
            }
        }
}

TEST(PadicApprox, SpecExamples)
{
    const PadicApprox six(3, 2, 6);
    const PadicApprox q = six.div_p();
    EXPECT_EQ(q.residue(), 2u);
    EXPECT_EQ(q.precision(), 1);

    const PadicApprox two(3, 2, 2);
    const PadicApprox h = two.div_unit(2);
    EXPECT_EQ(h.residue(), 1u);
    EXPECT_EQ(h.precision(), 2);

    EXPECT_THROW(PadicApprox(3, 2, 1).div_p(), domain_error);
    EXPECT_THROW(PadicApprox(3, 1, 3).div_p(), precision_error);
    EXPECT_THROW(PadicApprox(3, 2, 1).div_unit(6), domain_error);
}

TEST(PadicApprox, PrecisionIsMinimum)
{
    const PadicApprox a(5, 3, 7), b(5, 2, 4);
    EXPECT_EQ((a + b).precision(), 2);
    EXPECT_EQ((a * b).precision(), 2);
    EXPECT_THROW(b.with_precision(3), precision_error);
}

TEST(PadicApprox, MatchesBigIntegerArithmetic)
{
    std::mt19937_64 rng(2024);
    for (std::uint64_t p : {3ull, 5ull, 7ull, 13ull, 547ull}) {
        for (int n = 1; n <= 4; ++n) {
            mpz_class mod;
            mpz_ui_pow_ui(mod.get_mpz_t(), p, n);
            for (int t = 0; t < 200; ++t) {
                const long long x = static_cast<long long>(rng() >> 2) - (1ll << 60);
                const long long y = static_cast<long long>(rng() >> 2) - (1ll << 60);
                const int nx = n, ny = 1 + static_cast<int>(rng() % 4);
                const PadicApprox a = PadicApprox::from_int(p, nx, x), b = PadicApprox::from_int(p, ny, y);
                const int nm = std::min(nx, ny);
                mpz_class m;
                mpz_ui_pow_ui(m.get_mpz_t(), p, nm);
                auto reduce = [&](const mpz_class &v) {
                    mpz_class r;
                    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
                    return r.get_ui();
                };
                const mpz_class X(std::to_string(x)), Y(std::to_string(y));
                EXPECT_EQ((a + b).residue(), reduce(X + Y));
                EXPECT_EQ((a - b).residue(), reduce(X - Y));
                EXPECT_EQ((a * b).residue(), reduce(X * Y));
                if (y % static_cast<long long>(p) != 0) {
                    const PadicApprox d = a.div_unit(y);
                    EXPECT_EQ(reduce(mpz_class(std::to_string(d.residue())) * Y), reduce(X % mod));
                }
            }
        }
    }
}

TEST(PadicApprox, FromRational)
{
    const PadicApprox x = PadicApprox::from_rational(5, 2, mpq_class(1, 6));
    EXPECT_EQ((x * PadicApprox::from_int(5, 2, 6)).residue(), 1u);
    EXPECT_THROW(PadicApprox::from_rational(5, 2, mpq_class(1, 10)), domain_error);
}

TEST(FpMatrix, KernelAndRank)
{
    FpMatrix m(7, 2, 4);
    const std::uint32_t rows[2][4] = {{1, 2, 3, 4}, {0, 1, 0, 1}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = rows[i][j];
    EXPECT_EQ(m.rank(), 2u);
    const FpMatrix k = m.kernel();
    EXPECT_EQ(k.cols(), 2u);
    EXPECT_TRUE((m * k).is_zero());
    EXPECT_EQ(k.transpose().rank(), 2u);
}

TEST(FpMatrix, RandomKernelProperty)
{
    std::mt19937 rng(3);
    for (int t = 0; t < 50; ++t) {
        const std::uint32_t p = 11;
        const std::size_t r = 1 + rng() % 8, c = 1 + rng() % 8;
        FpMatrix m(p, r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rng() % (t % 3 == 0 ? 2 : p);
        const FpMatrix k = m.kernel();
        EXPECT_EQ(k.cols() + m.rank(), c);
        if (k.cols()) EXPECT_TRUE((m * k).is_zero());
    }
}

TEST(FpMatrix, PowerMatchesRepeatedProduct)
{
    FpMatrix m(5, 3, 3);
    std::uint32_t v = 1;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(i, j) = (v++ * 3) % 5;
    FpMatrix acc = FpMatrix::identity(5, 3);
    for (int e = 0; e < 7; ++e) acc = acc * m;
    EXPECT_EQ(m.pow(7), acc);
}
