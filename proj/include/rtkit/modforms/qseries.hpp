#ifndef RTKIT_MODFORMS_QSERIES_HPP
#define RTKIT_MODFORMS_QSERIES_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include <rtkit/algebra/fq.hpp>
#include <rtkit/errors.hpp>

namespace rtkit
{

// Truncated q-expansion a_0 + a_1 q + ... + a_{P-1} q^(P-1) over F_p, tagged with a weight.
class QSeries
{
public:
    QSeries(std::uint32_t p, int weight, std::size_t precision) : p_(p), weight_(weight), a_(precision, 0)
    {
        if (precision < 1) throw domain_error("QSeries: precision must be positive");
        if (p >= (1u << 20)) throw domain_error("QSeries: characteristic too large");
    }

    QSeries(std::uint32_t p, int weight, std::vector<std::uint32_t> coeffs) : p_(p), weight_(weight), a_(std::move(coeffs))
    {
        if (a_.empty()) throw domain_error("QSeries: precision must be positive");
        for (auto &c : a_) c %= p_;
    }

    std::uint32_t prime() const noexcept { return p_; }
    int weight() const noexcept { return weight_; }
    std::size_t precision() const noexcept { return a_.size(); }
    const std::vector<std::uint32_t> &coefficients() const noexcept { return a_; }

    std::uint32_t operator[](std::size_t n) const { return a_.at(n); }
    std::uint32_t &operator[](std::size_t n) { return a_.at(n); }

    QSeries truncated(std::size_t precision) const
    {
        if (precision > a_.size()) throw domain_error("QSeries: cannot extend precision");
        return QSeries(p_, weight_, std::vector<std::uint32_t>(a_.begin(), a_.begin() + static_cast<long>(precision)));
    }

    friend bool operator==(const QSeries &, const QSeries &) = default;

    friend QSeries operator*(const QSeries &x, const QSeries &y)
    {
        if (x.p_ != y.p_) throw domain_error("QSeries: mismatched characteristic");
        const std::size_t n = std::min(x.a_.size(), y.a_.size());
        std::vector<std::uint64_t> acc(n, 0);
        // terms are < 2^40; flush well before 2^64
        constexpr std::size_t flush = 1u << 20;
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint64_t xi = x.a_[i];
            if (!xi) continue;
            const std::uint32_t *yp = y.a_.data();
            std::uint64_t *ap = acc.data() + i;
            for (std::size_t j = 0; j + i < n; ++j) ap[j] += xi * yp[j];
            if ((i + 1) % flush == 0)
                for (auto &v : acc) v %= x.p_;
        }
        std::vector<std::uint32_t> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::uint32_t>(acc[i] % x.p_);
        return QSeries(x.p_, x.weight_ + y.weight_, std::move(out));
    }

    friend QSeries operator+(const QSeries &x, const QSeries &y) { return combine(x, y, 1); }
    friend QSeries operator-(const QSeries &x, const QSeries &y) { return combine(x, y, y.p_ - 1); }

    QSeries scaled(std::uint64_t s) const
    {
        QSeries r = *this;
        s %= p_;
        for (auto &c : r.a_) c = static_cast<std::uint32_t>(c * s % p_);
        return r;
    }

    bool is_zero() const noexcept
    {
        return std::all_of(a_.begin(), a_.end(), [](std::uint32_t c) { return c == 0; });
    }

private:
    // x + m*y
    static QSeries combine(const QSeries &x, const QSeries &y, std::uint64_t m)
    {
        if (x.p_ != y.p_) throw domain_error("QSeries: mismatched characteristic");
        if (x.weight_ != y.weight_) throw domain_error("QSeries: cannot add forms of different weight");
        const std::size_t n = std::min(x.a_.size(), y.a_.size());
        std::vector<std::uint32_t> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::uint32_t>((x.a_[i] + m * y.a_[i]) % x.p_);
        return QSeries(x.p_, x.weight_, std::move(out));
    }

    std::uint32_t p_;
    int weight_;
    std::vector<std::uint32_t> a_;
};

namespace detail
{

// sigma_s(n) mod p for n < count
inline std::vector<std::uint64_t> divisor_power_sums(std::size_t count, unsigned s, std::uint32_t p)
{
    std::vector<std::uint64_t> sig(count, 0);
    for (std::size_t d = 1; d < count; ++d) {
        const std::uint64_t dp = powmod(d % p, s, p);
        for (std::size_t m = d; m < count; m += d) sig[m] = (sig[m] + dp) % p;
    }
    return sig;
}

inline QSeries eisenstein_normalized(std::uint32_t p, std::size_t prec, int weight, long long scale, unsigned s)
{
    const auto sig = divisor_power_sums(prec, s, p);
    QSeries e(p, weight, prec);
    e[0] = 1 % p;
    const long long pp = p;
    const auto sc = static_cast<std::uint64_t>(((scale % pp) + pp) % pp);
    for (std::size_t n = 1; n < prec; ++n) e[n] = static_cast<std::uint32_t>(sc * sig[n] % p);
    return e;
}

} // namespace detail

struct BasisForms {
    QSeries e4;
    QSeries e6;
    QSeries delta;
};

// E4, E6 and Delta mod p. Delta = q * (prod (1 - q^n)^3)^8 with the cube from
// Jacobi's identity sum (-1)^m (2m+1) q^(m(m+1)/2).
inline BasisForms basis_forms(std::uint32_t p, std::size_t prec)
{
    if (prec < 2) throw domain_error("basis_forms: precision must be at least 2");
    if (p < 2 || !detail::is_prime(p)) throw domain_error("basis_forms: p must be prime");
    QSeries e4 = detail::eisenstein_normalized(p, prec, 4, 240, 3);
    QSeries e6 = detail::eisenstein_normalized(p, prec, 6, -504, 5);

    QSeries cube(p, 0, prec);
    for (std::size_t m = 0; m * (m + 1) / 2 < prec; ++m) {
        const std::uint64_t v = (2 * m + 1) % p;
        cube[m * (m + 1) / 2] = static_cast<std::uint32_t>(m % 2 == 0 ? v : (p - v) % p);
    }
    QSeries eta24 = cube * cube;
    eta24 = eta24 * eta24;
    eta24 = eta24 * eta24;
    QSeries delta(p, 12, prec);
    for (std::size_t n = 1; n < prec; ++n) delta[n] = eta24[n - 1];
    return {std::move(e4), std::move(e6), std::move(delta)};
}

inline unsigned dim_modular_forms(unsigned k)
{
    if (k % 2 != 0) return 0;
    if (k == 2) return 0;
    return k / 12 + (k % 12 == 2 ? 0 : 1);
}

inline unsigned dim_cusp_forms(unsigned k)
{
    const unsigned m = dim_modular_forms(k);
    return m == 0 ? 0 : m - 1;
}

// Echelon basis f_0..f_d of M_k mod p with a_i(f_j) = delta_ij for i, j <= d.
// f_1..f_d span S_k.
struct VictorMillerBasis {
    std::uint32_t p = 0;
    unsigned k = 0;
    std::vector<QSeries> forms;

    std::size_t cusp_dimension() const noexcept { return forms.empty() ? 0 : forms.size() - 1; }
    const QSeries &cusp_form(std::size_t j) const { return forms.at(j); } // j in 1..d
};

inline VictorMillerBasis victor_miller_basis(std::uint32_t p, unsigned k, std::size_t prec)
{
    if (k < 4 || k % 2 != 0) throw domain_error("victor_miller_basis: weight must be even and at least 4");
    if (p < 5 || !detail::is_prime(p)) throw domain_error("victor_miller_basis: p must be a prime >= 5");
    const unsigned dim = dim_modular_forms(k);
    if (prec < dim + 1) throw domain_error("victor_miller_basis: precision below dim M_k + 1");
    const unsigned d = dim - 1;

    const BasisForms bf = basis_forms(p, prec);
    // k - 12j = 4 alpha_j + 6 beta with beta in {0, 1} fixed by k mod 4; alpha_j = alpha_0 - 3j.
    const unsigned beta = (k % 4 == 0) ? 0 : 1;
    const unsigned alpha_min = (k - 6 * beta - 12 * d) / 4;

    std::vector<QSeries> delta_pow{QSeries(p, 0, std::vector<std::uint32_t>(prec, 0))};
    delta_pow[0][0] = 1;
    for (unsigned j = 1; j <= d; ++j) delta_pow.push_back(delta_pow.back() * bf.delta);

    QSeries e4_step = bf.e4 * bf.e4 * bf.e4;
    QSeries e_part(p, 0, std::vector<std::uint32_t>(prec, 0));
    e_part[0] = 1;
    for (unsigned i = 0; i < alpha_min; ++i) e_part = e_part * bf.e4;
    if (beta) e_part = e_part * bf.e6;

    std::vector<QSeries> g(d + 1, QSeries(p, static_cast<int>(k), prec));
    for (unsigned j = d + 1; j-- > 0;) {
        g[j] = delta_pow[j] * e_part;
        if (j > 0) e_part = e_part * e4_step;
    }

    for (unsigned j = 0; j <= d; ++j) {
        for (unsigned i = 0; i < j; ++i)
            if (g[j][i] != 0) throw internal_error("victor_miller_basis: monomial matrix is not triangular");
        if (g[j][j] != 1) throw internal_error("victor_miller_basis: monomial matrix is singular mod p");
    }
    for (unsigned j = d + 1; j-- > 0;)
        for (unsigned i = j + 1; i <= d; ++i)
            if (g[j][i] != 0) g[j] = g[j] - g[i].scaled(g[j][i]);

    VictorMillerBasis vm;
    vm.p = p;
    vm.k = k;
    vm.forms = std::move(g);
    return vm;
}

} // namespace rtkit

#endif
