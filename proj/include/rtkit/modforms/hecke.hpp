#ifndef RTKIT_MODFORMS_HECKE_HPP
#define RTKIT_MODFORMS_HECKE_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <rtkit/algebra/fp_matrix.hpp>
#include <rtkit/bernoulli/bernoulli.hpp>
#include <rtkit/modforms/qseries.hpp>

namespace rtkit
{

// Matrix of T_l on the cuspidal Victor Miller basis f_1..f_d of S_k mod p.
// Row j holds a_1..a_d of T_l f_{j+1}, so the operator acts on row vectors.
struct HeckeMatrix {
    std::uint32_t ell = 0;
    FpMatrix matrix;
    std::string basis = "victor-miller";
};

// Cusp forms of weight k mod p with enough coefficients for T_l, l <= max_ell.
class CuspSpace
{
public:
    CuspSpace(std::uint32_t p, unsigned k, std::uint32_t max_ell) : p_(p), k_(k)
    {
        if (k < 4 || k % 2 != 0) throw domain_error("CuspSpace: weight must be even and at least 4");
        d_ = dim_cusp_forms(k);
        const std::size_t prec = std::max<std::size_t>(std::size_t{max_ell} * d_ + 1, dim_modular_forms(k) + 1);
        basis_ = victor_miller_basis(p, k, prec);
    }

    std::uint32_t prime() const noexcept { return p_; }
    unsigned weight() const noexcept { return k_; }
    std::size_t dimension() const noexcept { return d_; }
    const VictorMillerBasis &basis() const noexcept { return basis_; }

    // (T_l f)_n = a_{nl}(f) + l^(k-1) a_{n/l}(f).
    HeckeMatrix hecke(std::uint32_t ell) const
    {
        if (!detail::is_prime(ell)) throw domain_error("hecke_matrix: l must be prime");
        if (ell == p_) throw domain_error("hecke_matrix: T_p is excluded");
        const std::size_t prec = basis_.forms.front().precision();
        if (std::size_t{ell} * d_ + 1 > prec) throw domain_error("hecke_matrix: insufficient q-expansion precision");
        const std::uint64_t twist = detail::powmod(ell % p_, k_ - 1, p_);
        HeckeMatrix h;
        h.ell = ell;
        h.matrix = FpMatrix(p_, d_, d_);
        for (std::size_t j = 1; j <= d_; ++j) {
            const QSeries &f = basis_.forms[j];
            for (std::size_t n = 1; n <= d_; ++n) {
                std::uint64_t v = f[n * ell];
                if (n % ell == 0) v += twist * f[n / ell];
                h.matrix(j - 1, n - 1) = static_cast<std::uint32_t>(v % p_);
            }
        }
        return h;
    }

private:
    std::uint32_t p_;
    unsigned k_;
    std::size_t d_ = 0;
    VictorMillerBasis basis_;
};

inline HeckeMatrix hecke_matrix(std::uint32_t p, unsigned k, std::uint32_t ell)
{
    return CuspSpace(p, k, ell).hecke(ell);
}

// The weight-k Eisenstein series reduces to a cusp form mod p iff v_p(B_k / 2k) >= 1.
inline bool eisenstein_congruence_exists(std::uint32_t p, unsigned k)
{
    if (p < 3 || !detail::is_prime(p)) throw domain_error("eisenstein_congruence_exists: p must be an odd prime");
    if (k < 4 || k % 2 != 0) throw domain_error("eisenstein_congruence_exists: k must be even and at least 4");
    if (k % (p - 1) == 0) throw domain_error("eisenstein_congruence_exists: (p-1) | k, B_k has a pole at p");
    const BigRational q = bernoulli_exact(k) / BigRational(2 * k);
    if (q == 0) return true;
    return p_valuation(q, p) >= 1;
}

} // namespace rtkit

#endif
