#ifndef RTKIT_MODFORMS_EISENSTEIN_HPP
#define RTKIT_MODFORMS_EISENSTEIN_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <rtkit/algebra/fp_matrix.hpp>
#include <rtkit/modforms/hecke.hpp>

namespace rtkit
{

inline const std::vector<std::uint32_t> &default_generator_primes()
{
    static const std::vector<std::uint32_t> primes{2, 3, 5, 7, 11, 13};
    return primes;
}

// Primes l <= ceil(k/12) + 1.
inline std::vector<std::uint32_t> sturm_primes(unsigned k)
{
    std::vector<std::uint32_t> out;
    const unsigned bound = (k + 11) / 12 + 1;
    for (std::uint32_t l = 2; l <= bound; ++l)
        if (detail::is_prime(l)) out.push_back(l);
    return out;
}

struct EisensteinLocalReport {
    std::uint32_t p = 0;
    unsigned k = 0;
    std::vector<std::uint32_t> generator_primes;
    std::size_t cusp_dimension = 0;
    std::size_t eigenspace_dimension = 0; // dim W
    std::size_t localized_dimension = 0;  // d_m = dim of the algebra generated on W
    bool is_local = false;
    bool is_monogenic = false;
    std::size_t nilpotency_index = 0; // e
    std::string generator_label;
    std::string structure_descriptor;
    bool classified = true; // false when the monogenicity search declines
};

namespace detail
{

inline std::vector<std::uint32_t> flatten(const FpMatrix &m)
{
    std::vector<std::uint32_t> v;
    v.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const auto r = m.row(i);
        v.insert(v.end(), r.begin(), r.end());
    }
    return v;
}

// Smallest e >= 1 with t^e = 0, or nullopt if t is not nilpotent.
inline std::optional<std::size_t> nilpotency_index(const FpMatrix &t)
{
    FpMatrix power = FpMatrix::identity(t.prime(), t.rows());
    for (std::size_t e = 1; e <= t.rows() + 1; ++e) {
        power = power * t;
        if (power.is_zero()) return e;
    }
    return std::nullopt;
}

// Matrix R with C W = W R, for W of full column rank spanning a C-stable subspace.
inline FpMatrix restrict_to(const FpMatrix &c, const FpMatrix &w)
{
    const std::size_t n = w.rows(), m = w.cols();
    const FpMatrix cw = c * w;
    FpMatrix aug(w.prime(), n, 2 * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            aug(i, j) = w(i, j);
            aug(i, m + j) = cw(i, j);
        }
    const auto pivots = aug.rref();
    if (pivots.size() != m || (m > 0 && pivots.back() != m - 1))
        throw internal_error("eisenstein_local_structure: subspace is not stable under a Hecke operator");
    FpMatrix r(w.prime(), m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) r(i, j) = aug(i, m + j);
    return r;
}

} // namespace detail

// Mod-p Hecke algebra of S_k(SL_2(Z)) localized at the Eisenstein maximal ideal
// containing T_l - 1 - l^(k-1), for l in the given list.
inline EisensteinLocalReport eisenstein_local_structure(std::uint32_t p, unsigned k,
                                                        std::vector<std::uint32_t> generator_primes = default_generator_primes())
{
    if (p < 5 || !detail::is_prime(p)) throw domain_error("eisenstein_local_structure: p must be a prime >= 5");
    if (k < 4 || k % 2 != 0) throw domain_error("eisenstein_local_structure: k must be even and at least 4");
    std::sort(generator_primes.begin(), generator_primes.end());
    generator_primes.erase(std::unique(generator_primes.begin(), generator_primes.end()), generator_primes.end());
    if (generator_primes.empty()) throw domain_error("eisenstein_local_structure: empty generator list");
    for (auto l : generator_primes) {
        if (l == p) throw domain_error("eisenstein_local_structure: p appears in the generator list");
        if (!detail::is_prime(l)) throw domain_error("eisenstein_local_structure: generator list must hold primes");
    }

    EisensteinLocalReport rep;
    rep.p = p;
    rep.k = k;
    rep.generator_primes = generator_primes;
    const std::size_t d = dim_cusp_forms(k);
    rep.cusp_dimension = d;

    auto empty_report = [&] {
        rep.structure_descriptor = "0";
        rep.generator_label = "";
        return rep;
    };
    if (d == 0) return empty_report();

    const CuspSpace space(p, k, generator_primes.back());
    // Column convention: C[i][j] = a_i(T_l f_j).
    std::vector<FpMatrix> shifted; // T_l - lambda_l on S_k
    std::vector<std::uint32_t> eigen;
    FpMatrix stacked(p, 0, d);
    for (auto l : generator_primes) {
        const FpMatrix c = space.hecke(l).matrix.transpose();
        const auto lambda = static_cast<std::uint32_t>((1 + detail::powmod(l % p, k - 1, p)) % p);
        const FpMatrix t = c - FpMatrix::identity(p, d).scaled(lambda);
        const FpMatrix td = t.pow(d);
        for (std::size_t i = 0; i < d; ++i) stacked.add_row(td.row(i));
        shifted.push_back(c);
        eigen.push_back(lambda);
    }
    const FpMatrix w = stacked.kernel();
    rep.eigenspace_dimension = w.cols();
    if (w.cols() == 0) return empty_report();

    const std::size_t m = w.cols();
    std::vector<FpMatrix> gens; // (T_l - lambda_l)|_W
    for (std::size_t i = 0; i < shifted.size(); ++i)
        gens.push_back(detail::restrict_to(shifted[i], w) - FpMatrix::identity(p, m).scaled(eigen[i]));
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            if (!(gens[i] * gens[j] == gens[j] * gens[i]))
                throw internal_error("eisenstein_local_structure: Hecke operators fail to commute");

    // Close {1} under multiplication by the generators, tracking the linear span.
    std::vector<FpMatrix> basis{FpMatrix::identity(p, m)};
    FpMatrix span(p, 0, m * m);
    span.add_row(detail::flatten(basis[0]));
    for (std::size_t idx = 0; idx < basis.size(); ++idx)
        for (const auto &g : gens) {
            const FpMatrix prod = basis[idx] * g;
            FpMatrix trial = span;
            trial.add_row(detail::flatten(prod));
            if (trial.rank() > span.rows()) {
                span = std::move(trial);
                basis.push_back(prod);
            }
        }
    rep.localized_dimension = basis.size();

    rep.is_local = true;
    for (const auto &g : gens)
        if (!detail::nilpotency_index(g)) rep.is_local = false;
    if (!rep.is_local) throw internal_error("eisenstein_local_structure: generalized eigenspace is not local");

    // Monogenic iff some t has nilpotency index e = d_m: then 1, t, ..., t^(e-1) span A.
    std::size_t best = 0;
    auto consider = [&](const FpMatrix &t, const std::string &label) {
        const std::size_t e = detail::nilpotency_index(t).value_or(0);
        best = std::max(best, e);
        if (e == rep.localized_dimension && !rep.is_monogenic) {
            rep.is_monogenic = true;
            rep.generator_label = label;
        }
    };
    auto lab = [&](std::size_t i) {
        return "T_" + std::to_string(generator_primes[i]) + " - " + std::to_string(eigen[i]);
    };
    for (std::size_t i = 0; i < gens.size() && !rep.is_monogenic; ++i) consider(gens[i], lab(i));
    for (std::size_t i = 0; i < gens.size() && !rep.is_monogenic; ++i)
        for (std::size_t j = i + 1; j < gens.size() && !rep.is_monogenic; ++j)
            for (std::uint32_t c = 1; c < p && !rep.is_monogenic; ++c)
                consider(gens[i] + gens[j].scaled(c), "(" + lab(i) + ") + " + std::to_string(c) + "(" + lab(j) + ")");

    rep.nilpotency_index = rep.is_monogenic ? rep.localized_dimension : best;
    if (rep.is_monogenic) {
        rep.structure_descriptor = "F_p[x]/x^" + std::to_string(rep.localized_dimension);
    } else {
        rep.structure_descriptor = "non-monogenic within search class";
        rep.classified = false;
    }
    return rep;
}

} // namespace rtkit

#endif
