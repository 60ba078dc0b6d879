#ifndef RTKIT_BREUIL_EXTENSION_HPP
#define RTKIT_BREUIL_EXTENSION_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <rtkit/algebra/fp_matrix.hpp>
#include <rtkit/algebra/fq.hpp>
#include <rtkit/algebra/upoly.hpp>
#include <rtkit/breuil/rank_one.hpp>
#include <rtkit/errors.hpp>

namespace rtkit
{

// Breuil-side exact sequence 0 -> A(r,a) -> M -> A(s,b) -> 0 with
// M = (S_1 e1 + S_2 e2)/(p e2 - eta e1), Fil^1 M containing u^s e2 + x e1,
// in the gauge where phi_1(u^s e2 + x e1) = b e2. On the group-scheme side this is
// 0 -> G_{s,b} -> G -> G_{r,a} -> 0.
struct ExtensionWitness {
    RankOneModule sub;  // A(r, a)
    RankOneModule quot; // A(s, b)
    UPoly x;
    UPoly eta;
};

enum class ExtensionDiagnostic { valid, y_not_in_filtration, master_equation_fails };

inline const char *to_string(ExtensionDiagnostic d)
{
    switch (d) {
    case ExtensionDiagnostic::valid: return "valid";
    case ExtensionDiagnostic::y_not_in_filtration: return "y = eta - u^(e-s) x is not in (u^r)";
    default: return "master equation fails";
    }
}

struct ExtensionCheck {
    bool valid = false;
    ExtensionDiagnostic diagnostic = ExtensionDiagnostic::valid;
};

namespace detail
{

inline void require_same_base(const RankOneModule &x, const RankOneModule &y, const char *who)
{
    if (!(x.field() == y.field()) || x.e() != y.e()) throw domain_error(std::string(who) + ": mismatched field or e");
}

// b eta == u^(ps) phi_1(y e1) + a phi(x) u^(p(e-r)), with phi_1(y e1) = a phi(y / u^r).
inline bool master_equation_holds(const ExtensionWitness &w, const UPoly &y)
{
    const unsigned p = w.sub.p(), e = w.sub.e(), r = w.sub.r(), s = w.quot.r();
    const FqElem &a = w.sub.a();
    const FqElem &b = w.quot.a();
    const UPoly lhs = b * w.eta;
    const UPoly rhs = a * y.div_u_pow(r).frobenius_twist().shift_up(std::size_t{p} * s) +
                      a * w.x.frobenius_twist().shift_up(std::size_t{p} * (e - r));
    return lhs == rhs;
}

// gamma_k = beta_k + alpha_{k+s-e};  gamma_k = 0 for p !| k;
// b gamma_{pk} = a phi(beta_{k+r-s} + alpha_{k+r-e}).
inline bool coefficient_relations_hold(const ExtensionWitness &w, const UPoly &y)
{
    const FqField &F = w.sub.field();
    const long long p = w.sub.p(), e = w.sub.e(), r = w.sub.r(), s = w.quot.r();
    const long long len = e * p;
    const FqElem &a = w.sub.a();
    const FqElem &b = w.quot.a();
    for (long long k = 0; k < len; ++k) {
        if (w.eta.coeff(k) != F.add(y.coeff(k), w.x.coeff(k + s - e))) return false;
        if (k % p != 0 && !F.is_zero(w.eta.coeff(k))) return false;
    }
    for (long long k = 0; p * k < len; ++k) {
        const FqElem rhs = F.mul(a, F.frobenius(F.add(y.coeff(k + r - s), w.x.coeff(k + r - e))));
        if (F.mul(b, w.eta.coeff(p * k)) != rhs) return false;
    }
    return true;
}

} // namespace detail

inline ExtensionCheck validate_extension(const ExtensionWitness &w)
{
    detail::require_same_base(w.sub, w.quot, "validate_extension");
    const unsigned e = w.sub.e(), s = w.quot.r();
    const UPoly y = w.eta - w.x.shift_up(e - s);
    if (!y.divisible_by_u_pow(w.sub.r())) return {false, ExtensionDiagnostic::y_not_in_filtration};
    const bool master = detail::master_equation_holds(w, y);
    const bool coeffs = detail::coefficient_relations_hold(w, y);
    if (master != coeffs) throw internal_error("validate_extension: master equation and coefficient relations disagree");
    if (!master) return {false, ExtensionDiagnostic::master_equation_fails};
    return {true, ExtensionDiagnostic::valid};
}

struct EtaClassification {
    std::optional<unsigned> k; // (r - s) = k (p - 1) when it exists
    std::vector<UPoly> etas;   // every admissible nonzero eta, one per root c
};

// Closed form: nonzero eta exist iff r - s = k(p-1) with k >= min(s, e-r) and
// b/a in F^x(p-1); they are then exactly c u^(pk) with c^(p-1) = b/a.
inline EtaClassification classify_eta(const FqField &field, unsigned e, unsigned r, unsigned s, const FqElem &a,
                                      const FqElem &b)
{
    const RankOneModule sub(field, e, r, a), quot(field, e, s, b);
    EtaClassification out;
    const unsigned p = field.characteristic();
    if (r < s || (r - s) % (p - 1) != 0) return out;
    const unsigned k = (r - s) / (p - 1);
    out.k = k;
    if (k < std::min(s, e - r)) return out;
    const FqElem ratio = field.div(b, a);
    if (!field.is_pm1_power(ratio)) return out;
    if (std::size_t{p} * k >= std::size_t{e} * p) throw internal_error("classify_eta: u^(pk) vanishes");
    for (const FqElem &c : field.pm1_roots(ratio)) out.etas.push_back(UPoly::monomial(field, e, c, std::size_t{p} * k));
    return out;
}

struct OracleResult {
    std::size_t unknowns = 0;           // over F_p
    std::size_t solution_dimension = 0; // dim of the (x, y) solution space over F_p
    std::vector<UPoly> eta_basis;       // F_p-basis of the realized eta

    // Every realized eta, including 0.
    std::vector<UPoly> achieved_etas(const FqField &field, unsigned e) const
    {
        const std::uint32_t p = field.characteristic();
        if (eta_basis.size() > 6) throw domain_error("OracleResult: eta space too large to enumerate");
        std::size_t total = 1;
        for (std::size_t i = 0; i < eta_basis.size(); ++i) total *= p;
        std::vector<UPoly> out;
        out.reserve(total);
        for (std::size_t idx = 0; idx < total; ++idx) {
            UPoly v(field, e);
            std::size_t t = idx;
            for (const auto &bv : eta_basis) {
                const auto coef = static_cast<std::uint32_t>(t % p);
                t /= p;
                if (coef) v = v + field.from_int(coef) * bv;
            }
            out.push_back(std::move(v));
        }
        return out;
    }
};

inline constexpr std::size_t kOracleMaxUnknowns = 10000;

// Independent verifier for classify_eta: the unknown coefficients alpha_k of x and
// beta_k of y (each f coordinates over F_p) are constrained by beta_k = 0 for k < r
// and the coefficient relations, all F_p-linear because Frobenius is. The realized
// eta form the image of the solution space under (alpha, beta) |-> gamma.
inline OracleResult solve_extensions_oracle(const FqField &field, unsigned e, unsigned r, unsigned s, const FqElem &a,
                                            const FqElem &b)
{
    const RankOneModule sub(field, e, r, a), quot(field, e, s, b);
    const std::uint32_t p = field.characteristic();
    const std::size_t f = field.degree();
    const long long len = static_cast<long long>(e) * p;
    const std::size_t n = 2 * static_cast<std::size_t>(len) * f;
    if (n > kOracleMaxUnknowns) throw domain_error("solve_extensions_oracle: system too large");

    // Columns of multiplication-by-c and of Frobenius on the power basis of F_q.
    auto mult_matrix = [&](const FqElem &c) {
        std::vector<std::vector<std::uint32_t>> m(f, std::vector<std::uint32_t>(f));
        for (std::size_t t = 0; t < f; ++t) {
            FqElem basis{};
            basis.c[t] = 1;
            const FqElem img = field.mul(c, basis);
            for (std::size_t i = 0; i < f; ++i) m[i][t] = img.c[i];
        }
        return m;
    };
    std::vector<std::vector<std::uint32_t>> frob(f, std::vector<std::uint32_t>(f));
    for (std::size_t t = 0; t < f; ++t) {
        FqElem basis{};
        basis.c[t] = 1;
        const FqElem img = field.frobenius(basis);
        for (std::size_t i = 0; i < f; ++i) frob[i][t] = img.c[i];
    }
    const auto mb = mult_matrix(b);
    const auto ma = mult_matrix(a);
    std::vector<std::vector<std::uint32_t>> ma_frob(f, std::vector<std::uint32_t>(f, 0));
    for (std::size_t i = 0; i < f; ++i)
        for (std::size_t j = 0; j < f; ++j) {
            std::uint64_t acc = 0;
            for (std::size_t t = 0; t < f; ++t) acc += std::uint64_t{ma[i][t]} * frob[t][j];
            ma_frob[i][j] = static_cast<std::uint32_t>(acc % p);
        }

    auto alpha = [&](long long k) -> long long { return (k < 0 || k >= len) ? -1 : k * static_cast<long long>(f); };
    auto beta = [&](long long k) -> long long {
        return (k < 0 || k >= len) ? -1 : (len + k) * static_cast<long long>(f);
    };
    // Adds sign * M applied to the block starting at column `col` into f rows.
    auto apply = [&](std::vector<std::vector<std::uint32_t>> &rows, long long col,
                     const std::vector<std::vector<std::uint32_t>> &m, bool negate) {
        if (col < 0) return;
        for (std::size_t i = 0; i < f; ++i)
            for (std::size_t j = 0; j < f; ++j) {
                const std::uint32_t v = negate ? (p - m[i][j]) % p : m[i][j];
                auto &cell = rows[i][static_cast<std::size_t>(col) + j];
                cell = (cell + v) % p;
            }
    };

    FpMatrix sys(p, 0, n);
    for (long long k = 0; k < static_cast<long long>(r); ++k) {
        std::vector<std::vector<std::uint32_t>> rows(f, std::vector<std::uint32_t>(n, 0));
        for (std::size_t t = 0; t < f; ++t) rows[t][static_cast<std::size_t>(beta(k)) + t] = 1;
        for (auto &row : rows) sys.add_row(row);
    }
    const long long el = e, rl = r, sl = s, pl = p;
    for (long long m = 0; m < len; ++m) {
        std::vector<std::vector<std::uint32_t>> rows(f, std::vector<std::uint32_t>(n, 0));
        // b gamma_m
        apply(rows, beta(m), mb, false);
        apply(rows, alpha(m + sl - el), mb, false);
        if (m % pl == 0) {
            const long long j = m / pl;
            apply(rows, beta(j + rl - sl), ma_frob, true);
            apply(rows, alpha(j + rl - el), ma_frob, true);
        }
        for (auto &row : rows) sys.add_row(row);
    }

    const FpMatrix kernel = sys.kernel();
    OracleResult res;
    res.unknowns = n;
    res.solution_dimension = kernel.cols();

    // gamma_m = beta_m + alpha_{m+s-e}, as an (len*f) x n matrix.
    FpMatrix gamma(p, static_cast<std::size_t>(len) * f, n);
    for (long long m = 0; m < len; ++m)
        for (std::size_t t = 0; t < f; ++t) {
            const std::size_t row = static_cast<std::size_t>(m) * f + t;
            gamma(row, static_cast<std::size_t>(beta(m)) + t) = 1;
            if (alpha(m + sl - el) >= 0) gamma(row, static_cast<std::size_t>(alpha(m + sl - el)) + t) = 1;
        }
    const FpMatrix image = (gamma * kernel).transpose().row_basis();
    for (std::size_t i = 0; i < image.rows(); ++i) {
        UPoly v(field, e);
        for (long long m = 0; m < len; ++m) {
            FqElem c{};
            for (std::size_t t = 0; t < f; ++t) c.c[t] = image(i, static_cast<std::size_t>(m) * f + t);
            v.set(static_cast<std::size_t>(m), c);
        }
        res.eta_basis.push_back(std::move(v));
    }
    return res;
}

// Oort-Tate parameters of an order-p group scheme, group-scheme side.
struct GroupSchemeParams {
    unsigned r = 0;
    FqElem a{};
};

// Group-scheme side: 0 -> G_{s,b} -> G -> G_{r,a} -> 0 with G not killed by p.
// Exists iff there is a nonzero Breuil map A(s,b) -> A(r,a) and r >= ps or
// (e - s) >= p (e - r).
inline bool p2_extension_exists(const FqField &field, unsigned e, const GroupSchemeParams &gs_quotient,
                                const GroupSchemeParams &gs_sub)
{
    const RankOneModule breuil_sub(field, e, gs_quotient.r, gs_quotient.a);
    const RankOneModule breuil_quot(field, e, gs_sub.r, gs_sub.a);
    const HomSpace hom = hom_space(breuil_quot, breuil_sub);
    const long long p = field.characteristic(), r = gs_quotient.r, s = gs_sub.r, el = e;
    const bool first = r >= p * s;
    const bool second = (el - s) >= p * (el - r);
    if (hom.dimension > 0) {
        const long long k = (r - s) / (p - 1);
        if (first != (k >= s) || second != (k >= el - r))
            throw internal_error("p2_extension_exists: inequality forms disagree");
    }
    return hom.dimension > 0 && (first || second);
}

struct NamedWitness {
    std::string name;
    unsigned k = 0;
    int construction = 1; // 1: Fil^1 generated by u^s e2;  2: by u^s e2 + c u^(k-e+r) e1
    ExtensionWitness witness;
};

// Explicit non-killed-by-p extensions over F_p for every admissible (r, s, a, b).
inline std::vector<NamedWitness> canonical_examples(std::uint32_t p, unsigned e)
{
    const FqField F = FqField::make(p, 1);
    if (std::gcd(e, p) != 1) throw domain_error("canonical_examples: need gcd(e, p) = 1");
    std::vector<NamedWitness> out;
    for (unsigned r = 0; r <= e; ++r)
        for (unsigned s = 0; s <= r; ++s) {
            if ((r - s) % (p - 1) != 0) continue;
            const unsigned k = (r - s) / (p - 1);
            const bool case1 = k >= s, case2 = k + r >= e;
            if (!case1 && !case2) continue;
            for (const FqElem &a : F.units())
                for (const FqElem &b : F.units()) {
                    const FqElem ratio = F.div(b, a);
                    if (!F.is_pm1_power(ratio)) continue;
                    const FqElem c = F.pm1_roots(ratio).front();
                    const RankOneModule sub(F, e, r, a), quot(F, e, s, b);
                    const UPoly eta = UPoly::monomial(F, e, c, std::size_t{p} * k);
                    const std::string tag = "G_{" + std::to_string(s) + "," + F.to_string(b) + "} -> G -> G_{" +
                                            std::to_string(r) + "," + F.to_string(a) + "}";
                    if (case1)
                        out.push_back({"case1: " + tag, k, 1, {sub, quot, UPoly(F, e), eta}});
                    if (case2)
                        out.push_back({"case2: " + tag, k, 2,
                                       {sub, quot, UPoly::monomial(F, e, c, std::size_t{k} + r - e), eta}});
                }
        }
    return out;
}

// Over e = p + 1, a self-extension of the unique order-p scheme with generic fibre
// F_p(omega^k) is killed by p. Returns true when the classifier confirms this.
inline bool theoremZ_check(std::uint32_t p, unsigned k)
{
    if (p < 3 || !detail::is_prime(p)) throw domain_error("theoremZ_check: p must be an odd prime");
    if (k >= p - 1 || exceptional_character(p, k)) throw domain_error("theoremZ_check: k is exceptional or out of range");
    const CharacterModules mods = modules_for_character(p, k);
    const unsigned r = mods.rs.front();
    const FqField F = FqField::make(p, 1);
    const unsigned e = p + 1;
    const GroupSchemeParams g{r, F.one()};
    const bool exists = p2_extension_exists(F, e, g, g);
    const bool closed_form_empty = classify_eta(F, e, r, r, F.one(), F.one()).etas.empty();
    if (exists == closed_form_empty) throw internal_error("theoremZ_check: classifier and criterion disagree");
    return !exists;
}

} // namespace rtkit

#endif
