#ifndef RTKIT_BREUIL_RANK_ONE_HPP
#define RTKIT_BREUIL_RANK_ONE_HPP

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <rtkit/algebra/fq.hpp>
#include <rtkit/algebra/upoly.hpp>
#include <rtkit/errors.hpp>

namespace rtkit
{

// Breuil side: A(r, a) = S_1 e, Fil^1 = (u^r, X_n) e, phi_1(u^r e) = a e.
class RankOneModule
{
public:
    RankOneModule(FqField field, unsigned e, unsigned r, FqElem a) : field_(std::move(field)), e_(e), r_(r), a_(a)
    {
        if (e_ == 0 || std::gcd(e_, field_.characteristic()) != 1)
            throw domain_error("RankOneModule: need e >= 1 with gcd(e, p) = 1");
        if (r_ > e_) throw domain_error("RankOneModule: need 0 <= r <= e");
        if (field_.is_zero(a_)) throw domain_error("RankOneModule: a must be nonzero");
    }

    const FqField &field() const noexcept { return field_; }
    std::uint32_t p() const noexcept { return field_.characteristic(); }
    unsigned e() const noexcept { return e_; }
    unsigned r() const noexcept { return r_; }
    const FqElem &a() const noexcept { return a_; }

    friend bool operator==(const RankOneModule &x, const RankOneModule &y)
    {
        return x.field_ == y.field_ && x.e_ == y.e_ && x.r_ == y.r_ && x.a_ == y.a_;
    }

    std::string to_string() const { return "A(" + std::to_string(r_) + "," + field_.to_string(a_) + ")"; }

private:
    FqField field_;
    unsigned e_;
    unsigned r_;
    FqElem a_;
};

enum class GroupKind { multiplicative, etale, local_local };

inline const char *to_string(GroupKind k)
{
    switch (k) {
    case GroupKind::multiplicative: return "multiplicative";
    case GroupKind::etale: return "etale";
    default: return "local-local";
    }
}

// Group-scheme side G_{r,a}. Only the parameters (r, a, e - r) are kept; no affine
// equation is produced.
struct OortTateParams {
    unsigned r = 0;
    FqElem a{};
    unsigned affine_algebra_exponent = 0; // e - r
    GroupKind kind = GroupKind::local_local;
    std::string label;
};

inline OortTateParams oort_tate_of(const RankOneModule &m)
{
    OortTateParams o;
    o.r = m.r();
    o.a = m.a();
    o.affine_algebra_exponent = m.e() - m.r();
    const bool unit_a = m.a() == m.field().one();
    if (m.r() == 0) {
        o.kind = GroupKind::multiplicative;
        o.label = unit_a ? "mu_p" : "multiplicative G_{0," + m.field().to_string(m.a()) + "}";
    } else if (m.r() == m.e()) {
        o.kind = GroupKind::etale;
        o.label = unit_a ? "Z/pZ" : "etale G_{e," + m.field().to_string(m.a()) + "}";
    } else {
        o.kind = GroupKind::local_local;
        o.label = "G_{" + std::to_string(m.r()) + "," + m.field().to_string(m.a()) + "}";
    }
    return o;
}

inline RankOneModule module_of(const FqField &field, unsigned e, const OortTateParams &o)
{
    return RankOneModule(field, e, o.r, o.a);
}

// Breuil-side map A(s,b) -> A(r,a), e2bar |-> c u^m e1.
class HomWitness
{
public:
    HomWitness(const RankOneModule &src, const RankOneModule &dst, std::size_t m, FqElem c) : m_(m), c_(c)
    {
        const FqField &F = dst.field();
        const long long p = dst.p();
        const long long diff = static_cast<long long>(dst.r()) - static_cast<long long>(src.r());
        if (F.is_zero(c)) throw domain_error("HomWitness: c must be nonzero");
        if (diff < 0 || (p * diff) % (p - 1) != 0 || static_cast<long long>(m) != p * diff / (p - 1))
            throw domain_error("HomWitness: degree is not p(r-s)/(p-1)");
        if (m >= static_cast<std::size_t>(dst.e()) * dst.p()) throw domain_error("HomWitness: monomial vanishes in S_1");
        if (F.mul(src.a(), c) != F.mul(dst.a(), F.frobenius(c)))
            throw domain_error("HomWitness: b c != a c^p, map does not commute with phi_1");
    }

    std::size_t m() const noexcept { return m_; }
    const FqElem &c() const noexcept { return c_; }

private:
    std::size_t m_;
    FqElem c_;
};

struct HomSpace {
    unsigned dimension = 0; // over F_p
    std::optional<std::size_t> degree;
    std::vector<HomWitness> witnesses; // every nonzero map
};

// Hom(A(s,b), A(r,a)) on the Breuil side. phi_1-equivariance forces the single
// degree m = p(r-s)/(p-1), so r >= s is required on top of (p-1) | (r-s).
inline HomSpace hom_space(const RankOneModule &src, const RankOneModule &dst)
{
    if (!(src.field() == dst.field()) || src.e() != dst.e()) throw domain_error("hom_space: mismatched field or e");
    HomSpace h;
    const unsigned p = dst.p();
    if (dst.r() < src.r()) return h;
    const unsigned diff = dst.r() - src.r();
    if (diff % (p - 1) != 0) return h;
    const std::size_t m = static_cast<std::size_t>(p) * diff / (p - 1);
    if (m >= static_cast<std::size_t>(dst.e()) * p) return h;
    const FqField &F = dst.field();
    // b c = a c^p  <=>  c^(p-1) = b/a
    const FqElem ratio = F.div(src.a(), dst.a());
    if (!F.is_pm1_power(ratio)) return h;
    for (const FqElem &c : F.pm1_roots(ratio)) h.witnesses.emplace_back(src, dst, m, c);
    h.degree = m;
    // roots of c^(p-1) = t form one F_p^x coset: together with 0, a line over F_p
    h.dimension = 1;
    return h;
}

struct DescentInfo {
    unsigned r = 0;
    FqElem a{};
    std::vector<unsigned> character_exponents; // k in [0, p-2] with r == 2 - 2k mod (p-1)
};

inline void require_descent_base(const RankOneModule &m)
{
    if (m.e() != m.p() + 1) throw domain_error("descent predicates need e = p + 1");
}

// Generic-fibre descent data to Q_p over the tame base with e = p + 1.
inline std::optional<DescentInfo> descends_to_qp(const RankOneModule &m)
{
    require_descent_base(m);
    if (m.r() % 2 != 0 || !m.field().in_prime_field(m.a())) return std::nullopt;
    DescentInfo d;
    d.r = m.r();
    d.a = m.a();
    const long long pm1 = m.p() - 1;
    for (long long k = 0; k < pm1; ++k)
        if ((((2 - 2 * k - static_cast<long long>(m.r())) % pm1) + pm1) % pm1 == 0)
            d.character_exponents.push_back(static_cast<unsigned>(k));
    return d;
}

struct CharacterModules {
    std::vector<unsigned> rs; // each paired with a = 1
    bool unique = false;
};

inline bool exceptional_character(std::uint32_t p, unsigned k)
{
    const unsigned pm1 = p - 1;
    k %= pm1;
    return k == 0 || k == 1 || k == pm1 / 2 || k == (pm1 + 2) / 2;
}

// Order-p group schemes over the e = p + 1 base with generic fibre F_p(omega^k).
inline CharacterModules modules_for_character(std::uint32_t p, unsigned k)
{
    if (p < 3 || !detail::is_prime(p)) throw domain_error("modules_for_character: p must be an odd prime");
    if (k >= p - 1) throw domain_error("modules_for_character: need 0 <= k < p-1");
    CharacterModules out;
    const long long pm1 = p - 1;
    for (unsigned r = 0; r <= p + 1; r += 2)
        if ((((2 - 2 * static_cast<long long>(k) - r) % pm1) + pm1) % pm1 == 0) out.rs.push_back(r);
    out.unique = out.rs.size() == 1;
    if (out.unique == exceptional_character(p, k))
        throw internal_error("modules_for_character: uniqueness disagrees with the exceptional set");
    return out;
}

struct SelfExtDimensions {
    unsigned plain = 0;                  // F-dimension of the h-parameter space
    std::optional<unsigned> with_descent; // quoted, not computed
    std::string with_descent_source;
};

inline SelfExtDimensions self_ext_dimensions(const RankOneModule &m, bool want_descent = false)
{
    SelfExtDimensions d;
    const long long lo = std::max<long long>(0, 2LL * m.r() - m.e());
    d.plain = static_cast<unsigned>(m.r() + 1 - lo);
    if (want_descent) {
        if (!descends_to_qp(m)) throw domain_error("self_ext_dimensions: module has no descent data to Q_p");
        d.with_descent = 1;
        d.with_descent_source = "theorem (quoted, not computed)";
    }
    return d;
}

} // namespace rtkit

#endif
