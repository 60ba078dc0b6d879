#ifndef RTKIT_BERNOULLI_HYPOTHESES_HPP
#define RTKIT_BERNOULLI_HYPOTHESES_HPP

#include <cstdint>
#include <optional>
#include <string>

#include <rtkit/bernoulli/bernoulli.hpp>
#include <rtkit/bernoulli/generalized.hpp>

namespace rtkit
{

enum class Level { gamma1_p, gamma0_p2 };

inline const char *to_string(Level l) { return l == Level::gamma1_p ? "Gamma1(p)" : "Gamma0(p^2)"; }

struct DivisibilityFlag {
    long long index = 0;    // Bernoulli index actually tested
    bool p_integral = true; // false at a von Staudt pole; divides is then false
    bool divides = false;
    bool exactly_divides = false;
    std::string note;
};

struct Gamma1Flags {
    DivisibilityFlag bk;       // B_k
    DivisibilityFlag b2_omega; // B_{2, omega^(k-2)}, index field holds k-2
};

struct Gamma0Flags {
    std::optional<unsigned> kprime; // 0 < k' < p-1 with k + k' == (p+1)/2 mod (p-1)
    bool k_admissible = false;      // k not in {0, 1, (p-1)/2, (p+1)/2}
    DivisibilityFlag b2k;
    DivisibilityFlag b_complement; // B_{p+1-2k}
    bool coprime_b2k = false;
    bool coprime_b_complement = false;
};

struct HypothesisReport {
    std::uint64_t p = 0;
    unsigned k = 0;
    Level level = Level::gamma1_p;
    std::optional<Gamma1Flags> gamma1;
    std::optional<Gamma0Flags> gamma0;
};

// p-divisibility of the exact rational B_m, m >= 0.
inline DivisibilityFlag bernoulli_divisibility(std::uint64_t p, unsigned m)
{
    DivisibilityFlag fl;
    fl.index = m;
    if (m >= 2 && m % 2 == 0 && m % (p - 1) == 0) {
        fl.p_integral = false;
        fl.note = "B_" + std::to_string(m) + " has p in its denominator (von Staudt-Clausen); reported as not divisible";
        return fl;
    }
    const BigRational b = bernoulli_exact(m);
    if (b == 0) {
        fl.divides = true;
        fl.note = "B_" + std::to_string(m) + " = 0";
        return fl;
    }
    const int v = p_valuation(BigInt(b.get_num()), p);
    fl.divides = v >= 1;
    fl.exactly_divides = v == 1;
    return fl;
}

inline bool is_irregular_pair(std::uint64_t p, unsigned k)
{
    return k >= 2 && k % 2 == 0 && k + 1 < p && bernoulli_divisibility(p, k).divides;
}

inline bool exceptional_weight(std::uint64_t p, long long k)
{
    const long long pm1 = static_cast<long long>(p) - 1;
    const long long r = detail::mod_floor(k, pm1);
    return r == 0 || r == 1 || r == pm1 / 2 || r == (pm1 + 2) / 2;
}

// Gamma1(p): even 2 <= k < p-1 (k = 2 is accepted so scans can cover it).
// Gamma0(p^2): 0 < k < p-1.
inline HypothesisReport hypothesis_report(std::uint64_t p, unsigned k, Level level)
{
    detail::require_odd_prime(p, "hypothesis_report");
    HypothesisReport rep;
    rep.p = p;
    rep.k = k;
    rep.level = level;

    if (level == Level::gamma1_p) {
        if (k < 2 || k % 2 != 0 || k + 1 >= p) throw domain_error("hypothesis_report: Gamma1 needs even 2 <= k < p-1");
        Gamma1Flags g;
        g.bk = bernoulli_divisibility(p, k);
        const PadicApprox b2 = gen_bernoulli_omega(2, static_cast<long long>(k) - 2, p, 2);
        g.b2_omega.index = static_cast<long long>(k) - 2;
        g.b2_omega.divides = b2.residue() % p == 0;
        g.b2_omega.exactly_divides = g.b2_omega.divides && b2.residue() % (p * p) != 0;
        rep.gamma1 = g;
        return rep;
    }

    if (k < 1 || k + 1 >= p) throw domain_error("hypothesis_report: Gamma0(p^2) needs 0 < k < p-1");
    const long long pm1 = static_cast<long long>(p) - 1;
    Gamma0Flags g;
    const long long kp = detail::mod_floor(static_cast<long long>(p + 1) / 2 - k, pm1);
    if (kp != 0) g.kprime = static_cast<unsigned>(kp);
    g.k_admissible = !exceptional_weight(p, k);

    g.b2k = bernoulli_divisibility(p, 2 * k);
    const long long comp = static_cast<long long>(p) + 1 - 2 * static_cast<long long>(k);
    if (comp >= 2) {
        g.b_complement = bernoulli_divisibility(p, static_cast<unsigned>(comp));
    } else {
        // Non-positive index: use the Kummer class of comp mod (p-1).
        long long eff = detail::mod_floor(comp, pm1);
        if (eff == 0) eff = pm1;
        g.b_complement = bernoulli_divisibility(p, static_cast<unsigned>(eff));
        g.b_complement.note = "index " + std::to_string(comp) + " replaced by " + std::to_string(eff) +
                              " (same class mod p-1)" + (g.b_complement.note.empty() ? "" : "; " + g.b_complement.note);
    }
    g.coprime_b2k = !g.b2k.divides;
    g.coprime_b_complement = !g.b_complement.divides;
    rep.gamma0 = g;
    return rep;
}

} // namespace rtkit

#endif
