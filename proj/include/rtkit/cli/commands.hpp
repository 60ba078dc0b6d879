#ifndef RTKIT_CLI_COMMANDS_HPP
#define RTKIT_CLI_COMMANDS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <rtkit/bernoulli/bernoulli.hpp>
#include <rtkit/bernoulli/hypotheses.hpp>
#include <rtkit/breuil/extension.hpp>
#include <rtkit/breuil/rank_one.hpp>
#include <rtkit/cli/json_io.hpp>
#include <rtkit/modforms/eisenstein.hpp>

namespace rtkit::cli
{

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_unclassified = 2 };

// One rendered command: JSON document, human-readable text, CSV and exit code.
struct CommandOutput {
    json document;
    std::string text;
    std::string csv;
    int exit_code = exit_ok;
};

inline constexpr unsigned kScanDefaultBound = 1000;

struct ScanEntry {
    std::uint64_t p = 0;
    unsigned k = 0;
    HypothesisReport report;
};

struct ScanReport {
    unsigned pmax = 0;
    bool with_hecke = false;
    std::vector<ScanEntry> entries;                               // primes ascending, k ascending
    std::vector<std::pair<std::uint64_t, unsigned>> irregular;    // (p, k) with p | B_k
    std::map<std::pair<std::uint64_t, unsigned>, EisensteinLocalReport> hecke;
};

inline ScanReport cmd_scan(unsigned pmax, bool with_hecke, bool force = false)
{
    if (pmax > kScanDefaultBound && !force) throw domain_error("scan: pmax above 1000 needs --force");
    ScanReport rep;
    rep.pmax = pmax;
    rep.with_hecke = with_hecke;
    for (std::uint64_t p = 3; p <= pmax; ++p) {
        if (!detail::is_prime(p)) continue;
        for (unsigned k = 2; k + 1 < p; k += 2) {
            ScanEntry e{p, k, hypothesis_report(p, k, Level::gamma1_p)};
            if (e.report.gamma1->bk.divides) {
                rep.irregular.emplace_back(p, k);
                if (with_hecke && k >= 4) rep.hecke.emplace(std::make_pair(p, k), eisenstein_local_structure(static_cast<std::uint32_t>(p), k));
            }
            rep.entries.push_back(std::move(e));
        }
    }
    return rep;
}

inline json scan_results_json(const ScanReport &rep)
{
    json entries = json::array();
    for (const auto &e : rep.entries) entries.push_back(to_json(e.report));
    json irregular = json::array();
    for (const auto &[p, k] : rep.irregular) irregular.push_back(json{{"p", p}, {"k", k}});
    json results{{"entries", entries}, {"irregular_pairs", irregular}};
    if (rep.with_hecke) {
        json hecke = json::array();
        for (const auto &[key, r] : rep.hecke) hecke.push_back(to_json(r));
        results["hecke"] = hecke;
    }
    return results;
}

inline json scan_params_json(const ScanReport &rep)
{
    return json{{"pmax", rep.pmax}, {"with_hecke", rep.with_hecke}, {"k_range", "even 2 <= k < p-1"}};
}

inline ScanReport scan_from_json(const json &doc)
{
    ScanReport rep;
    rep.pmax = doc.at("params").at("pmax").get<unsigned>();
    rep.with_hecke = doc.at("params").at("with_hecke").get<bool>();
    const json &res = doc.at("results");
    for (const auto &e : res.at("entries")) {
        HypothesisReport h = hypothesis_from_json(e);
        rep.entries.push_back({h.p, h.k, h});
    }
    for (const auto &ip : res.at("irregular_pairs"))
        rep.irregular.emplace_back(ip.at("p").get<std::uint64_t>(), ip.at("k").get<unsigned>());
    if (res.contains("hecke"))
        for (const auto &h : res.at("hecke")) {
            EisensteinLocalReport r = eisenstein_from_json(h);
            rep.hecke.emplace(std::make_pair(std::uint64_t{r.p}, r.k), r);
        }
    return rep;
}

inline CommandOutput render_scan(const ScanReport &rep)
{
    CommandOutput out;
    out.document = envelope("scan", scan_params_json(rep), scan_results_json(rep));
    std::ostringstream csv;
    csv << "p,k,b_k_divides,b_k_exactly_divides,b_2_omega_divides,b_2_omega_exactly_divides,irregular";
    if (rep.with_hecke) csv << ",localized_dimension,structure";
    csv << "\n";
    for (const auto &e : rep.entries) {
        const auto &g = *e.report.gamma1;
        csv << e.p << "," << e.k << "," << g.bk.divides << "," << g.bk.exactly_divides << "," << g.b2_omega.divides << ","
            << g.b2_omega.exactly_divides << "," << g.bk.divides;
        if (rep.with_hecke) {
            const auto it = rep.hecke.find({e.p, e.k});
            if (it != rep.hecke.end())
                csv << "," << it->second.localized_dimension << "," << it->second.structure_descriptor;
            else
                csv << ",,";
        }
        csv << "\n";
    }
    out.csv = csv.str();
    std::ostringstream txt;
    txt << "irregular pairs (p, k) with p <= " << rep.pmax << ":";
    if (rep.irregular.empty()) txt << " none";
    txt << "\n";
    for (const auto &[p, k] : rep.irregular) {
        txt << "  (" << p << ", " << k << ")";
        const auto it = rep.hecke.find({p, k});
        if (it != rep.hecke.end())
            txt << "  d_m = " << it->second.localized_dimension << ", " << it->second.structure_descriptor;
        txt << "\n";
    }
    out.text = txt.str();
    return out;
}

inline CommandOutput cmd_breuil_table(std::uint32_t p, unsigned e)
{
    const FqField F = FqField::make(p, 1);
    if (e == 0 || e % p == 0) throw domain_error("breuil table: need e >= 1 with gcd(e, p) = 1");
    json rows = json::array();
    std::ostringstream csv, txt;
    csv << "r,s,a,b,hom_dimension,hom_degree,eta,extension_not_killed_by_p\n";
    txt << "Breuil side A(s,b) -> A(r,a); group-scheme side 0 -> G_{s,b} -> G -> G_{r,a} -> 0\n";
    txt << "p = " << p << ", e = " << e << "\n";
    txt << "r s a b | hom | eta | not killed by p\n";
    for (unsigned r = 0; r <= e; ++r)
        for (unsigned s = 0; s <= e; ++s)
            for (const auto &a : F.units())
                for (const auto &b : F.units()) {
                    const RankOneModule sub(F, e, r, a), quot(F, e, s, b);
                    const HomSpace hom = hom_space(quot, sub);
                    const auto etas = poly_strings(classify_eta(F, e, r, s, a, b).etas);
                    const bool ext = p2_extension_exists(F, e, {r, a}, {s, b});
                    json row{{"r", r},
                             {"s", s},
                             {"a", F.to_string(a)},
                             {"b", F.to_string(b)},
                             {"hom_dimension", hom.dimension},
                             {"eta", etas},
                             {"extension_not_killed_by_p", ext}};
                    row["hom_degree"] = hom.degree ? json(*hom.degree) : json(nullptr);
                    rows.push_back(row);
                    std::string eta_list;
                    for (const auto &s2 : etas) eta_list += (eta_list.empty() ? "" : ";") + s2;
                    csv << r << "," << s << "," << F.to_string(a) << "," << F.to_string(b) << "," << hom.dimension << ","
                        << (hom.degree ? std::to_string(*hom.degree) : "") << "," << eta_list << "," << ext << "\n";
                    txt << r << " " << s << " " << F.to_string(a) << " " << F.to_string(b) << " | "
                        << (hom.dimension ? "yes" : "no") << " | {" << (eta_list.empty() ? "" : eta_list) << "} | "
                        << (ext ? "yes" : "no") << "\n";
                }
    CommandOutput out;
    out.document = envelope("breuil table", json{{"p", p}, {"e", e}, {"field", "F_p"}}, json{{"rows", rows}});
    out.csv = csv.str();
    out.text = txt.str();
    return out;
}

inline CommandOutput cmd_breuil_descent(std::uint32_t p)
{
    if (p < 5 || !detail::is_prime(p)) throw domain_error("breuil descent: p must be a prime >= 5");
    json rows = json::array();
    std::ostringstream csv, txt;
    csv << "k,r_values,unique\n";
    txt << "order-p group schemes over e = p + 1 with generic fibre F_p(omega^k), p = " << p << "\n";
    for (unsigned k = 0; k + 1 < p; ++k) {
        const auto m = modules_for_character(p, k);
        rows.push_back(json{{"k", k}, {"r_values", m.rs}, {"a", "1"}, {"unique", m.unique}});
        std::string rs;
        for (unsigned r : m.rs) rs += (rs.empty() ? "" : ";") + std::to_string(r);
        csv << k << "," << rs << "," << m.unique << "\n";
        txt << "k = " << k << ": (r, a) in {";
        for (std::size_t i = 0; i < m.rs.size(); ++i) txt << (i ? ", " : "") << "(" << m.rs[i] << ", 1)";
        txt << "}" << (m.unique ? ", unique" : ", not unique") << "\n";
    }
    CommandOutput out;
    out.document = envelope("breuil descent", json{{"p", p}, {"e", p + 1}}, json{{"rows", rows}});
    out.csv = csv.str();
    out.text = txt.str();
    return out;
}

inline CommandOutput cmd_breuil_check_k(std::uint32_t p, unsigned k)
{
    const bool ok = theoremZ_check(p, k);
    const unsigned r = modules_for_character(p, k).rs.front();
    CommandOutput out;
    out.document = envelope("breuil check-k", json{{"p", p}, {"k", k}, {"e", p + 1}},
                            json{{"r", r}, {"a", "1"}, {"killed_by_p_confirmed", ok}});
    out.csv = "p,k,r,confirmed\n" + std::to_string(p) + "," + std::to_string(k) + "," + std::to_string(r) + "," +
              std::to_string(ok) + "\n";
    out.text = "p = " + std::to_string(p) + ", k = " + std::to_string(k) + ": unique module A(" + std::to_string(r) +
               ",1); self-extensions killed by p: " + (ok ? "confirmed" : "NOT confirmed") + "\n";
    return out;
}

inline CommandOutput cmd_hecke(std::uint32_t p, unsigned k, bool sturm)
{
    std::vector<std::uint32_t> primes = default_generator_primes();
    if (sturm) {
        for (auto l : sturm_primes(k)) primes.push_back(l);
        std::sort(primes.begin(), primes.end());
        primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    }
    primes.erase(std::remove(primes.begin(), primes.end(), p), primes.end());
    const EisensteinLocalReport rep = eisenstein_local_structure(p, k, primes);
    CommandOutput out;
    out.document = envelope("hecke", json{{"p", p}, {"k", k}, {"sturm", sturm}}, to_json(rep));
    std::ostringstream txt;
    txt << "p = " << p << ", k = " << k << "\n";
    txt << "generator primes:";
    for (auto l : rep.generator_primes) txt << " " << l;
    txt << "\n";
    txt << "dim S_k = " << rep.cusp_dimension << ", dim W = " << rep.eigenspace_dimension << "\n";
    txt << "d_m = " << rep.localized_dimension << ", local = " << (rep.is_local ? "yes" : "no")
        << ", monogenic = " << (rep.is_monogenic ? "yes" : "no") << ", e = " << rep.nilpotency_index << "\n";
    if (!rep.generator_label.empty()) txt << "generator: " << rep.generator_label << "\n";
    txt << "structure (mod p): " << rep.structure_descriptor << "\n";
    out.text = txt.str();
    out.csv = "p,k,cusp_dimension,localized_dimension,nilpotency_index,structure\n" + std::to_string(p) + "," +
              std::to_string(k) + "," + std::to_string(rep.cusp_dimension) + "," +
              std::to_string(rep.localized_dimension) + "," + std::to_string(rep.nilpotency_index) + "," +
              rep.structure_descriptor + "\n";
    out.exit_code = rep.classified ? exit_ok : exit_unclassified;
    return out;
}

inline CommandOutput cmd_bernoulli(unsigned n, std::optional<std::uint64_t> mod, int prec)
{
    const BigRational b = bernoulli_exact(n);
    json results{{"n", n}, {"value", big_string(b)}, {"numerator", b.get_num().get_str()},
                 {"denominator", b.get_den().get_str()}};
    json params{{"n", n}};
    std::ostringstream txt;
    txt << "B_" << n << " = " << b.get_str() << "\n";
    if (mod) {
        if (*mod < 2 || !detail::is_prime(*mod)) throw domain_error("bernoulli: --mod must be a prime");
        params["mod"] = *mod;
        params["prec"] = prec;
        if (b == 0) {
            results["residue"] = "0";
            results["p_integral"] = true;
            txt << "B_" << n << " = 0 mod " << *mod << "^" << prec << "\n";
        } else if (mpz_divisible_ui_p(b.get_den().get_mpz_t(), static_cast<unsigned long>(*mod))) {
            results["p_integral"] = false;
            results["valuation"] = p_valuation(b, *mod);
            txt << "B_" << n << " is not " << *mod << "-integral (valuation " << p_valuation(b, *mod) << ")\n";
        } else {
            const PadicApprox r = PadicApprox::from_rational(*mod, prec, b);
            results["p_integral"] = true;
            results["residue"] = std::to_string(r.residue());
            results["valuation"] = p_valuation(b, *mod);
            txt << "B_" << n << " = " << r.residue() << " mod " << *mod << "^" << prec << "\n";
        }
    }
    CommandOutput out;
    out.document = envelope("bernoulli", params, results);
    out.text = txt.str();
    out.csv = "n,value\n" + std::to_string(n) + "," + b.get_str() + "\n";
    return out;
}

} // namespace rtkit::cli

#endif
