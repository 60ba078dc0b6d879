#ifndef RTKIT_CLI_JSON_IO_HPP
#define RTKIT_CLI_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include <rtkit/bernoulli/hypotheses.hpp>
#include <rtkit/breuil/extension.hpp>
#include <rtkit/modforms/eisenstein.hpp>

namespace rtkit::cli
{

// std::map-backed, so keys serialize in sorted order.
using json = nlohmann::json;

inline constexpr const char *kToolName = "rtkit";
inline constexpr const char *kToolVersion = "0.1.0";

inline json envelope(const std::string &command, json params, json results)
{
    json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    params["command"] = command;
    j["params"] = std::move(params);
    j["results"] = std::move(results);
    return j;
}

inline std::string dump(const json &j) { return j.dump(2) + "\n"; }

inline std::string big_string(const BigRational &q) { return q.get_str(); }

inline json to_json(const DivisibilityFlag &f)
{
    return json{{"index", f.index},
                {"p_integral", f.p_integral},
                {"divides", f.divides},
                {"exactly_divides", f.exactly_divides},
                {"note", f.note}};
}

inline DivisibilityFlag divisibility_from_json(const json &j)
{
    DivisibilityFlag f;
    f.index = j.at("index").get<long long>();
    f.p_integral = j.at("p_integral").get<bool>();
    f.divides = j.at("divides").get<bool>();
    f.exactly_divides = j.at("exactly_divides").get<bool>();
    f.note = j.at("note").get<std::string>();
    return f;
}

inline json to_json(const HypothesisReport &r)
{
    json j{{"p", r.p}, {"k", r.k}, {"level", to_string(r.level)}};
    if (r.gamma1) j["gamma1"] = json{{"b_k", to_json(r.gamma1->bk)}, {"b_2_omega", to_json(r.gamma1->b2_omega)}};
    if (r.gamma0) {
        json g{{"k_admissible", r.gamma0->k_admissible},
               {"b_2k", to_json(r.gamma0->b2k)},
               {"b_complement", to_json(r.gamma0->b_complement)},
               {"coprime_b_2k", r.gamma0->coprime_b2k},
               {"coprime_b_complement", r.gamma0->coprime_b_complement}};
        g["k_prime"] = r.gamma0->kprime ? json(*r.gamma0->kprime) : json(nullptr);
        j["gamma0"] = std::move(g);
    }
    return j;
}

inline HypothesisReport hypothesis_from_json(const json &j)
{
    HypothesisReport r;
    r.p = j.at("p").get<std::uint64_t>();
    r.k = j.at("k").get<unsigned>();
    r.level = j.at("level").get<std::string>() == to_string(Level::gamma1_p) ? Level::gamma1_p : Level::gamma0_p2;
    if (j.contains("gamma1")) {
        const auto &g = j.at("gamma1");
        r.gamma1 = Gamma1Flags{divisibility_from_json(g.at("b_k")), divisibility_from_json(g.at("b_2_omega"))};
    }
    if (j.contains("gamma0")) {
        const auto &g = j.at("gamma0");
        Gamma0Flags f;
        if (!g.at("k_prime").is_null()) f.kprime = g.at("k_prime").get<unsigned>();
        f.k_admissible = g.at("k_admissible").get<bool>();
        f.b2k = divisibility_from_json(g.at("b_2k"));
        f.b_complement = divisibility_from_json(g.at("b_complement"));
        f.coprime_b2k = g.at("coprime_b_2k").get<bool>();
        f.coprime_b_complement = g.at("coprime_b_complement").get<bool>();
        r.gamma0 = f;
    }
    return r;
}

inline json to_json(const EisensteinLocalReport &r)
{
    return json{{"p", r.p},
                {"k", r.k},
                {"generator_primes", r.generator_primes},
                {"cusp_dimension", r.cusp_dimension},
                {"eigenspace_dimension", r.eigenspace_dimension},
                {"localized_dimension", r.localized_dimension},
                {"is_local", r.is_local},
                {"is_monogenic", r.is_monogenic},
                {"nilpotency_index", r.nilpotency_index},
                {"generator_label", r.generator_label},
                {"structure_descriptor", r.structure_descriptor},
                {"classified", r.classified},
                {"scope", "mod-p Hecke algebra localized at the Eisenstein maximal ideal"}};
}

inline EisensteinLocalReport eisenstein_from_json(const json &j)
{
    EisensteinLocalReport r;
    r.p = j.at("p").get<std::uint32_t>();
    r.k = j.at("k").get<unsigned>();
    r.generator_primes = j.at("generator_primes").get<std::vector<std::uint32_t>>();
    r.cusp_dimension = j.at("cusp_dimension").get<std::size_t>();
    r.eigenspace_dimension = j.at("eigenspace_dimension").get<std::size_t>();
    r.localized_dimension = j.at("localized_dimension").get<std::size_t>();
    r.is_local = j.at("is_local").get<bool>();
    r.is_monogenic = j.at("is_monogenic").get<bool>();
    r.nilpotency_index = j.at("nilpotency_index").get<std::size_t>();
    r.generator_label = j.at("generator_label").get<std::string>();
    r.structure_descriptor = j.at("structure_descriptor").get<std::string>();
    r.classified = j.at("classified").get<bool>();
    return r;
}

inline std::vector<std::string> poly_strings(const std::vector<UPoly> &v)
{
    std::vector<std::string> out;
    for (const auto &f : v) out.push_back(f.to_string());
    return out;
}

} // namespace rtkit::cli

#endif
