#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <rtkit/cli/commands.hpp>

namespace
{

using namespace rtkit;
using namespace rtkit::cli;

enum class Format { text, json, csv };

int emit(const CommandOutput &out, Format fmt, const std::string &path)
{
    std::string body;
    switch (fmt) {
    case Format::json: body = dump(out.document); break;
    case Format::csv: body = out.csv; break;
    default: body = out.text; break;
    }
    if (path.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(path, std::ios::binary);
        if (!f) {
            std::cerr << "rtkit: cannot open " << path << " for writing\n";
            return exit_usage;
        }
        f << body;
        if (!f.good()) {
            std::cerr << "rtkit: write to " << path << " failed\n";
            return exit_usage;
        }
    }
    return out.exit_code;
}

Format pick(bool json_flag, bool csv_flag, Format fallback)
{
    if (json_flag) return Format::json;
    if (csv_flag) return Format::csv;
    return fallback;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"rtkit: Bernoulli predicates, Breuil-module calculus and Eisenstein Hecke algebras mod p"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    // scan
    unsigned scan_pmax = 0;
    bool scan_hecke = false, scan_csv = false, scan_force = false;
    std::string scan_out;
    auto *scan = app.add_subcommand("scan", "hypothesis flags and irregular pairs for primes p <= pmax (JSON by default)");
    scan->add_option("--pmax", scan_pmax, "largest prime to scan")->required();
    scan->add_flag("--with-hecke", scan_hecke, "attach the Eisenstein local structure for each irregular pair");
    scan->add_option("--out", scan_out, "write to FILE instead of stdout");
    scan->add_flag("--csv", scan_csv, "emit CSV instead of JSON");
    scan->add_flag("--force", scan_force, "allow pmax above 1000");

    // breuil
    auto *breuil = app.add_subcommand("breuil", "rank-one Breuil modules and order-p^2 extensions");
    breuil->require_subcommand(1);
    std::uint32_t bp = 0;
    unsigned be = 0, bk = 0;
    bool b_json = false, b_csv = false;
    auto *table = breuil->add_subcommand("table", "hom, eta and extension criterion for all (r, s, a, b) over F_p");
    table->add_option("--p", bp, "odd prime")->required();
    table->add_option("--e", be, "ramification degree prime to p")->required();
    auto *descent = breuil->add_subcommand("descent", "order-p group schemes with descent data over e = p + 1");
    descent->add_option("--p", bp, "prime >= 5")->required();
    auto *checkk = breuil->add_subcommand("check-k", "confirm self-extensions are killed by p over e = p + 1");
    checkk->add_option("--p", bp, "prime >= 5")->required();
    checkk->add_option("--k", bk, "character exponent, 0 <= k < p-1")->required();
    for (auto *sc : {table, descent, checkk}) {
        sc->add_flag("--json", b_json, "emit JSON");
        sc->add_flag("--csv", b_csv, "emit CSV");
    }

    // hecke
    std::uint32_t hp = 0;
    unsigned hk = 0;
    bool h_sturm = false, h_json = false;
    auto *hecke = app.add_subcommand("hecke", "mod-p Hecke algebra localized at the Eisenstein maximal ideal");
    hecke->add_option("--p", hp, "prime >= 5")->required();
    hecke->add_option("--k", hk, "even weight >= 4")->required();
    hecke->add_flag("--sturm", h_sturm, "also use every prime l <= ceil(k/12) + 1");
    hecke->add_flag("--json", h_json, "emit JSON");

    // bernoulli
    unsigned bn = 0;
    std::optional<std::uint64_t> bmod;
    int bprec = 1;
    bool bn_json = false;
    auto *bern = app.add_subcommand("bernoulli", "exact Bernoulli number B_n (B_1 = +1/2)");
    bern->add_option("--n", bn, "index, 0 <= n <= 5000")->required();
    auto *mod_opt = bern->add_option("--mod", bmod, "reduce modulo this prime");
    bern->add_option("--prec", bprec, "reduce modulo p^prec (default 1)")->needs(mod_opt)->check(CLI::Range(1, 12));
    bern->add_flag("--json", bn_json, "emit JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*scan) {
            if (scan_pmax > kScanDefaultBound && scan_force)
                std::cerr << "rtkit: warning: scanning beyond the default bound of " << kScanDefaultBound << "\n";
            const ScanReport rep = cmd_scan(scan_pmax, scan_hecke, scan_force);
            return emit(render_scan(rep), scan_csv ? Format::csv : Format::json, scan_out);
        }
        if (*breuil) {
            const Format fmt = pick(b_json, b_csv, Format::text);
            if (*table) return emit(cmd_breuil_table(bp, be), fmt, "");
            if (*descent) return emit(cmd_breuil_descent(bp), fmt, "");
            return emit(cmd_breuil_check_k(bp, bk), fmt, "");
        }
        if (*hecke) return emit(cmd_hecke(hp, hk, h_sturm), h_json ? Format::json : Format::text, "");
        if (*bern) return emit(cmd_bernoulli(bn, bmod, bprec), bn_json ? Format::json : Format::text, "");
    } catch (const rtkit::domain_error &e) {
        std::cerr << "rtkit: " << e.what() << "\n";
        return exit_usage;
    } catch (const rtkit::precision_error &e) {
        std::cerr << "rtkit: " << e.what() << " (achievable precision " << e.achievable << ")\n";
        return exit_usage;
    } catch (const rtkit::internal_error &e) {
        std::cerr << "rtkit: internal error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
