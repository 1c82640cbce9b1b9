#include "ciqc/acceptance.hpp"
#include "ciqc/errors.hpp"
#include "ciqc/serialize.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

using namespace ciqc;

namespace {

enum Exit { kOk = 0, kUsage = 1, kDomain = 2, kVerification = 3 };

struct Common {
    int n = 0;
    std::string d = "3";
    std::optional<int> qmax;
    std::string format = "json";
    bool no_header = false;
    std::optional<int> q;
    std::uint64_t seed = 1;
};

void add_common(CLI::App* cmd, Common& c, bool need_n, bool need_d, bool want_qmax)
{
    auto* n = cmd->add_option("--n", c.n, "dimension")->check(CLI::PositiveNumber);
    if (need_n)
        n->required();
    auto* d = cmd->add_option("--d", c.d, "multidegree, e.g. 3 or 2,2");
    if (need_d)
        d->required();
    if (want_qmax)
        cmd->add_option("--qmax", c.qmax, "q truncation (default from CIQC_QMAX, else ceil(2n/a)+1)")
            ->check(CLI::PositiveNumber);
    cmd->add_option("--format", c.format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));
    cmd->add_flag("--no-header", c.no_header, "omit the TSV header");
    cmd->add_option("--q", c.q, "substitute q on output")->check(CLI::IsMember({1}));
}

int resolve_qmax(const Common& c, const CIDescriptor& desc)
{
    if (c.qmax)
        return *c.qmax;
    if (const char* env = std::getenv("CIQC_QMAX")) {
        try {
            std::size_t used = 0;
            int v = std::stoi(env, &used);
            if (used == std::string(env).size() && v >= 1)
                return v;
        } catch (const std::logic_error&) {
        }
        throw ConfigError(std::string("CIQC_QMAX must be a positive integer, got '") + env + "'");
    }
    return default_qmax(desc);
}

OutputOptions output_options(const Common& c) { return OutputOptions{c.q.has_value()}; }

void emit(const Json& j, const Common& c)
{
    if (c.format == "tsv")
        std::cout << json_to_tsv(j, !c.no_header);
    else
        std::cout << j.dump(2) << '\n';
}

CIDescriptor reconstructible(const Common& c)
{
    CIDescriptor desc = describe(c.n, parse_multidegree(c.d));
    require_reconstructible(desc);
    return desc;
}

int cmd_info(const Common& c)
{
    CIDescriptor desc = describe(c.n, parse_multidegree(c.d));
    emit(to_json(desc), c);
    if (desc.exceptional) {
        std::cerr << "ciqc: " << desc.label() << " is exceptional: " << desc.exceptional_case << '\n';
        return kDomain;
    }
    return kOk;
}

int cmd_smallqh(const Common& c)
{
    CIDescriptor desc = reconstructible(c);
    QuantumRingData ring = build_ring(desc, resolve_qmax(c, desc));
    emit(ring_json(ring, output_options(c)), c);
    return kOk;
}

int cmd_f1(const Common& c)
{
    CIDescriptor desc = reconstructible(c);
    QuantumRingData ring = build_ring(desc, resolve_qmax(c, desc));
    emit(f1_json(ring, f1_series(ring), output_options(c)), c);
    return kOk;
}

int cmd_f2(const Common& c)
{
    CIDescriptor desc = reconstructible(c);
    QuantumRingData ring = build_ring(desc, resolve_qmax(c, desc));
    F1Jet f1 = f1_series(ring);
    F2Origin origin = f2_at_zero(ring, f1);
    if (c.format == "tsv") {
        if (!c.no_header)
            std::cout << "roots\n";
        for (std::size_t i = 0; i < origin.roots.size(); ++i)
            std::cout << (i ? "\t" : "") << to_string(origin.roots[i]);
        std::cout << '\n';
        return kOk;
    }
    std::vector<F2Gradient> grads;
    for (const auto& phi : origin.roots)
        grads.push_back(f2_gradient(ring, f1, phi));
    Json j = f2_json(origin, grads, output_options(c));
    j["gradient_closed_form"] = to_json(f2_gradient_closed_form(ring), output_options(c));
    emit(j, c);
    return kOk;
}

int cmd_higherk(const Common& c, int kmax, const std::string& f2zero)
{
    CIDescriptor desc = reconstructible(c);
    QuantumRingData ring = build_ring(desc, resolve_qmax(c, desc));
    emit(to_json(higher_k_coeffs(ring, kmax, parse_rational(f2zero))), c);
    return kOk;
}

int cmd_residual(const Common& c, const std::string& load, const std::string& dump, const std::string& coords)
{
    std::optional<ReducedPotential> pot;
    CIDescriptor desc;
    if (!load.empty()) {
        std::ifstream in(load);
        if (!in)
            throw ConfigError("cannot open " + load);
        Json j;
        try {
            j = Json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(load + ": " + e.what());
        }
        pot = potential_from_json(j);
        desc = describe(j.at("n").get<int>(), j.at("d").get<std::vector<int>>());
    } else {
        desc = reconstructible(c);
        QuantumRingData ring = build_ring(desc, resolve_qmax(c, desc));
        pot = reconstructed_potential(ring, coords == "tau" ? Coordinates::Tau : Coordinates::T);
    }
    if (!dump.empty()) {
        std::ofstream out(dump);
        if (!out)
            throw ConfigError("cannot write " + dump);
        out << potential_json(*pot, desc).dump(2) << '\n';
    }
    Json j = residual_json(*pot, desc, output_options(c));
    emit(j, c);
    return j["ok"].get<bool>() ? kOk : kVerification;
}

int cmd_fano(const Common& c, const std::string& check)
{
    if (c.n < 3)
        throw DomainError("the Fano variety of lines needs n >= 3");
    Json j;
    j["n"] = c.n;
    if (check == "all" || check == "cubic7")
        j["cubic7"] = to_json(prim_square_class(c.n));
    if (check == "all" || check == "cubic13" || check == "cubic16") {
        OmegaReport r = omega_checks(c.n);
        Json o = to_json(r);
        if (check == "cubic13") {
            Json s;
            for (const char* k : {"sigma_integral", "sigma_expected", "sigma_from_chi"})
                s[k] = o[k];
            o = s;
        } else if (check == "cubic16") {
            Json s;
            for (const char* k : {"quartic", "quartic_short", "quartic_expected", "m_form", "m_form_matches", "f2"})
                s[k] = o[k];
            o = s;
        }
        j[check == "all" ? "omega" : check] = o;
    }
    if (check == "all")
        j["ranks"] = to_json(rank_estimates(c.n));
    if (check == "hilb2" || (check == "all" && c.n == 4)) {
        if (c.n != 4)
            throw DomainError("the Hilbert-square cross-check is for n = 4");
        Hilb2Report h = hilb2_check(c.seed);
        j["hilb2"] = to_json(h);
        if (h.f2 != 1 || !h.samples_ok)
            throw VerificationError("Hilbert-square cross-check gives F2(0) = " + to_string(h.f2));
    }
    emit(j, c);
    return kOk;
}

int cmd_genus1(const Common& c)
{
    std::vector<int> d = parse_multidegree(c.d);
    GenusOneReport g = f2_from_genus1(c.n, d);
    Json j = to_json(g);
    if (describe(c.n, d).is_cubic())
        j["hn11_check"] = to_json(hn_11(c.n));
    emit(j, c);
    return kOk;
}

int cmd_verify(const Common& c, int item)
{
    std::vector<CheckResult> results = item > 0 ? acceptance_item(item, c.seed) : run_acceptance(c.seed);
    if (c.n > 0) {
        auto extra = descriptor_checks(c.n, parse_multidegree(c.d));
        results.insert(results.end(), extra.begin(), extra.end());
    }
    bool ok = true;
    for (const auto& r : results)
        ok = ok && r.pass;
    if (c.format == "json") {
        Json arr = Json::array();
        for (const auto& r : results) {
            Json x;
            x["item"] = r.item;
            x["name"] = r.name;
            x["pass"] = r.pass;
            x["detail"] = r.detail;
            arr.push_back(x);
        }
        Json j;
        j["ok"] = ok;
        j["checks"] = arr;
        std::cout << j.dump(2) << '\n';
    } else {
        if (!c.no_header)
            std::cout << "status\titem\tname\tdetail\n";
        for (const auto& r : results)
            std::cout << (r.pass ? "PASS" : "FAIL") << '\t' << r.item << '\t' << r.name << '\t' << r.detail << '\n';
    }
    return ok ? kOk : kVerification;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"ciqc: quantum cohomology of Fano complete intersections in exact arithmetic"};
    app.require_subcommand(1);

    Common info, smallqh, f1, f2, higherk, residual, fano, genus1, verify;
    auto* c_info = app.add_subcommand("info", "describe X_n(d)");
    add_common(c_info, info, true, true, false);
    auto* c_smallqh = app.add_subcommand("smallqh", "small quantum ring, pairings, W, M and c");
    add_common(c_smallqh, smallqh, true, true, true);
    auto* c_f1 = app.add_subcommand("f1", "degree-2 jet of F^(1)");
    add_common(c_f1, f1, true, true, true);
    auto* c_f2 = app.add_subcommand("f2", "F^(2)(0) root set and gradients");
    add_common(c_f2, f2, true, true, true);

    auto* c_higherk = app.add_subcommand("higherk", "coefficients of F^(k+1)(0) for d = (3) or (2,2)");
    add_common(c_higherk, higherk, true, true, true);
    int kmax = 6;
    std::string f2zero = "1";
    c_higherk->add_option("--kmax", kmax, "largest k")->check(CLI::Range(2, 40));
    c_higherk->add_option("--f2zero", f2zero, "value of F^(2)(0)");

    auto* c_residual = app.add_subcommand("residual", "reduced WDVV and Euler residuals of a potential");
    add_common(c_residual, residual, false, false, true);
    std::string load, dump, coords = "t";
    c_residual->add_option("--load", load, "potential JSON file");
    c_residual->add_option("--dump", dump, "write the checked potential as JSON");
    c_residual->add_option("--coords", coords, "t or tau")->check(CLI::IsMember({"t", "tau"}));

    auto* c_fano = app.add_subcommand("fano-lines", "Schubert-calculus checks on the Fano variety of lines");
    add_common(c_fano, fano, true, false, false);
    std::string check = "all";
    c_fano->add_option("--check", check, "all, cubic7, cubic13, cubic16 or hilb2")
        ->check(CLI::IsMember({"all", "cubic7", "cubic13", "cubic16", "hilb2"}));
    c_fano->add_option("--seed", fano.seed, "seed for sampled checks");

    auto* c_genus1 = app.add_subcommand("genus1", "F^(2)(0) from the degree-one genus-one relation");
    add_common(c_genus1, genus1, true, false, false);

    auto* c_verify = app.add_subcommand("verify", "run the acceptance checks");
    add_common(c_verify, verify, false, false, false);
    int item = 0;
    c_verify->add_option("--item", item, "run a single item")->check(CLI::Range(1, kAcceptanceItems));
    c_verify->add_option("--seed", verify.seed, "seed for randomized checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (c_info->parsed())
            return cmd_info(info);
        if (c_smallqh->parsed())
            return cmd_smallqh(smallqh);
        if (c_f1->parsed())
            return cmd_f1(f1);
        if (c_f2->parsed())
            return cmd_f2(f2);
        if (c_higherk->parsed())
            return cmd_higherk(higherk, kmax, f2zero);
        if (c_residual->parsed()) {
            if (load.empty() && residual.n == 0)
                throw ConfigError("residual needs --load or --n/--d");
            return cmd_residual(residual, load, dump, coords);
        }
        if (c_fano->parsed())
            return cmd_fano(fano, check);
        if (c_genus1->parsed())
            return cmd_genus1(genus1);
        if (c_verify->parsed())
            return cmd_verify(verify, item);
    } catch (const DomainError& e) {
        std::cerr << "ciqc: " << e.what() << '\n';
        return kDomain;
    } catch (const VerificationError& e) {
        std::cerr << "ciqc: verification failed: " << e.what() << '\n';
        return kVerification;
    } catch (const ConsistencyError& e) {
        std::cerr << "ciqc: internal check failed: " << e.what() << '\n';
        return kVerification;
    } catch (const ConfigError& e) {
        std::cerr << "ciqc: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
