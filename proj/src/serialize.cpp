#include "ciqc/serialize.hpp"

#include "ciqc/errors.hpp"

#include <sstream>

namespace ciqc {

Json to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j)
{
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    if (j.is_number_integer())
        return Rational(j.get<long>());
    throw ConfigError("expected a rational, got " + j.dump());
}

Json to_json(const QPoly& p, const OutputOptions& opt)
{
    return opt.q_at_one ? to_string(p.at_one()) : p.to_string();
}

QPoly qpoly_from_json(const Json& j, int qmax)
{
    if (!j.is_string())
        throw ConfigError("expected a q-polynomial string, got " + j.dump());
    return parse_qpoly(j.get<std::string>(), qmax);
}

Json to_json(const RVector& v)
{
    Json out = Json::array();
    for (const auto& x : v)
        out.push_back(to_json(x));
    return out;
}

Json to_json(const RMatrix& m)
{
    Json out = Json::array();
    for (const auto& row : m)
        out.push_back(to_json(row));
    return out;
}

Json to_json(const QVector& v, const OutputOptions& opt)
{
    Json out = Json::array();
    for (const auto& x : v)
        out.push_back(to_json(x, opt));
    return out;
}

Json to_json(const QMatrix& m, const OutputOptions& opt)
{
    Json out = Json::array();
    for (const auto& row : m)
        out.push_back(to_json(row, opt));
    return out;
}

namespace {

Json caps_json(const SeriesCaps& caps)
{
    Json c;
    c["tdeg"] = caps.tdeg;
    c["scap"] = caps.scap;
    if (caps.qmax == QPoly::kUntruncated)
        c["qmax"] = nullptr;
    else
        c["qmax"] = caps.qmax;
    return c;
}

SeriesCaps caps_from_json(const Json& j)
{
    SeriesCaps caps;
    caps.tdeg = j.at("tdeg").get<int>();
    caps.scap = j.at("scap").get<int>();
    caps.qmax = j.at("qmax").is_null() ? QPoly::kUntruncated : j.at("qmax").get<int>();
    return caps;
}

Json integer_json(const Integer& z) { return z.get_str(); }

} // namespace

Json to_json(const TruncSeries& f, const OutputOptions& opt)
{
    Json out;
    out["num_t"] = f.num_t();
    out["caps"] = caps_json(f.caps());
    Json terms = Json::array();
    for (const auto& [m, c] : f.terms()) {
        Json t;
        t["t"] = m.t;
        t["s"] = m.s;
        t["c"] = to_json(c, opt);
        terms.push_back(t);
    }
    out["terms"] = terms;
    return out;
}

TruncSeries series_from_json(const Json& j)
{
    try {
        const int num_t = j.at("num_t").get<int>();
        SeriesCaps caps = caps_from_json(j.at("caps"));
        TruncSeries f(num_t, caps);
        for (const auto& t : j.at("terms")) {
            Monomial m{t.at("t").get<std::vector<int>>(), t.at("s").get<int>()};
            if (static_cast<int>(m.t.size()) != num_t)
                throw ConfigError("monomial has " + std::to_string(m.t.size()) + " exponents, expected " +
                                  std::to_string(num_t));
            f.add_term(m, qpoly_from_json(t.at("c"), caps.qmax));
        }
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed series: ") + e.what());
    }
}

Json to_json(const CIDescriptor& desc)
{
    Json j;
    j["label"] = desc.label();
    j["n"] = desc.n;
    j["d"] = desc.d;
    j["r"] = desc.r;
    j["a"] = desc.a;
    j["ell"] = integer_json(desc.ell);
    j["b"] = integer_json(desc.b);
    j["degree"] = integer_json(desc.degree);
    j["chi"] = integer_json(desc.chi);
    j["m"] = integer_json(desc.m);
    j["parity"] = desc.n % 2 == 0 ? "even" : "odd";
    j["monodromy"] = to_string(desc.monodromy);
    j["exceptional"] = desc.exceptional;
    if (desc.exceptional)
        j["exceptional_case"] = desc.exceptional_case;
    Json chern = Json::array();
    for (const auto& x : chern_integrals(desc))
        chern.push_back(integer_json(x));
    j["chern_integrals"] = chern;
    return j;
}

Json ring_json(const QuantumRingData& ring, const OutputOptions& opt)
{
    Json j;
    j["descriptor"] = ring.desc.label();
    j["qmax"] = ring.qmax;
    j["multH"] = to_json(ring.multH, opt);
    j["powers"] = to_json(ring.powers, opt);
    j["M"] = to_json(ring.M);
    j["W"] = to_json(ring.W);
    j["g"] = to_json(ring.g, opt);
    j["g_classical"] = to_json(ring.g_classical, opt);
    CConstant c = c_constant(ring);
    j["c"] = to_json(c.value);
    j["c_conjectured"] = to_json(c.conjectured);
    j["c_matches_conjecture"] = c.matches_conjecture;
    return j;
}

Json f1_json(const QuantumRingData& ring, const F1Jet& f1, const OutputOptions& opt)
{
    Json j;
    j["descriptor"] = ring.desc.label();
    j["origin"] = to_json(f1.origin, opt);
    j["tau"] = to_json(f1.tau, opt);
    j["t"] = to_json(f1.t, opt);
    j["tau_text"] = f1.tau.to_string();
    j["t_text"] = f1.t.to_string();
    if (ring.desc.a >= 2)
        j["matches_closed_form"] = f1_closed_form(ring, f1.tau.caps()) == f1.tau;
    return j;
}

Json f2_json(const F2Origin& origin, const std::vector<F2Gradient>& gradients, const OutputOptions& opt)
{
    Json j;
    j["integral"] = origin.integral;
    j["beta"] = origin.beta;
    j["quadratic"] = to_json(origin.quadratic);
    j["roots"] = to_json(origin.roots);
    j["degenerate"] = origin.degenerate;
    Json g = Json::array();
    for (const auto& x : gradients) {
        Json e;
        e["f2zero"] = to_json(x.f2zero);
        e["tau"] = to_json(x.tau, opt);
        e["t"] = to_json(x.t, opt);
        g.push_back(e);
    }
    j["gradients"] = g;
    return j;
}

Json to_json(const HigherKReport& r)
{
    Json j;
    Json entries = Json::array();
    for (const auto& e : r.entries) {
        Json x;
        x["k"] = e.k;
        x["target"] = e.target;
        x["beta"] = to_json(e.beta);
        x["admissible"] = e.admissible;
        x["coefficient"] = to_json(e.coefficient);
        x["determined"] = e.determined;
        entries.push_back(x);
    }
    j["entries"] = entries;
    if (r.unknown_target)
        j["unknown_target"] = *r.unknown_target;
    else
        j["unknown_target"] = nullptr;
    return j;
}

Json potential_json(const ReducedPotential& pot, const CIDescriptor& desc, const OutputOptions& opt)
{
    Json j;
    j["n"] = pot.n;
    j["d"] = desc.d;
    j["coords"] = pot.coords == Coordinates::T ? "t" : "tau";
    j["jet"] = pot.jet;
    j["F"] = to_json(pot.F, opt);
    return j;
}

ReducedPotential potential_from_json(const Json& j)
{
    try {
        const int n = j.at("n").get<int>();
        std::vector<int> d = j.at("d").get<std::vector<int>>();
        CIDescriptor desc = describe(n, d);
        const std::string coords = j.at("coords").get<std::string>();
        if (coords != "t" && coords != "tau")
            throw ConfigError("coords must be 't' or 'tau'");
        TruncSeries F = series_from_json(j.at("F"));
        int qmax = F.caps().qmax == QPoly::kUntruncated ? default_qmax(desc) : F.caps().qmax;
        QuantumRingData ring = build_ring(desc, qmax);
        const bool tau = coords == "tau";
        QMatrix ginv = tau ? pairings(ring).second : inverse(ring.g_classical, ring.qmax);
        return make_potential(desc, tau ? Coordinates::Tau : Coordinates::T, ginv, ring.powers_inv, F,
                              j.at("jet").get<std::vector<int>>());
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed potential file: ") + e.what());
    }
}

namespace {

Json violations_json(const Residual& r, const OutputOptions& opt)
{
    Json out = Json::array();
    for (const auto& [m, c] : r.violations()) {
        Json v;
        v["t"] = m.t;
        v["s"] = m.s;
        v["c"] = to_json(c, opt);
        out.push_back(v);
    }
    return out;
}

} // namespace

Json residual_json(const ReducedPotential& pot, const CIDescriptor& desc, const OutputOptions& opt)
{
    Json j;
    j["descriptor"] = desc.label();
    WdvvResiduals w = wdvv_residuals(pot, true);
    Json eqs = Json::object();
    auto add = [&](const Residual& r) {
        Json v = violations_json(r, opt);
        if (!v.empty())
            eqs[r.name] = v;
    };
    for (const auto& r : w.ambient)
        add(r);
    for (const auto& r : w.eq23)
        add(r);
    add(w.eq24);
    for (int order = 1; order <= pot.scap(); ++order) {
        ExpandedResiduals e = expand_order_k(pot, order);
        for (const auto& r : e.eq23)
            add(r);
        add(e.eq24);
    }
    add(euler_residual(pot, desc));
    j["violations"] = eqs;
    j["ok"] = eqs.empty();
    return j;
}

Json to_json(const PrimSquare& p)
{
    Json j;
    j["n"] = p.n;
    j["z"] = to_json(p.z);
    j["closed_form"] = to_json(p.closed);
    j["kernel_dim"] = p.kernel_dim;
    j["normalization"] = to_json(p.normalization);
    j["class"] = p.cls.to_string();
    return j;
}

Json to_json(const OmegaReport& r)
{
    Json j;
    j["n"] = r.n;
    j["chi"] = integer_json(r.chi);
    j["m"] = integer_json(r.m);
    j["z"] = to_json(r.z);
    j["z_matches_closed_form"] = r.z_matches_closed_form;
    j["sigma_integral"] = to_json(r.sigma_integral);
    j["sigma_expected"] = to_json(r.sigma_expected);
    j["sigma_from_chi"] = to_json(r.sigma_from_chi);
    j["annihilated"] = r.annihilated;
    j["quartic"] = to_json(r.quartic);
    j["quartic_short"] = to_json(r.quartic_short);
    j["quartic_expected"] = to_json(r.quartic_expected);
    j["m_form"] = to_json(r.m_form);
    j["m_form_matches"] = r.m_form_matches;
    j["f2"] = to_json(r.f2);
    j["ok"] = r.ok();
    return j;
}

Json to_json(const RankReport& r)
{
    Json j;
    j["n"] = r.n;
    j["kernel_dim"] = r.kernel_dim;
    j["sym2"] = integer_json(r.sym2);
    Json rows = Json::array();
    for (const auto& b : r.betti) {
        Json x;
        x["degree"] = b.degree;
        x["grassmannian"] = integer_json(b.grassmannian);
        x["fano"] = integer_json(b.fano);
        rows.push_back(x);
    }
    j["betti"] = rows;
    return j;
}

Json to_json(const Hilb2Report& r)
{
    Json j;
    j["all_delta"] = to_json(r.all_delta);
    j["sigma_pair"] = to_json(r.sigma_pair);
    j["sigma_square"] = to_json(r.sigma_square);
    j["primitive_rank"] = r.primitive_rank;
    j["lhs_contraction"] = to_json(r.lhs_contraction);
    j["rhs_contraction"] = to_json(r.rhs_contraction);
    j["f2"] = to_json(r.f2);
    j["sampled"] = r.sampled;
    j["samples_ok"] = r.samples_ok;
    return j;
}

Json to_json(const Hn11Report& r)
{
    Json j;
    j["n"] = r.n;
    j["residue_sum"] = to_json(r.residue_sum);
    j["residue_closed"] = to_json(r.residue_closed);
    j["psi_point"] = to_json(r.psi_point);
    j["value"] = to_json(r.value);
    j["closed"] = to_json(r.closed);
    return j;
}

Json to_json(const GenusOneReport& r)
{
    Json j;
    j["n"] = r.n;
    j["d"] = r.d;
    j["chi"] = integer_json(r.chi);
    j["hn11"] = to_json(r.hn11);
    j["h10"] = to_json(r.h10);
    j["psi11"] = to_json(r.psi11);
    j["psi_point"] = to_json(r.psi_point);
    j["f1_linear"] = to_json(r.f1_linear);
    j["f1_trace"] = to_json(r.f1_trace);
    j["f2"] = to_json(r.f2);
    j["roots"] = to_json(r.roots);
    j["experimental"] = r.experimental;
    return j;
}

namespace {

std::string scalar_text(const Json& j)
{
    if (j.is_string())
        return j.get<std::string>();
    if (j.is_null())
        return "";
    return j.dump();
}

bool all_scalars(const Json& j)
{
    for (const auto& x : j)
        if (x.is_structured())
            return false;
    return true;
}

void flatten(const Json& j, const std::string& path, std::ostringstream& os)
{
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), os);
    } else if (j.is_array() && all_scalars(j)) {
        os << path;
        for (const auto& x : j)
            os << '\t' << scalar_text(x);
        os << '\n';
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten(j[i], path + "." + std::to_string(i), os);
    } else {
        os << path << '\t' << scalar_text(j) << '\n';
    }
}

} // namespace

std::string json_to_tsv(const Json& j, bool header)
{
    std::ostringstream os;
    if (header)
        os << "key\tvalue\n";
    flatten(j, "", os);
    return os.str();
}

} // namespace ciqc
