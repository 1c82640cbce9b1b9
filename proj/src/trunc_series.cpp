#include "ciqc/trunc_series.hpp"

#include "ciqc/errors.hpp"

#include <numeric>

namespace ciqc {

int Monomial::tdeg() const { return std::accumulate(t.begin(), t.end(), 0); }

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const
{
    if (a.s != b.s)
        return a.s < b.s;
    int da = a.tdeg(), db = b.tdeg();
    if (da != db)
        return da < db;
    return a.t < b.t;
}

TruncSeries::TruncSeries(int num_t, SeriesCaps caps) : num_t_(num_t), caps_(caps) {}

TruncSeries TruncSeries::constant(int num_t, SeriesCaps caps, const QPoly& c)
{
    TruncSeries r(num_t, caps);
    r.add_term(Monomial{std::vector<int>(num_t, 0), 0}, c);
    return r;
}

TruncSeries TruncSeries::t_var(int num_t, SeriesCaps caps, int i)
{
    TruncSeries r(num_t, caps);
    Monomial m{std::vector<int>(num_t, 0), 0};
    m.t.at(i) = 1;
    r.add_term(m, QPoly(1));
    return r;
}

TruncSeries TruncSeries::s_var(int num_t, SeriesCaps caps)
{
    TruncSeries r(num_t, caps);
    r.add_term(Monomial{std::vector<int>(num_t, 0), 1}, QPoly(1));
    return r;
}

bool TruncSeries::admits(const Monomial& m) const
{
    return m.s <= caps_.scap && m.tdeg() <= caps_.tdeg;
}

void TruncSeries::add_term(const Monomial& m, const QPoly& c)
{
    if (static_cast<int>(m.t.size()) != num_t_)
        throw ConfigError("monomial has wrong number of t-variables");
    if (!admits(m) || c.is_zero())
        return;
    QPoly cc = c.truncated(caps_.qmax);
    if (cc.is_zero())
        return;
    auto [it, inserted] = terms_.emplace(m, cc);
    if (!inserted) {
        it->second += cc;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

QPoly TruncSeries::coeff(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? QPoly(0) : it->second;
}

QPoly TruncSeries::constant_term() const
{
    return coeff(Monomial{std::vector<int>(num_t_, 0), 0});
}

static void require_compatible(const TruncSeries& a, const TruncSeries& b)
{
    if (a.num_t() != b.num_t() || !(a.caps() == b.caps()))
        throw ConfigError("series caps or variable sets differ");
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o)
{
    require_compatible(*this, o);
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o)
{
    require_compatible(*this, o);
    for (const auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

TruncSeries& TruncSeries::operator*=(const QPoly& c)
{
    TruncSeries r(num_t_, caps_);
    for (const auto& [m, v] : terms_)
        r.add_term(m, v * c);
    *this = std::move(r);
    return *this;
}

TruncSeries mul_truncated(const TruncSeries& a, const TruncSeries& b)
{
    require_compatible(a, b);
    TruncSeries r(a.num_t_, a.caps_);
    for (const auto& [ma, ca] : a.terms_) {
        int da = ma.tdeg();
        for (const auto& [mb, cb] : b.terms_) {
            if (ma.s + mb.s > r.caps_.scap || da + mb.tdeg() > r.caps_.tdeg)
                continue;
            Monomial m{ma.t, ma.s + mb.s};
            for (int i = 0; i < r.num_t_; ++i)
                m.t[i] += mb.t[i];
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

TruncSeries TruncSeries::d_t(int i) const
{
    TruncSeries r(num_t_, caps_);
    for (const auto& [m, c] : terms_) {
        if (m.t.at(i) == 0)
            continue;
        Monomial d = m;
        d.t[i] -= 1;
        r.add_term(d, c * Rational(m.t[i]));
    }
    return r;
}

TruncSeries TruncSeries::d_s() const
{
    TruncSeries r(num_t_, caps_);
    for (const auto& [m, c] : terms_) {
        if (m.s == 0)
            continue;
        Monomial d = m;
        d.s -= 1;
        r.add_term(d, c * Rational(m.s));
    }
    return r;
}

TruncSeries TruncSeries::s_coefficient(int k) const
{
    TruncSeries r(num_t_, caps_);
    for (const auto& [m, c] : terms_)
        if (m.s == k)
            r.add_term(Monomial{m.t, 0}, c);
    return r;
}

TruncSeries TruncSeries::degree_at_most(int d) const
{
    TruncSeries r(num_t_, caps_);
    for (const auto& [m, c] : terms_)
        if (m.tdeg() <= d)
            r.add_term(m, c);
    return r;
}

TruncSeries TruncSeries::with_caps(SeriesCaps caps) const
{
    TruncSeries r(num_t_, caps);
    for (const auto& [m, c] : terms_)
        r.add_term(m, c);
    return r;
}

TruncSeries TruncSeries::linear_substitute(const std::vector<std::vector<QPoly>>& L) const
{
    if (static_cast<int>(L.size()) != num_t_)
        throw ConfigError("substitution matrix has wrong size");
    std::vector<TruncSeries> images;
    for (int i = 0; i < num_t_; ++i) {
        TruncSeries img(num_t_, caps_);
        for (int j = 0; j < num_t_; ++j) {
            Monomial m{std::vector<int>(num_t_, 0), 0};
            m.t[j] = 1;
            img.add_term(m, L[i].at(j));
        }
        images.push_back(std::move(img));
    }
    TruncSeries r(num_t_, caps_);
    for (const auto& [m, c] : terms_) {
        Monomial base{std::vector<int>(num_t_, 0), m.s};
        TruncSeries prod = constant(num_t_, caps_, QPoly(1));
        TruncSeries sfac(num_t_, caps_);
        sfac.add_term(base, c);
        prod = mul_truncated(prod, sfac);
        for (int i = 0; i < num_t_; ++i)
            for (int e = 0; e < m.t[i]; ++e)
                prod = mul_truncated(prod, images[i]);
        r += prod;
    }
    return r;
}

std::string TruncSeries::to_string() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
        if (!out.empty())
            out += " + ";
        out += "(" + c.to_string() + ")";
        for (int i = 0; i < num_t_; ++i) {
            if (m.t[i] == 0)
                continue;
            out += "*t" + std::to_string(i);
            if (m.t[i] > 1)
                out += "^" + std::to_string(m.t[i]);
        }
        if (m.s > 0)
            out += m.s == 1 ? "*s" : "*s^" + std::to_string(m.s);
    }
    return out;
}

} // namespace ciqc
