#include "ciqc/qpoly.hpp"

#include "ciqc/errors.hpp"

#include <algorithm>

namespace ciqc {

QPoly::QPoly(const Rational& c, int qmax) : qmax_(qmax)
{
    if (c != 0 && qmax >= 0)
        terms_.emplace(0, c);
}

QPoly QPoly::monomial(const Rational& c, int exponent, int qmax)
{
    if (exponent < 0)
        throw DomainError("negative q-exponent");
    QPoly p(Rational(0), qmax);
    p.set_coeff(exponent, c);
    return p;
}

Rational QPoly::coeff(int exponent) const
{
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Rational(0) : it->second;
}

void QPoly::set_coeff(int exponent, const Rational& c)
{
    if (exponent > qmax_)
        return;
    if (c == 0)
        terms_.erase(exponent);
    else
        terms_[exponent] = c;
}

void QPoly::add_to(int exponent, const Rational& c)
{
    if (exponent > qmax_ || c == 0)
        return;
    auto [it, inserted] = terms_.emplace(exponent, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

int QPoly::min_degree() const { return terms_.empty() ? -1 : terms_.begin()->first; }
int QPoly::max_degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }

QPoly QPoly::truncated(int qmax) const
{
    QPoly r(Rational(0), std::min(qmax, qmax_));
    for (const auto& [e, c] : terms_)
        r.set_coeff(e, c);
    return r;
}

QPoly QPoly::q_derivative() const
{
    QPoly r(Rational(0), qmax_);
    for (const auto& [e, c] : terms_)
        r.set_coeff(e, c * e);
    return r;
}

Rational QPoly::at_one() const
{
    Rational s = 0;
    for (const auto& [e, c] : terms_)
        s += c;
    return s;
}

QPoly& QPoly::operator+=(const QPoly& o)
{
    qmax_ = std::min(qmax_, o.qmax_);
    for (auto it = terms_.begin(); it != terms_.end();)
        it = it->first > qmax_ ? terms_.erase(it) : std::next(it);
    for (const auto& [e, c] : o.terms_)
        add_to(e, c);
    return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) { return *this += -o; }

QPoly& QPoly::operator*=(const QPoly& o)
{
    QPoly r(Rational(0), std::min(qmax_, o.qmax_));
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_)
            if (e1 + e2 <= r.qmax_)
                r.add_to(e1 + e2, c1 * c2);
    *this = std::move(r);
    return *this;
}

QPoly& QPoly::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_)
        v *= c;
    return *this;
}

QPoly QPoly::operator-() const
{
    QPoly r = *this;
    for (auto& [e, v] : r.terms_)
        v = -v;
    return r;
}

std::string QPoly::to_string() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational mag = abs(c);
        bool neg = c < 0;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        std::string q = e == 0 ? "" : (e == 1 ? "q" : "q^" + std::to_string(e));
        if (q.empty())
            out += ciqc::to_string(mag);
        else if (mag == 1)
            out += q;
        else
            out += ciqc::to_string(mag) + "*" + q;
    }
    return out;
}

} // namespace ciqc

namespace ciqc {

QPoly parse_qpoly(std::string_view text, int qmax)
{
    auto trim = [](std::string_view s) {
        while (!s.empty() && s.front() == ' ')
            s.remove_prefix(1);
        while (!s.empty() && s.back() == ' ')
            s.remove_suffix(1);
        return s;
    };
    auto fail = [&]() { throw ConfigError("malformed q-polynomial: '" + std::string(text) + "'"); };
    QPoly out(Rational(0), qmax);
    std::string_view rest = trim(text);
    if (rest.empty())
        fail();
    bool neg = false;
    if (rest.front() == '-') {
        neg = true;
        rest = trim(rest.substr(1));
    }
    while (true) {
        std::size_t cut = std::string_view::npos;
        bool next_neg = false;
        for (std::size_t i = 1; i + 2 < rest.size(); ++i)
            if (rest[i] == ' ' && (rest[i + 1] == '+' || rest[i + 1] == '-') && rest[i + 2] == ' ') {
                cut = i;
                next_neg = rest[i + 1] == '-';
                break;
            }
        std::string_view term = trim(rest.substr(0, cut));
        if (term.empty())
            fail();
        Rational c(1);
        int e = 0;
        std::size_t qpos = term.find('q');
        if (qpos == std::string_view::npos) {
            c = parse_rational(term);
        } else {
            std::string_view head = term.substr(0, qpos), tail = term.substr(qpos + 1);
            if (!head.empty()) {
                if (head.back() != '*')
                    fail();
                c = parse_rational(head.substr(0, head.size() - 1));
            }
            if (tail.empty())
                e = 1;
            else if (tail.front() == '^') {
                try {
                    std::size_t used = 0;
                    e = std::stoi(std::string(tail.substr(1)), &used);
                    if (used != tail.size() - 1 || e < 0)
                        fail();
                } catch (const std::logic_error&) {
                    fail();
                }
            } else
                fail();
        }
        out.add_to(e, neg ? Rational(-c) : c);
        if (cut == std::string_view::npos)
            break;
        neg = next_neg;
        rest = rest.substr(cut + 3);
    }
    return out;
}

} // namespace ciqc
