#include "ciqc/rational.hpp"

#include "ciqc/errors.hpp"

#include <cctype>

namespace ciqc {

std::string to_string(const Rational& r)
{
    if (r.get_den() == 1)
        return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

namespace {

Integer parse_integer(std::string_view s, std::string_view whole)
{
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size())
        throw ConfigError("malformed rational: '" + std::string(whole) + "'");
    for (std::size_t i = start; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw ConfigError("malformed rational: '" + std::string(whole) + "'");
    std::string buf(s[0] == '+' ? s.substr(1) : s);
    return Integer(buf, 10);
}

} // namespace

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    Rational r;
    if (slash == std::string_view::npos) {
        r = Rational(parse_integer(text, text));
    } else {
        Integer num = parse_integer(text.substr(0, slash), text);
        Integer den = parse_integer(text.substr(slash + 1), text);
        if (den == 0)
            throw ConfigError("zero denominator: '" + std::string(text) + "'");
        r = Rational(num, den);
        r.canonicalize();
    }
    return r;
}

Rational pow(const Rational& base, long exponent)
{
    if (exponent < 0) {
        if (base == 0)
            throw DomainError("zero raised to a negative power");
        return pow(Rational(1) / base, -exponent);
    }
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), static_cast<unsigned long>(exponent));
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Integer factorial(long k)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(k < 0 ? 0 : k));
    return r;
}

Rational binomial(long top, long k)
{
    if (k < 0)
        return 0;
    if (top >= 0 && k > top)
        return 0;
    Rational r = 1;
    for (long i = 0; i < k; ++i)
        r = r * Rational(top - i) / Rational(i + 1);
    return r;
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

} // namespace ciqc
