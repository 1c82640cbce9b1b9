#include "ciqc/ci_geometry.hpp"

#include "ciqc/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ciqc {

std::string to_string(Monodromy m)
{
    switch (m) {
    case Monodromy::Orthogonal: return "Orthogonal";
    case Monodromy::Symplectic: return "Symplectic";
    case Monodromy::Z2: return "Z2";
    case Monodromy::WeylD: return "WeylD";
    case Monodromy::WeylE6: return "WeylE6";
    case Monodromy::Trivial: return "Trivial";
    }
    return "?";
}

std::string CIDescriptor::label() const
{
    std::string s = "X_" + std::to_string(n) + "(";
    for (std::size_t i = 0; i < d.size(); ++i)
        s += (i ? "," : "") + std::to_string(d[i]);
    return s + ")";
}

std::vector<Rational> chern_class_coefficients(const CIDescriptor& desc)
{
    // (1+x)^{n+r+1} / prod(1+d_i x), truncated at x^n.
    const int n = desc.n;
    std::vector<Rational> c(n + 1, Rational(0));
    for (int j = 0; j <= n; ++j)
        c[j] = binomial(n + desc.r + 1, j);
    for (int di : desc.d) {
        // divide by (1 + di x): c'_j = c_j - di c'_{j-1}
        for (int j = 1; j <= n; ++j)
            c[j] -= Rational(di) * c[j - 1];
    }
    return c;
}

std::vector<Integer> chern_integrals(const CIDescriptor& desc)
{
    auto c = chern_class_coefficients(desc);
    std::vector<Integer> out(desc.n + 1);
    for (int j = 0; j <= desc.n; ++j) {
        Rational v = Rational(desc.degree) * c[desc.n - j];
        out[j] = v.get_num();
    }
    return out;
}

CIDescriptor describe(int n, std::vector<int> d)
{
    if (n < 1)
        throw DomainError("dimension must be at least 1");
    if (d.empty())
        throw DomainError("multidegree must be nonempty");
    for (int di : d)
        if (di < 2)
            throw DomainError("every degree must be at least 2");
    std::sort(d.begin(), d.end());

    CIDescriptor x;
    x.n = n;
    x.d = d;
    x.r = static_cast<int>(d.size());
    x.a = n + x.r + 1 - std::accumulate(d.begin(), d.end(), 0);
    x.ell = 1;
    x.b = 1;
    x.degree = 1;
    for (int di : d) {
        x.ell *= factorial(di);
        Integer p;
        mpz_ui_pow_ui(p.get_mpz_t(), di, di);
        x.b *= p;
        x.degree *= di;
    }
    x.chi = chern_integrals(x)[0];
    Integer sign = (n % 2 == 0) ? 1 : -1;
    x.m = sign * (x.chi - (n + 1));

    const bool quadric = d.size() == 1 && d[0] == 2;
    const bool pair = d.size() == 2 && d[0] == 2 && d[1] == 2;
    const bool cubic_surface = d.size() == 1 && d[0] == 3 && n == 2;
    Integer table_m = -1;
    if (quadric) {
        x.exceptional = true;
        x.exceptional_case = "quadric hypersurface X_n(2)";
        x.monodromy = n % 2 == 0 ? Monodromy::Z2 : Monodromy::Trivial;
        table_m = n % 2 == 0 ? 1 : 0;
    } else if (pair && n % 2 == 0) {
        x.exceptional = true;
        x.exceptional_case = "X_n(2,2) with n even";
        x.monodromy = Monodromy::WeylD;
        table_m = n + 3;
    } else if (cubic_surface) {
        x.exceptional = true;
        x.exceptional_case = "cubic surface X_2(3)";
        x.monodromy = Monodromy::WeylE6;
        table_m = 6;
    } else {
        x.monodromy = n % 2 == 0 ? Monodromy::Orthogonal : Monodromy::Symplectic;
    }
    if (x.exceptional && table_m != x.m)
        throw ConsistencyError("primitive rank of " + x.label() + " disagrees with the exceptional table");
    if (x.m < 0)
        throw ConsistencyError("negative primitive rank for " + x.label());
    return x;
}

void require_reconstructible(const CIDescriptor& desc)
{
    if (desc.exceptional)
        throw DomainError(desc.label() + " is exceptional: " + desc.exceptional_case);
    if (desc.a <= 0)
        throw DomainError(desc.label() + " is non-Fano: all reconstruction trivial");
    if (desc.n < 3)
        throw DomainError(desc.label() + " has dimension < 3: primitive invariants reduce to ambient ones");
}

std::vector<int> parse_multidegree(const std::string& text)
{
    std::vector<int> d;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(item, &pos);
        } catch (const std::exception&) {
            throw ConfigError("malformed multidegree: '" + text + "'");
        }
        if (pos != item.size())
            throw ConfigError("malformed multidegree: '" + text + "'");
        d.push_back(v);
    }
    if (d.empty())
        throw ConfigError("empty multidegree");
    return d;
}

} // namespace ciqc
