#include "hypermod/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace hypermod {

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign)
{
    if (s.empty())
        return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+'))
        ++i;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    return true;
}

Integer to_integer(std::string_view s)
{
    std::string str(s);
    if (!str.empty() && str[0] == '+')
        str.erase(0, 1);
    return Integer(str, 10);
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!is_integer_literal(text, true))
            throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        return Rational(to_integer(text));
    }
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!is_integer_literal(num, true) || !is_integer_literal(den, false))
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    Integer p = to_integer(num);
    Integer q = to_integer(den);
    if (q == 0)
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Integer g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    if (g != 1)
        throw std::invalid_argument("rational '" + std::string(text) + "' is not in lowest terms");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

std::string format_rational(const Rational& q)
{
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace hypermod
