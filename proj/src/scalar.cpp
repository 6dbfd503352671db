#include "qtverberg/scalar.hpp"

#include <algorithm>
#include <cctype>

namespace qtv {

Scalar make_scalar(const Integer &num, const Integer &den)
{
    if (den == 0)
        throw GeometryError("zero denominator");
    Scalar q(num, den);
    q.canonicalize();
    return q;
}

namespace {

bool valid_integer_literal(std::string_view s)
{
    if (s.empty())
        return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size())
        return false;
    return std::all_of(s.begin() + static_cast<long>(i), s.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

Integer parse_integer(std::string_view s)
{
    if (!valid_integer_literal(s))
        throw GeometryError("malformed rational literal: '" + std::string(s) + "'");
    if (s[0] == '+')
        s.remove_prefix(1);
    return Integer(std::string(s), 10);
}

} // namespace

Scalar parse_scalar(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Scalar(parse_integer(text));
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    return make_scalar(num, den);
}

std::string format_scalar(const Scalar &value)
{
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string format_scalar_short(const Scalar &value)
{
    if (value.get_den() == 1)
        return value.get_num().get_str();
    return format_scalar(value);
}

std::string format_point(const Point &p)
{
    std::string out = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i)
            out += ",";
        out += format_scalar_short(p[i]);
    }
    return out + ")";
}

Point make_point(std::initializer_list<long> coords)
{
    Point p;
    p.reserve(coords.size());
    for (long c : coords)
        p.emplace_back(c);
    return p;
}

bool is_integer(const Scalar &value) { return value.get_den() == 1; }

Integer floor_of(const Scalar &value)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return q;
}

Integer ceil_of(const Scalar &value)
{
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return q;
}

Scalar dot(const Vector &a, const Vector &b)
{
    Scalar s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

Vector subtract(const Vector &a, const Vector &b)
{
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] - b[i];
    return out;
}

bool is_zero(const Vector &v)
{
    return std::all_of(v.begin(), v.end(), [](const Scalar &x) { return x == 0; });
}

bool lex_less(const Point &a, const Point &b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

} // namespace qtv
