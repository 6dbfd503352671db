#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qtv {

// Exact rational scalar. GMP keeps results of arithmetic canonical; values
// built from raw numerator/denominator pairs go through make_scalar().
using Scalar = mpq_class;
using Integer = mpz_class;

// Coordinates of a point in the ambient space.
using Point = std::vector<Scalar>;
using Vector = std::vector<Scalar>;

class GeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

Scalar make_scalar(const Integer &num, const Integer &den);

// Accepts "p/q", "p" or a decimal-free integer literal. Throws
// GeometryError on malformed input or a zero denominator.
Scalar parse_scalar(std::string_view text);

// Always "numerator/denominator", e.g. "2/3", "-1/1", "0/1".
std::string format_scalar(const Scalar &value);

// Short form used in human-readable output: "2/3", "-1", "0".
std::string format_scalar_short(const Scalar &value);

std::string format_point(const Point &p);

Point make_point(std::initializer_list<long> coords);

bool is_integer(const Scalar &value);

Integer floor_of(const Scalar &value);
Integer ceil_of(const Scalar &value);

Scalar dot(const Vector &a, const Vector &b);
Vector subtract(const Vector &a, const Vector &b);
bool is_zero(const Vector &v);

// Lexicographic order on coordinates.
bool lex_less(const Point &a, const Point &b);

struct LexLess {
    bool operator()(const Point &a, const Point &b) const { return lex_less(a, b); }
};

} // namespace qtv
