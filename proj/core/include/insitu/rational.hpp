#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace insitu {

using BigInt = mpz_class;
using Rational = mpq_class;

// Canonical "p/q" text form; "/1" is omitted, matching mpq_get_str.
inline std::string rational_to_string(const Rational& q)
{
    return q.get_str();
}

inline Rational rational_from_string(const std::string& s)
{
    Rational q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("not a rational: '" + s + "'");
    q.canonicalize();
    return q;
}

} // namespace insitu
