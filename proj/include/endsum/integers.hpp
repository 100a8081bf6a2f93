#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace endsum {

/// Exact integer used for all module and matrix arithmetic.
using Int = boost::multiprecision::cpp_int;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(Int a, Int b)
{
    a = abs_int(a);
    b = abs_int(b);
    while (b != 0) {
        Int r = a % b;
        a = b;
        b = r;
    }
    return a;
}

inline Int lcm_int(const Int& a, const Int& b)
{
    if (a == 0 || b == 0)
        return 0;
    return abs_int(a / gcd_int(a, b) * b);
}

/// Least nonnegative residue of a modulo m (m > 0).
inline Int mod_nonneg(const Int& a, const Int& m)
{
    Int r = a % m;
    if (r < 0)
        r += m;
    return r;
}

/// Inverse of a modulo prime p; a must be nonzero mod p.
inline Int inverse_mod(const Int& a, const Int& p)
{
    Int r0 = p, r1 = mod_nonneg(a, p);
    Int s0 = 0, s1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        Int s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r0 != 1)
        throw std::invalid_argument("inverse_mod: not invertible");
    return mod_nonneg(s0, p);
}

inline bool is_prime(std::int64_t n)
{
    if (n < 2)
        return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

inline std::string to_string(const Int& a) { return a.str(); }

/// Narrow an Int to int64, throwing if it does not fit.
inline std::int64_t to_int64(const Int& a)
{
    if (a > Int(INT64_MAX) || a < Int(INT64_MIN))
        throw std::overflow_error("integer does not fit in 64 bits");
    return static_cast<std::int64_t>(a);
}

} // namespace endsum
