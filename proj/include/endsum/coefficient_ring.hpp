#pragma once

#include "endsum/integers.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace endsum {

/// The coefficient ring of every computation: the integers or a prime field.
class CoefficientRing {
public:
    enum class Kind { integers, prime_field };

    static CoefficientRing integers() { return CoefficientRing(Kind::integers, 0); }

    static CoefficientRing prime_field(std::int64_t p)
    {
        if (!is_prime(p))
            throw std::invalid_argument("prime_field: " + std::to_string(p) + " is not prime");
        return CoefficientRing(Kind::prime_field, p);
    }

    Kind kind() const { return kind_; }
    bool is_field() const { return kind_ == Kind::prime_field; }

    std::int64_t prime() const
    {
        if (!is_field())
            throw std::logic_error("prime() on integer coefficients");
        return p_;
    }

    bool operator==(const CoefficientRing& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const CoefficientRing& o) const { return !(*this == o); }

    std::string name() const
    {
        return is_field() ? "Z_" + std::to_string(p_) : std::string("Z");
    }

private:
    CoefficientRing(Kind k, std::int64_t p) : kind_(k), p_(p) {}

    Kind kind_;
    std::int64_t p_;
};

} // namespace endsum
