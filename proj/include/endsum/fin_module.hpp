#pragma once

#include "endsum/coefficient_ring.hpp"
#include "endsum/integers.hpp"
#include "endsum/matrix.hpp"
#include "endsum/smith.hpp"

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace endsum {

/// Finitely generated module in canonical form.  Over the integers this is a
/// free rank plus a divisor chain d_1 | d_2 | ... (each >= 2); over a prime
/// field only the dimension.  Two modules are isomorphic iff their canonical
/// forms compare equal, so operator== is the isomorphism test.
class FinModule {
public:
    explicit FinModule(CoefficientRing ring) : ring_(ring) {}

    /// Canonicalizes an arbitrary list of cyclic orders (0 = infinite).
    FinModule(CoefficientRing ring, std::size_t free_rank, std::vector<Int> cyclic_orders)
        : ring_(ring), rank_(free_rank)
    {
        if (ring_.is_field()) {
            if (!cyclic_orders.empty())
                throw std::invalid_argument("FinModule: field modules carry no torsion list");
            return;
        }
        canonicalize(std::move(cyclic_orders));
    }

    static FinModule zero(CoefficientRing ring) { return FinModule(ring); }

    static FinModule field_dim(CoefficientRing ring, std::size_t dim)
    {
        if (!ring.is_field())
            throw std::invalid_argument("FinModule::field_dim: integer coefficients");
        FinModule m(ring);
        m.rank_ = dim;
        return m;
    }

    const CoefficientRing& ring() const { return ring_; }

    /// Free rank over Z; dimension over a prime field.
    std::size_t free_rank() const { return rank_; }

    const std::vector<Int>& torsion() const { return torsion_; }

    bool is_zero() const { return rank_ == 0 && torsion_.empty(); }

    bool operator==(const FinModule& o) const
    {
        return ring_ == o.ring_ && rank_ == o.rank_ && torsion_ == o.torsion_;
    }
    bool operator!=(const FinModule& o) const { return !(*this == o); }

    FinModule direct_sum(const FinModule& o) const
    {
        if (ring_ != o.ring_)
            throw std::invalid_argument("FinModule::direct_sum: coefficient rings differ");
        if (ring_.is_field())
            return field_dim(ring_, rank_ + o.rank_);
        std::vector<Int> orders = torsion_;
        orders.insert(orders.end(), o.torsion_.begin(), o.torsion_.end());
        return FinModule(ring_, rank_ + o.rank_, std::move(orders));
    }

    std::string to_string() const
    {
        if (is_zero())
            return "0";
        std::ostringstream out;
        bool first = true;
        auto sep = [&] {
            if (!first)
                out << " + ";
            first = false;
        };
        if (rank_ > 0) {
            sep();
            out << ring_.name();
            if (rank_ > 1)
                out << "^" << rank_;
        }
        for (const Int& d : torsion_) {
            sep();
            out << "Z_" << d.str();
        }
        return out.str();
    }

private:
    void canonicalize(std::vector<Int> orders)
    {
        std::vector<Int> finite;
        for (Int& d : orders) {
            d = abs_int(d);
            if (d == 0)
                ++rank_;
            else if (d > 1)
                finite.push_back(d);
        }
        if (finite.empty())
            return;
        Matrix diag(finite.size(), finite.size());
        for (std::size_t i = 0; i < finite.size(); ++i)
            diag(i, i) = finite[i];
        for (const Int& d : smith_diagonal(diag))
            if (d > 1)
                torsion_.push_back(d);
    }

    CoefficientRing ring_;
    std::size_t rank_ = 0;
    std::vector<Int> torsion_;
};

/// Canonical form of a module given by cyclic summand orders (0 = infinite).
inline FinModule iso_class(CoefficientRing ring, std::size_t free_rank, std::vector<Int> orders)
{
    return FinModule(ring, free_rank, std::move(orders));
}

} // namespace endsum
