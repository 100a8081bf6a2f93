#pragma once

#include "endsum/catalog.hpp"
#include "endsum/coefficient_ring.hpp"
#include "endsum/fin_module.hpp"
#include "endsum/graded_ring.hpp"
#include "endsum/space.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace endsum {

/// Cohomology algebra at infinity of a Space.
///
/// Degree k holds the finite part, the direct sum over nodes of the node
/// cohomology.  On top of that, degree 1 carries one R[[tau]]/R[tau] summand
/// per edge and the top degree carries one R[[sigma]] series summand per
/// edge, taken modulo the relation family K that identifies each truncated
/// series with the difference of its coefficient sum at the edge's two ends.
/// The finite top-degree part injects into that quotient, so all finite
/// arithmetic (in particular every cup product, which is node-coordinatewise
/// and vanishes on the symbolic summands) is done directly on node rings.
struct EndAlgebra {
    CoefficientRing ring;
    int n = 0;
    std::vector<ManifoldExpr> node_labels;
    std::vector<GradedRing> node_rings;
    std::size_t edges = 0;

    std::size_t tau_count() const { return edges; }
    std::size_t sigma_count() const { return edges; }

    FinModule finite_module(int k) const
    {
        FinModule m = FinModule::zero(ring);
        for (const GradedRing& r : node_rings)
            m = m.direct_sum(r.module_at(k));
        return m;
    }

    std::size_t finite_dim(int k) const
    {
        std::size_t d = 0;
        for (const GradedRing& r : node_rings)
            d += r.dim(k);
        return d;
    }
};

inline EndAlgebra end_algebra(const Space& s, const CoefficientRing& r)
{
    EndAlgebra e{r, static_cast<int>(s.dim()), {}, {}, s.edge_count()};
    for (const SpaceNode& node : s.nodes()) {
        e.node_labels.push_back(node.label);
        e.node_rings.push_back(cohomology_ring(node.label, r));
    }
    return e;
}

} // namespace endsum
