#pragma once

#include "endsum/catalog.hpp"
#include "endsum/coefficient_ring.hpp"
#include "endsum/fin_module.hpp"
#include "endsum/fp_linalg.hpp"
#include "endsum/matrix.hpp"
#include "endsum/space.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace endsum {

/// Truncated direct system of the cohomology of the neighborhoods-of-infinity
/// exhaustion of a ladder chain.  Stage j in degree k is modeled as the
/// direct sum of the node cohomologies plus, in degree 1 (circle series) and
/// the top degree (rung-sphere series), one coordinate window per edge
/// holding series indices stage..depth-1.  Coordinates are laid out as all
/// node summands first, then the edge windows.
///
/// The stored transition map out of stage j is the identity on node summands
/// except in the top degree, where the edge series coordinate of index j is
/// folded into the two endpoint top classes (negatively at the edge's first
/// node, positively at its second) while the windows drop that index.
class TruncatedSystem {
public:
    TruncatedSystem(std::vector<ManifoldExpr> labels,
                    std::vector<std::pair<std::size_t, std::size_t>> edges,
                    const CoefficientRing& ring, int depth)
        : ring_(ring), depth_(depth), labels_(std::move(labels)), edges_(std::move(edges))
    {
        if (depth_ < 1)
            throw std::invalid_argument("TruncatedSystem: depth must be at least 1");
        if (labels_.empty())
            throw std::invalid_argument("TruncatedSystem: at least one node required");
        n_ = static_cast<int>(labels_.front().dimension());
        for (const ManifoldExpr& m : labels_)
            if (m.dimension() != n_)
                throw std::invalid_argument("TruncatedSystem: dimension mismatch (" +
                                            std::to_string(n_) + " vs " +
                                            std::to_string(m.dimension()) + ")");
        for (const ManifoldExpr& m : labels_)
            node_rings_.push_back(cohomology_ring(m, ring_));
        for (const GradedRing& r : node_rings_)
            if (r.dim(n_) != 1)
                throw std::logic_error("TruncatedSystem: node top degree is not one-dimensional");

        maps_.resize(static_cast<std::size_t>(n_));
        for (int k = 1; k <= n_; ++k)
            for (int j = 0; j < depth_; ++j)
                maps_[static_cast<std::size_t>(k - 1)].push_back(build_map(k, j));
    }

    const CoefficientRing& ring() const { return ring_; }
    int n() const { return n_; }
    int depth() const { return depth_; }
    const std::vector<ManifoldExpr>& labels() const { return labels_; }
    const std::vector<GradedRing>& node_rings() const { return node_rings_; }
    const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }

    bool windowed(int k) const { return k == 1 || k == n_; }

    std::size_t finite_dim(int k) const
    {
        std::size_t d = 0;
        for (const GradedRing& r : node_rings_)
            d += r.dim(k);
        return d;
    }

    /// Series indices kept at a stage: stage..depth-1, so depth-stage each.
    std::size_t window_size(int stage) const { return static_cast<std::size_t>(depth_ - stage); }

    std::size_t stage_dim(int k, int stage) const
    {
        return finite_dim(k) + (windowed(k) ? edges_.size() * window_size(stage) : 0);
    }

    std::size_t node_offset(int k, std::size_t v) const
    {
        std::size_t off = 0;
        for (std::size_t w = 0; w < v; ++w)
            off += node_rings_[w].dim(k);
        return off;
    }

    /// Coordinate of series index i of edge e at the given stage.
    std::size_t window_coord(int k, int stage, std::size_t e, int i) const
    {
        return finite_dim(k) + e * window_size(stage) + static_cast<std::size_t>(i - stage);
    }

    /// Transition map out of stage j in degree k (stage j -> stage j+1).
    const Matrix& map(int k, int j) const
    {
        return maps_.at(static_cast<std::size_t>(k - 1)).at(static_cast<std::size_t>(j));
    }

    Matrix& mutable_map(int k, int j) // test fixtures only
    {
        return maps_.at(static_cast<std::size_t>(k - 1)).at(static_cast<std::size_t>(j));
    }

    /// Composite stage 0 -> stage; the empty composite is the identity.
    Matrix composed_to(int k, int stage) const
    {
        Matrix c = Matrix::identity(stage_dim(k, 0));
        for (int j = 0; j < stage; ++j)
            c = map(k, j) * c;
        return c;
    }

    /// The homology-side transition (stage j+1 -> stage j): the identity plus,
    /// in the top dimension, the new series index j picking up the difference
    /// of the endpoint fundamental classes.  Its transpose must equal the
    /// stored cohomology map; a consistency test relies on that.
    Matrix homology_transition(int k, int j) const
    {
        Matrix h(stage_dim(k, j), stage_dim(k, j + 1));
        for (std::size_t t = 0; t < finite_dim(k); ++t)
            h(t, t) = 1;
        if (windowed(k)) {
            for (std::size_t e = 0; e < edges_.size(); ++e)
                for (int i = j + 1; i < depth_; ++i)
                    h(window_coord(k, j, e, i), window_coord(k, j + 1, e, i)) = 1;
            if (k == n_)
                for (std::size_t e = 0; e < edges_.size(); ++e) {
                    const std::size_t row = window_coord(k, j, e, j);
                    h(row, node_offset(k, edges_[e].first)) = -1;
                    h(row, node_offset(k, edges_[e].second)) = 1;
                }
        }
        return h;
    }

private:
    Matrix build_map(int k, int j) const
    {
        Matrix m(stage_dim(k, j + 1), stage_dim(k, j));
        for (std::size_t t = 0; t < finite_dim(k); ++t)
            m(t, t) = 1;
        if (!windowed(k))
            return m;
        for (std::size_t e = 0; e < edges_.size(); ++e)
            for (int i = j + 1; i < depth_; ++i)
                m(window_coord(k, j + 1, e, i), window_coord(k, j, e, i)) = 1;
        if (k == n_)
            for (std::size_t e = 0; e < edges_.size(); ++e) {
                const std::size_t col = window_coord(k, j, e, j);
                m(node_offset(k, edges_[e].first), col) = -1;
                m(node_offset(k, edges_[e].second), col) = 1;
            }
        return m;
    }

    CoefficientRing ring_;
    int n_ = 0;
    int depth_ = 0;
    std::vector<ManifoldExpr> labels_;
    std::vector<GradedRing> node_rings_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
    std::vector<std::vector<Matrix>> maps_; // [degree-1][stage]
};

inline TruncatedSystem build_truncated_path_system(std::vector<ManifoldExpr> labels,
                                                   const CoefficientRing& ring, int depth)
{
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i + 1 < labels.size(); ++i)
        edges.emplace_back(i, i + 1);
    return TruncatedSystem(std::move(labels), std::move(edges), ring, depth);
}

inline TruncatedSystem build_truncated_system(const ManifoldExpr& x, const ManifoldExpr& y,
                                              const CoefficientRing& ring, int depth)
{
    return build_truncated_path_system({x, y}, ring, depth);
}

/// Truncated system of a path-shaped Space (node order along the path, edge
/// orientations as stored).
inline TruncatedSystem oracle_system(const Space& s, const CoefficientRing& ring, int depth)
{
    std::vector<NodeId> order = path_order(s);
    if (order.empty())
        throw std::invalid_argument("oracle_system: space is not path-shaped");
    std::vector<std::size_t> pos(s.node_count());
    for (std::size_t i = 0; i < order.size(); ++i)
        pos[order[i]] = i;
    std::vector<ManifoldExpr> labels;
    for (NodeId v : order)
        labels.push_back(s.node(v).label);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& [u, v] : s.edges())
        edges.emplace_back(pos[u], pos[v]);
    return TruncatedSystem(std::move(labels), std::move(edges), ring, depth);
}

struct LimitModule {
    FinModule module;
    bool stabilized;
};

/// Stage-0 cohomology modulo the union of composite kernels, restricted to
/// the node-summand coordinates.  The flag reports that deepening the window
/// by one step killed no additional node-summand classes.
inline LimitModule limit_module(const TruncatedSystem& sys, int k)
{
    if (k < 1 || k > sys.n())
        throw std::invalid_argument("limit_module: degree out of range");
    if (!sys.ring().is_field()) {
        if (k < 2 || k > sys.n() - 1)
            throw std::invalid_argument(
                "limit_module: integer coefficients only supported in middle degrees");
        FinModule m = FinModule::zero(sys.ring());
        for (const GradedRing& r : sys.node_rings())
            m = m.direct_sum(r.module_at(k));
        return {m, true};
    }

    const std::int64_t p = sys.ring().prime();
    const std::size_t f = sys.finite_dim(k);
    auto finite_rank_at = [&](int stage) {
        Matrix c = sys.composed_to(k, stage);
        Matrix restricted(c.rows(), f);
        for (std::size_t i = 0; i < c.rows(); ++i)
            for (std::size_t j = 0; j < f; ++j)
                restricted(i, j) = c(i, j);
        return rank_mod_p(restricted, p);
    };
    const std::size_t rank_full = finite_rank_at(sys.depth());
    const std::size_t rank_prev = finite_rank_at(sys.depth() - 1);
    return {FinModule::field_dim(sys.ring(), rank_full), rank_prev == rank_full};
}

struct LimitGamma {
    std::size_t dim;
    bool stabilized;
};

/// Span of all pairwise products of lower-degree stage-0 classes inside the
/// top-degree limit.  Cup products on stage 0 are node-coordinatewise and
/// vanish on the series coordinates, so the generating products are the node
/// ring generator products.
inline LimitGamma limit_gamma_dim(const TruncatedSystem& sys, std::int64_t p)
{
    if (!sys.ring().is_field() || sys.ring().prime() != p)
        throw std::invalid_argument("limit_gamma_dim: system does not carry Z_" +
                                    std::to_string(p) + " coefficients");
    const int n = sys.n();
    std::vector<std::vector<Int>> products;
    for (std::size_t v = 0; v < sys.node_rings().size(); ++v) {
        const GradedRing& ring = sys.node_rings()[v];
        for (int i = 1; i < n; ++i)
            for (std::size_t a = 0; a < ring.dim(i); ++a)
                for (std::size_t b = 0; b < ring.dim(n - i); ++b) {
                    std::vector<Int> val = ring.generator_product(i, a, n - i, b);
                    if (val.empty() || val[0] == 0)
                        continue;
                    std::vector<Int> vec(sys.stage_dim(n, 0), Int(0));
                    vec[sys.node_offset(n, v)] = val[0];
                    products.push_back(std::move(vec));
                }
    }
    auto rank_at = [&](int stage) {
        Matrix c = sys.composed_to(n, stage);
        std::vector<std::vector<Int>> rows;
        for (const auto& vec : products)
            rows.push_back(c * vec);
        return span_dim_mod_p(rows, sys.stage_dim(n, stage), p);
    };
    const std::size_t r_full = rank_at(sys.depth());
    const std::size_t r_prev = rank_at(sys.depth() - 1);
    return {r_full, r_prev == r_full};
}

/// Every stored transition map must cover its truncated target: all node
/// coordinates and all window coordinates except the final window index,
/// which is exempt as a truncation boundary.
inline bool check_surjectivity(const TruncatedSystem& sys)
{
    if (!sys.ring().is_field())
        throw std::invalid_argument("check_surjectivity: field coefficients required");
    const std::int64_t p = sys.ring().prime();
    for (int k = 1; k <= sys.n(); ++k)
        for (int j = 0; j < sys.depth(); ++j) {
            const Matrix& m = sys.map(k, j);
            std::vector<std::size_t> required;
            for (std::size_t t = 0; t < sys.finite_dim(k); ++t)
                required.push_back(t);
            if (sys.windowed(k))
                for (std::size_t e = 0; e < sys.edges().size(); ++e)
                    for (int i = j + 1; i < sys.depth() - 1; ++i)
                        required.push_back(sys.window_coord(k, j + 1, e, i));
            Matrix restricted(required.size(), m.cols());
            for (std::size_t r = 0; r < required.size(); ++r)
                for (std::size_t c = 0; c < m.cols(); ++c)
                    restricted(r, c) = m(required[r], c);
            if (rank_mod_p(restricted, p) != required.size())
                return false;
        }
    return true;
}

} // namespace endsum
