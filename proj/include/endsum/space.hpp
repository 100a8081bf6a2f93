#pragma once

#include "endsum/manifold.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace endsum {

using NodeId = std::size_t;

struct SpaceNode {
    ManifoldExpr label;
    std::vector<std::string> caps; // inert metadata (boundary fillings)
};

/// A generalized ladder: a connected multigraph whose nodes are closed
/// manifolds of one common dimension (the stringer cross-sections) and whose
/// edges are infinite rung families.  One node and no edges is a stringer;
/// two nodes and one edge is a ladder.
class Space {
public:
    Space(std::vector<SpaceNode> nodes, std::vector<std::pair<NodeId, NodeId>> edges)
        : nodes_(std::move(nodes)), edges_(std::move(edges))
    {
        if (nodes_.empty())
            throw std::invalid_argument("Space: at least one node required");
        dim_ = nodes_.front().label.dimension();
        if (dim_ < 2)
            throw std::invalid_argument("Space: cross-section dimension must be at least 2");
        for (const SpaceNode& n : nodes_)
            if (n.label.dimension() != dim_)
                throw std::invalid_argument("Space: node dimensions differ (" +
                                            std::to_string(dim_) + " vs " +
                                            std::to_string(n.label.dimension()) + ")");
        for (const auto& [u, v] : edges_)
            if (u >= nodes_.size() || v >= nodes_.size())
                throw std::invalid_argument("Space: edge endpoint out of range");
        if (!connected())
            throw std::invalid_argument("Space: graph must be connected");
    }

    std::int64_t dim() const { return dim_; }
    const std::vector<SpaceNode>& nodes() const { return nodes_; }
    const std::vector<std::pair<NodeId, NodeId>>& edges() const { return edges_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const SpaceNode& node(NodeId v) const
    {
        if (v >= nodes_.size())
            throw std::invalid_argument("Space: invalid node id " + std::to_string(v));
        return nodes_[v];
    }

    void add_cap(NodeId v, std::string cap)
    {
        if (v >= nodes_.size())
            throw std::invalid_argument("Space: invalid node id " + std::to_string(v));
        nodes_[v].caps.push_back(std::move(cap));
    }

    std::vector<NodeId> nodes_labeled(const ManifoldExpr& label) const
    {
        std::vector<NodeId> out;
        for (NodeId v = 0; v < nodes_.size(); ++v)
            if (nodes_[v].label == label)
                out.push_back(v);
        return out;
    }

    Space with_reversed_edge(std::size_t e) const
    {
        Space s = *this;
        std::swap(s.edges_[e].first, s.edges_[e].second);
        return s;
    }

    Space relabeled(const std::vector<NodeId>& perm) const
    {
        // perm[old] = new position
        std::vector<SpaceNode> nodes(nodes_.size(), SpaceNode{ManifoldExpr::sphere(2), {}});
        for (NodeId v = 0; v < nodes_.size(); ++v)
            nodes[perm[v]] = nodes_[v];
        std::vector<std::pair<NodeId, NodeId>> edges;
        for (const auto& [u, v] : edges_)
            edges.emplace_back(perm[u], perm[v]);
        return Space(std::move(nodes), std::move(edges));
    }

private:
    bool connected() const
    {
        std::vector<bool> seen(nodes_.size(), false);
        std::queue<NodeId> work;
        work.push(0);
        seen[0] = true;
        std::size_t count = 1;
        while (!work.empty()) {
            NodeId v = work.front();
            work.pop();
            for (const auto& [a, b] : edges_) {
                NodeId other;
                if (a == v)
                    other = b;
                else if (b == v)
                    other = a;
                else
                    continue;
                if (!seen[other]) {
                    seen[other] = true;
                    ++count;
                    work.push(other);
                }
            }
        }
        return count == nodes_.size();
    }

    std::int64_t dim_ = 0;
    std::vector<SpaceNode> nodes_;
    std::vector<std::pair<NodeId, NodeId>> edges_;
};

inline Space make_stringer(ManifoldExpr x)
{
    return Space({SpaceNode{std::move(x), {}}}, {});
}

inline Space make_ladder(ManifoldExpr x, ManifoldExpr y)
{
    if (x.dimension() != y.dimension())
        throw std::invalid_argument("make_ladder: dimension mismatch (" +
                                    std::to_string(x.dimension()) + " vs " +
                                    std::to_string(y.dimension()) + ")");
    return Space({SpaceNode{std::move(x), {}}, SpaceNode{std::move(y), {}}}, {{0, 1}});
}

/// Height-wise connected sum of a stringer cross-section into node u.
inline Space stringer_sum(const Space& s, NodeId u, const ManifoldExpr& z)
{
    if (z.dimension() != s.dim())
        throw std::invalid_argument("stringer_sum: dimension mismatch (" +
                                    std::to_string(s.dim()) + " vs " +
                                    std::to_string(z.dimension()) + ")");
    std::vector<SpaceNode> nodes = s.nodes();
    nodes.at(u).label = ManifoldExpr::conn_sum(s.node(u).label, z);
    return Space(std::move(nodes), s.edges());
}

/// Connected sum at infinity along straight rays in the chosen stringers:
/// the two graphs are joined by merging node u of a with node v of b into a
/// single node labeled by the connected sum of the two cross-sections.
inline Space csi(const Space& a, NodeId u, const Space& b, NodeId v)
{
    if (a.dim() != b.dim())
        throw std::invalid_argument("csi: dimension mismatch (" + std::to_string(a.dim()) +
                                    " vs " + std::to_string(b.dim()) + ")");
    const SpaceNode& nu = a.node(u);
    const SpaceNode& nv = b.node(v);

    std::vector<SpaceNode> nodes = a.nodes();
    nodes[u].label = ManifoldExpr::conn_sum(nu.label, nv.label);
    nodes[u].caps.insert(nodes[u].caps.end(), nv.caps.begin(), nv.caps.end());

    // b's nodes keep their relative order after the merge target.
    std::vector<NodeId> remap(b.node_count());
    NodeId next = a.node_count();
    for (NodeId w = 0; w < b.node_count(); ++w) {
        if (w == v) {
            remap[w] = u;
            continue;
        }
        remap[w] = next++;
        nodes.push_back(b.node(w));
    }

    std::vector<std::pair<NodeId, NodeId>> edges = a.edges();
    for (const auto& [x, y] : b.edges())
        edges.emplace_back(remap[x], remap[y]);
    return Space(std::move(nodes), std::move(edges));
}

/// Capped ladder chain over the given lens orders: one order yields the
/// two-node ladder (L_p, S^3); two or more yield the path L_p1 - ... - L_pm,
/// grown by merging each new (S^3, L_p) ladder into the last lens node.
inline Space generalized_capped_ladder(const std::vector<std::int64_t>& primes)
{
    if (primes.empty())
        throw std::invalid_argument("generalized_capped_ladder: empty prime list");
    for (std::int64_t p : primes)
        if (!is_prime(p))
            throw std::invalid_argument("generalized_capped_ladder: " + std::to_string(p) +
                                        " is not prime");

    auto cap = [](std::int64_t p) { return "E(" + std::to_string(p) + ")"; };

    if (primes.size() == 1) {
        Space s = make_ladder(ManifoldExpr::lens(primes[0]), ManifoldExpr::sphere(3));
        s.add_cap(0, cap(primes[0]));
        s.add_cap(1, "D(4)");
        return s;
    }

    Space s = make_ladder(ManifoldExpr::lens(primes[0]), ManifoldExpr::lens(primes[1]));
    s.add_cap(0, cap(primes[0]));
    s.add_cap(1, cap(primes[1]));
    for (std::size_t k = 2; k < primes.size(); ++k) {
        Space next = make_ladder(ManifoldExpr::sphere(3), ManifoldExpr::lens(primes[k]));
        next.add_cap(0, "D(4)");
        next.add_cap(1, cap(primes[k]));
        s = csi(s, k - 1, next, 0);
    }
    return s;
}

/// Canonical encoding of the graph up to node relabeling (labels, caps
/// ignored in edges but kept on nodes); used for isomorphism assertions.
inline std::string canonical_key(const Space& s)
{
    const std::size_t n = s.node_count();
    if (n > 8)
        throw std::invalid_argument("canonical_key: too many nodes for brute force");
    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    do {
        std::string enc;
        std::vector<std::string> node_strs(n);
        for (NodeId v = 0; v < n; ++v)
            node_strs[perm[v]] = s.node(v).label.to_string();
        for (const std::string& t : node_strs)
            enc += t + ";";
        std::vector<std::pair<NodeId, NodeId>> edges;
        for (const auto& [u, v] : s.edges()) {
            NodeId a = perm[u], b = perm[v];
            edges.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(edges.begin(), edges.end());
        for (const auto& [u, v] : edges)
            enc += std::to_string(u) + "-" + std::to_string(v) + ";";
        if (best.empty() || enc < best)
            best = enc;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

/// Node order of a path-shaped space (single node, or a simple path);
/// returns an empty vector when the space is not a path.
inline std::vector<NodeId> path_order(const Space& s)
{
    const std::size_t n = s.node_count();
    if (n == 1)
        return s.edge_count() == 0 ? std::vector<NodeId>{0} : std::vector<NodeId>{};
    if (s.edge_count() != n - 1)
        return {};
    std::vector<std::vector<NodeId>> adj(n);
    for (const auto& [u, v] : s.edges()) {
        if (u == v)
            return {};
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<NodeId> ends;
    for (NodeId v = 0; v < n; ++v) {
        if (adj[v].size() > 2 || adj[v].empty())
            return {};
        if (adj[v].size() == 1)
            ends.push_back(v);
    }
    if (ends.size() != 2)
        return {};
    std::vector<NodeId> order{std::min(ends[0], ends[1])};
    std::vector<bool> seen(n, false);
    seen[order[0]] = true;
    while (order.size() < n) {
        bool advanced = false;
        for (NodeId w : adj[order.back()])
            if (!seen[w]) {
                order.push_back(w);
                seen[w] = true;
                advanced = true;
                break;
            }
        if (!advanced)
            return {};
    }
    return order;
}

} // namespace endsum
