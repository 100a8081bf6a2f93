#pragma once

#include "endsum/coefficient_ring.hpp"
#include "endsum/graded_ring.hpp"
#include "endsum/manifold.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace endsum {

namespace detail {

inline GradedRing sphere_ring(std::int64_t n, const CoefficientRing& r)
{
    GradedRing ring(r, static_cast<int>(n));
    ring.add_generator(static_cast<int>(n), "s");
    return ring;
}

inline GradedRing lens_ring(std::int64_t k, const CoefficientRing& r)
{
    if (!r.is_field()) {
        GradedRing ring(r, 3);
        ring.add_generator(2, "b", Int(k));
        ring.add_generator(3, "c");
        return ring; // no products land in degrees <= 3
    }
    const std::int64_t p = r.prime();
    GradedRing ring(r, 3);
    if (k % p != 0) {
        ring.add_generator(3, "c");
        return ring;
    }
    const std::size_t a = ring.add_generator(1, "a");
    const std::size_t b = ring.add_generator(2, "b");
    ring.add_generator(3, "c");
    ring.set_product(1, a, 2, b, {Int(1)});
    ring.set_product(2, b, 1, a, {Int(1)});
    // The square of the degree-1 class is its Bockstein: nonzero over Z_2
    // exactly when the class does not lift mod 4.
    if (p == 2 && k % 4 == 2)
        ring.set_product(1, a, 1, a, {Int(1)});
    return ring;
}

inline GradedRing surface_ring(std::int64_t g, const CoefficientRing& r)
{
    GradedRing ring(r, 2);
    std::vector<std::size_t> as, bs;
    for (std::int64_t i = 1; i <= g; ++i)
        as.push_back(ring.add_generator(1, "a" + std::to_string(i)));
    for (std::int64_t i = 1; i <= g; ++i)
        bs.push_back(ring.add_generator(1, "b" + std::to_string(i)));
    ring.add_generator(2, "F");
    for (std::int64_t i = 0; i < g; ++i) {
        ring.set_product(1, as[static_cast<std::size_t>(i)], 1, bs[static_cast<std::size_t>(i)], {Int(1)});
        ring.set_product(1, bs[static_cast<std::size_t>(i)], 1, as[static_cast<std::size_t>(i)], {Int(-1)});
    }
    return ring;
}

inline std::vector<std::vector<int>> subsets_of_size(int k, int size)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int next) -> void {
        if (static_cast<int>(cur.size()) == size) {
            out.push_back(cur);
            return;
        }
        for (int v = next; v <= k; ++v) {
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

/// Sign of the shuffle merging two disjoint increasing sequences.
inline int shuffle_sign(const std::vector<int>& s, const std::vector<int>& t)
{
    int inversions = 0;
    for (int x : s)
        for (int y : t)
            if (x > y)
                ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

inline GradedRing torus_ring(std::int64_t k, const CoefficientRing& r)
{
    GradedRing ring(r, static_cast<int>(k));
    std::vector<std::vector<std::vector<int>>> subs(static_cast<std::size_t>(k) + 1);
    for (int d = 1; d <= k; ++d) {
        subs[static_cast<std::size_t>(d)] = subsets_of_size(static_cast<int>(k), d);
        for (const auto& s : subs[static_cast<std::size_t>(d)]) {
            std::string label = "e";
            for (int v : s)
                label += std::to_string(v);
            ring.add_generator(d, label);
        }
    }
    auto index_of = [&](const std::vector<int>& s) -> std::size_t {
        const auto& list = subs[s.size()];
        for (std::size_t i = 0; i < list.size(); ++i)
            if (list[i] == s)
                return i;
        throw std::logic_error("torus_ring: subset lookup failed");
    };
    for (int da = 1; da <= k; ++da)
        for (int db = 1; da + db <= k; ++db)
            for (std::size_t ia = 0; ia < subs[static_cast<std::size_t>(da)].size(); ++ia)
                for (std::size_t ib = 0; ib < subs[static_cast<std::size_t>(db)].size(); ++ib) {
                    const auto& s = subs[static_cast<std::size_t>(da)][ia];
                    const auto& t = subs[static_cast<std::size_t>(db)][ib];
                    std::vector<int> merged;
                    bool disjoint = true;
                    for (int v : s)
                        merged.push_back(v);
                    for (int v : t) {
                        if (std::find(s.begin(), s.end(), v) != s.end()) {
                            disjoint = false;
                            break;
                        }
                        merged.push_back(v);
                    }
                    if (!disjoint)
                        continue;
                    std::sort(merged.begin(), merged.end());
                    std::vector<Int> coeffs(ring.dim(da + db), Int(0));
                    coeffs[index_of(merged)] = shuffle_sign(s, t);
                    ring.set_product(da, ia, db, ib, coeffs);
                }
    return ring;
}

inline GradedRing conn_sum_ring(const ManifoldExpr& m, const CoefficientRing& r);

inline GradedRing ring_of(const ManifoldExpr& m, const CoefficientRing& r);

inline GradedRing conn_sum_ring(const ManifoldExpr& m, const CoefficientRing& r)
{
    const int n = static_cast<int>(m.dimension());
    std::vector<GradedRing> parts;
    for (const ManifoldExpr& c : m.children())
        parts.push_back(ring_of(c, r));

    GradedRing out(r, n);
    // offsets[i][k]: start of summand i's generators in degree k (< n).
    std::vector<std::vector<std::size_t>> offsets(parts.size(), std::vector<std::size_t>(static_cast<std::size_t>(n), 0));
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const std::string tag = std::to_string(i + 1) + ":";
        for (int k = 1; k < n; ++k) {
            offsets[i][static_cast<std::size_t>(k)] = out.dim(k);
            for (const Generator& g : parts[i].gens(k))
                out.add_generator(k, tag + g.label, g.annihilator);
        }
        if (parts[i].dim(n) != 1)
            throw std::logic_error("conn_sum_ring: summand top degree is not one-dimensional");
    }
    out.add_generator(n, "top");

    // Same-summand products; a product landing in the top degree maps through
    // that summand's top class to the shared generator.  Cross products vanish.
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (const auto& [key, coeffs] : parts[i].table()) {
            const auto [ka, ia, kb, ib] = key;
            const int kc = ka + kb;
            std::vector<Int> mapped(out.dim(kc), Int(0));
            if (kc == n) {
                mapped[0] = coeffs[0];
            } else {
                const std::size_t off = offsets[i][static_cast<std::size_t>(kc)];
                for (std::size_t t = 0; t < coeffs.size(); ++t)
                    mapped[off + t] = coeffs[t];
            }
            out.set_product(ka, offsets[i][static_cast<std::size_t>(ka)] + static_cast<std::size_t>(ia),
                            kb, offsets[i][static_cast<std::size_t>(kb)] + static_cast<std::size_t>(ib),
                            mapped);
        }
    }
    return out;
}

inline GradedRing ring_of(const ManifoldExpr& m, const CoefficientRing& r)
{
    using Kind = ManifoldExpr::Kind;
    switch (m.kind()) {
    case Kind::sphere:
        return sphere_ring(m.param(), r);
    case Kind::lens:
        return lens_ring(m.param(), r);
    case Kind::surface:
        return surface_ring(m.param(), r);
    case Kind::torus:
        return torus_ring(m.param(), r);
    case Kind::homology_sphere3:
        if (!r.is_field() || r.prime() != m.param())
            throw std::runtime_error("cohomology_ring: " + m.to_string() +
                                     " only carries Z_" + std::to_string(m.param()) +
                                     " data");
        return sphere_ring(3, r);
    case Kind::product:
        return tensor_product(ring_of(m.children()[0], r), ring_of(m.children()[1], r));
    case Kind::conn_sum:
        return conn_sum_ring(m, r);
    }
    throw std::logic_error("ring_of: unreachable");
}

} // namespace detail

/// Reduced cohomology ring of a closed oriented manifold expression.
inline GradedRing cohomology_ring(const ManifoldExpr& m, const CoefficientRing& r)
{
    return detail::ring_of(m, r);
}

} // namespace endsum
