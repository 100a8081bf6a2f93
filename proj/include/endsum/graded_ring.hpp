#pragma once

#include "endsum/coefficient_ring.hpp"
#include "endsum/fin_module.hpp"
#include "endsum/integers.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace endsum {

/// One cyclic summand of a graded piece.  annihilator == 0 means a free
/// generator; over a prime field the annihilator is p.
struct Generator {
    std::string label;
    Int annihilator;
};

/// Reduced cohomology ring of a closed manifold (or any finite graded-
/// commutative algebra without unit): a module of generators per degree
/// 1..top plus a table of generator products.  Degree 0 is absent by
/// convention and products into degrees above top are zero.
///
/// Values are immutable once built; construction happens through the
/// add_generator / set_product mutators and then the object is shared const.
class GradedRing {
public:
    explicit GradedRing(CoefficientRing ring, int top_degree = 0)
        : ring_(ring), gens_(static_cast<std::size_t>(std::max(top_degree, 0)) + 1)
    {
        if (top_degree < 0)
            throw std::invalid_argument("GradedRing: negative top degree");
    }

    const CoefficientRing& ring() const { return ring_; }
    int top() const { return static_cast<int>(gens_.size()) - 1; }

    std::size_t dim(int k) const
    {
        if (k < 1 || k > top())
            return 0;
        return gens_[static_cast<std::size_t>(k)].size();
    }

    const std::vector<Generator>& gens(int k) const
    {
        static const std::vector<Generator> empty;
        if (k < 1 || k > top())
            return empty;
        return gens_[static_cast<std::size_t>(k)];
    }

    std::size_t add_generator(int k, std::string label, Int annihilator = 0)
    {
        require_degree(k);
        if (ring_.is_field())
            annihilator = ring_.prime();
        gens_[static_cast<std::size_t>(k)].push_back(Generator{std::move(label), std::move(annihilator)});
        return gens_[static_cast<std::size_t>(k)].size() - 1;
    }

    /// Stores the product of generator (ka, ia) with (kb, ib) as a coefficient
    /// vector over the generators of degree ka+kb.  Only one ordered pair is
    /// stored per call; callers record both orders.
    void set_product(int ka, std::size_t ia, int kb, std::size_t ib, std::vector<Int> coeffs)
    {
        require_degree(ka);
        require_degree(kb);
        const int kc = ka + kb;
        if (kc > top())
            throw std::invalid_argument("set_product: target degree exceeds top");
        if (coeffs.size() != dim(kc))
            throw std::invalid_argument("set_product: coefficient vector has wrong length");
        normalize(kc, coeffs);
        Key key{ka, static_cast<int>(ia), kb, static_cast<int>(ib)};
        if (is_zero_vec(coeffs))
            table_.erase(key);
        else
            table_[key] = std::move(coeffs);
    }

    /// Product of two generators; zero vector when absent or out of range.
    std::vector<Int> generator_product(int ka, std::size_t ia, int kb, std::size_t ib) const
    {
        const int kc = ka + kb;
        if (kc > top())
            return {};
        std::vector<Int> out(dim(kc), Int(0));
        auto it = table_.find(Key{ka, static_cast<int>(ia), kb, static_cast<int>(ib)});
        if (it != table_.end())
            out = it->second;
        return out;
    }

    /// Bilinear extension of the generator table.
    std::vector<Int> product(int ka, const std::vector<Int>& a, int kb, const std::vector<Int>& b) const
    {
        const int kc = ka + kb;
        if (kc > top())
            return {};
        std::vector<Int> out(dim(kc), Int(0));
        for (std::size_t ia = 0; ia < a.size(); ++ia) {
            if (a[ia] == 0)
                continue;
            for (std::size_t ib = 0; ib < b.size(); ++ib) {
                if (b[ib] == 0)
                    continue;
                auto it = table_.find(Key{ka, static_cast<int>(ia), kb, static_cast<int>(ib)});
                if (it == table_.end())
                    continue;
                for (std::size_t ic = 0; ic < out.size(); ++ic)
                    out[ic] += a[ia] * b[ib] * it->second[ic];
            }
        }
        normalize(kc, out);
        return out;
    }

    void normalize(int k, std::vector<Int>& coeffs) const
    {
        const auto& g = gens(k);
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            if (g[i].annihilator != 0)
                coeffs[i] = mod_nonneg(coeffs[i], g[i].annihilator);
    }

    FinModule module_at(int k) const
    {
        if (ring_.is_field())
            return FinModule::field_dim(ring_, dim(k));
        std::size_t rank = 0;
        std::vector<Int> orders;
        for (const Generator& g : gens(k)) {
            if (g.annihilator == 0)
                ++rank;
            else
                orders.push_back(g.annihilator);
        }
        return FinModule(ring_, rank, std::move(orders));
    }

    bool operator==(const GradedRing& o) const
    {
        if (ring_ != o.ring_ || top() != o.top() || table_ != o.table_)
            return false;
        for (int k = 1; k <= top(); ++k) {
            const auto& ga = gens(k);
            const auto& gb = o.gens(k);
            if (ga.size() != gb.size())
                return false;
            for (std::size_t i = 0; i < ga.size(); ++i)
                if (ga[i].label != gb[i].label || ga[i].annihilator != gb[i].annihilator)
                    return false;
        }
        return true;
    }

    // -- ring-axiom checks (used by the property suites) ------------------

    bool is_graded_commutative() const
    {
        for (int ka = 1; ka <= top(); ++ka)
            for (int kb = 1; ka + kb <= top(); ++kb)
                for (std::size_t ia = 0; ia < dim(ka); ++ia)
                    for (std::size_t ib = 0; ib < dim(kb); ++ib) {
                        std::vector<Int> ab = generator_product(ka, ia, kb, ib);
                        std::vector<Int> ba = generator_product(kb, ib, ka, ia);
                        const int sign = (ka * kb) % 2 == 0 ? 1 : -1;
                        for (Int& x : ba)
                            x *= sign;
                        normalize(ka + kb, ab);
                        normalize(ka + kb, ba);
                        if (ab != ba)
                            return false;
                    }
        return true;
    }

    bool is_associative() const
    {
        for (int ka = 1; ka <= top(); ++ka)
            for (int kb = 1; ka + kb <= top(); ++kb)
                for (int kc = 1; ka + kb + kc <= top(); ++kc)
                    for (std::size_t ia = 0; ia < dim(ka); ++ia)
                        for (std::size_t ib = 0; ib < dim(kb); ++ib)
                            for (std::size_t ic = 0; ic < dim(kc); ++ic) {
                                std::vector<Int> ab = generator_product(ka, ia, kb, ib);
                                std::vector<Int> left = product(ka + kb, ab, kc, unit_vec(kc, ic));
                                std::vector<Int> bc = generator_product(kb, ib, kc, ic);
                                std::vector<Int> right = product(ka, unit_vec(ka, ia), kb + kc, bc);
                                if (left != right)
                                    return false;
                            }
        return true;
    }

    /// d.g = 0 must imply d.(g.h) = 0 for every stored product.
    bool respects_annihilators() const
    {
        for (const auto& [key, coeffs] : table_) {
            const auto [ka, ia, kb, ib] = key;
            const auto& target = gens(ka + kb);
            for (const Int& d : {gen(ka, ia).annihilator, gen(kb, ib).annihilator}) {
                if (d == 0)
                    continue;
                for (std::size_t ic = 0; ic < coeffs.size(); ++ic) {
                    const Int& e = target[ic].annihilator;
                    Int killed = d * coeffs[ic];
                    if (e == 0 ? killed != 0 : killed % e != 0)
                        return false;
                }
            }
        }
        return true;
    }

    using Key = std::array<int, 4>;
    const std::map<Key, std::vector<Int>>& table() const { return table_; }

private:
    const Generator& gen(int k, int i) const { return gens_[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]; }

    std::vector<Int> unit_vec(int k, std::size_t i) const
    {
        std::vector<Int> v(dim(k), Int(0));
        v[i] = 1;
        return v;
    }

    static bool is_zero_vec(const std::vector<Int>& v)
    {
        for (const Int& x : v)
            if (x != 0)
                return false;
        return true;
    }

    void require_degree(int k) const
    {
        if (k < 1 || k > top())
            throw std::invalid_argument("GradedRing: degree out of range");
    }

    CoefficientRing ring_;
    std::vector<std::vector<Generator>> gens_; // index by degree; [0] unused
    std::map<Key, std::vector<Int>> table_;
};

// -- direct sum ----------------------------------------------------------

/// Wedge-sum cohomology: coordinatewise modules, cross products zero.
inline GradedRing direct_sum(const GradedRing& a, const GradedRing& b)
{
    if (a.ring() != b.ring())
        throw std::invalid_argument("direct_sum: coefficient rings differ");
    GradedRing out(a.ring(), std::max(a.top(), b.top()));
    std::vector<std::size_t> offset(static_cast<std::size_t>(out.top()) + 1, 0);
    for (int k = 1; k <= a.top(); ++k) {
        for (const Generator& g : a.gens(k))
            out.add_generator(k, g.label, g.annihilator);
        offset[static_cast<std::size_t>(k)] = a.dim(k);
    }
    for (int k = 1; k <= b.top(); ++k)
        for (const Generator& g : b.gens(k))
            out.add_generator(k, g.label, g.annihilator);

    for (const auto& [key, coeffs] : a.table()) {
        const auto [ka, ia, kb, ib] = key;
        std::vector<Int> padded(out.dim(ka + kb), Int(0));
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            padded[i] = coeffs[i];
        out.set_product(ka, static_cast<std::size_t>(ia), kb, static_cast<std::size_t>(ib), padded);
    }
    for (const auto& [key, coeffs] : b.table()) {
        const auto [ka, ia, kb, ib] = key;
        std::vector<Int> padded(out.dim(ka + kb), Int(0));
        const std::size_t off = offset[static_cast<std::size_t>(ka + kb)];
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            padded[off + i] = coeffs[i];
        out.set_product(ka, static_cast<std::size_t>(ia) + offset[static_cast<std::size_t>(ka)],
                        kb, static_cast<std::size_t>(ib) + offset[static_cast<std::size_t>(kb)], padded);
    }
    return out;
}

// -- tensor product ------------------------------------------------------

namespace detail {

inline bool has_torsion(const GradedRing& r)
{
    for (int k = 1; k <= r.top(); ++k)
        for (const Generator& g : r.gens(k))
            if (g.annihilator != 0)
                return true;
    return false;
}

/// Index of a tensor generator: a pair of factor generators where either
/// side (but not both) may be the adjoined unit, encoded as -1.
struct TensorGen {
    int deg_a;
    int idx_a; // -1 = unit of the first factor
    int deg_b;
    int idx_b; // -1 = unit of the second factor
    bool operator==(const TensorGen& o) const
    {
        return deg_a == o.deg_a && idx_a == o.idx_a && deg_b == o.deg_b && idx_b == o.idx_b;
    }
};

/// Product x . x' inside the unital extension of one factor; the result is a
/// list of (coefficient, generator-or-unit) pairs.
inline std::vector<std::pair<Int, int>> unital_product(const GradedRing& r, int dx, int ix, int dy, int iy)
{
    if (ix == -1 && iy == -1)
        return {{Int(1), -1}};
    if (ix == -1)
        return {{Int(1), iy}};
    if (iy == -1)
        return {{Int(1), ix}};
    std::vector<std::pair<Int, int>> out;
    if (dx + dy > r.top())
        return out;
    std::vector<Int> v = r.generator_product(dx, static_cast<std::size_t>(ix), dy, static_cast<std::size_t>(iy));
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0)
            out.emplace_back(v[i], static_cast<int>(i));
    return out;
}

} // namespace detail

/// Graded tensor product with the Koszul sign rule.  Over the integers at
/// least one factor must be torsion-free in every degree (no Tor terms);
/// otherwise the computation is refused.
inline GradedRing tensor_product(const GradedRing& a, const GradedRing& b)
{
    if (a.ring() != b.ring())
        throw std::invalid_argument("tensor_product: coefficient rings differ");
    const CoefficientRing& ring = a.ring();
    if (!ring.is_field() && detail::has_torsion(a) && detail::has_torsion(b))
        throw std::runtime_error(
            "tensor_product: unsupported over Z when both factors carry torsion");

    const int top = a.top() + b.top();
    GradedRing out(ring, top);

    // Generator layout per degree: unit(x)b-gens, then a(da)(x)b(k-da) blocks,
    // then a-gens(x)unit.
    std::vector<std::vector<detail::TensorGen>> layout(static_cast<std::size_t>(top) + 1);
    for (int k = 1; k <= top; ++k) {
        auto& gl = layout[static_cast<std::size_t>(k)];
        for (int da = 0; da <= k; ++da) {
            const int db = k - da;
            if (da == 0) {
                for (std::size_t ib = 0; ib < b.dim(db); ++ib)
                    gl.push_back({0, -1, db, static_cast<int>(ib)});
            } else if (db == 0) {
                for (std::size_t ia = 0; ia < a.dim(da); ++ia)
                    gl.push_back({da, static_cast<int>(ia), 0, -1});
            } else {
                for (std::size_t ia = 0; ia < a.dim(da); ++ia)
                    for (std::size_t ib = 0; ib < b.dim(db); ++ib)
                        gl.push_back({da, static_cast<int>(ia), db, static_cast<int>(ib)});
            }
        }
        for (const detail::TensorGen& t : gl) {
            const std::string la = t.idx_a == -1 ? "1" : a.gens(t.deg_a)[static_cast<std::size_t>(t.idx_a)].label;
            const std::string lb = t.idx_b == -1 ? "1" : b.gens(t.deg_b)[static_cast<std::size_t>(t.idx_b)].label;
            Int ann = 0;
            if (ring.is_field()) {
                ann = ring.prime();
            } else {
                const Int ann_a = t.idx_a == -1 ? Int(0) : a.gens(t.deg_a)[static_cast<std::size_t>(t.idx_a)].annihilator;
                const Int ann_b = t.idx_b == -1 ? Int(0) : b.gens(t.deg_b)[static_cast<std::size_t>(t.idx_b)].annihilator;
                ann = ann_a != 0 ? ann_a : ann_b;
            }
            out.add_generator(k, la + "⊗" + lb, ann);
        }
    }

    auto find_index = [&](int k, const detail::TensorGen& t) -> std::size_t {
        const auto& gl = layout[static_cast<std::size_t>(k)];
        for (std::size_t i = 0; i < gl.size(); ++i)
            if (gl[i] == t)
                return i;
        throw std::logic_error("tensor_product: generator lookup failed");
    };

    for (int ka = 1; ka <= top; ++ka)
        for (int kb = 1; ka + kb <= top; ++kb) {
            const auto& la = layout[static_cast<std::size_t>(ka)];
            const auto& lb = layout[static_cast<std::size_t>(kb)];
            for (std::size_t ia = 0; ia < la.size(); ++ia)
                for (std::size_t ib = 0; ib < lb.size(); ++ib) {
                    const detail::TensorGen& s = la[ia];
                    const detail::TensorGen& t = lb[ib];
                    // (x(x)y).(x'(x)y') = (-1)^{|y||x'|} (x.x')(x)(y.y')
                    const int sign = (s.deg_b * t.deg_a) % 2 == 0 ? 1 : -1;
                    auto xs = detail::unital_product(a, s.deg_a, s.idx_a, t.deg_a, t.idx_a);
                    auto ys = detail::unital_product(b, s.deg_b, s.idx_b, t.deg_b, t.idx_b);
                    if (xs.empty() || ys.empty())
                        continue;
                    const int kc = ka + kb;
                    std::vector<Int> coeffs(out.dim(kc), Int(0));
                    bool any = false;
                    for (const auto& [cx, gx] : xs)
                        for (const auto& [cy, gy] : ys) {
                            detail::TensorGen target{gx == -1 ? 0 : s.deg_a + t.deg_a, gx,
                                                     gy == -1 ? 0 : s.deg_b + t.deg_b, gy};
                            coeffs[find_index(kc, target)] += sign * cx * cy;
                            any = true;
                        }
                    if (any)
                        out.set_product(ka, ia, kb, ib, coeffs);
                }
        }
    return out;
}

// -- coefficient reduction ------------------------------------------------

/// Mod-p reduction of an integral ring via universal-coefficient counting:
/// degree k picks up the reductions of free and p-divisible classes of
/// degree k plus one lift class per p-divisible torsion class of degree k+1.
/// Products of reduction classes are the mod-p residues of the integral
/// products; products involving lift classes are not determined by the
/// integral presentation and are stored as zero.
inline GradedRing reduce_coefficients(const GradedRing& a, std::int64_t p)
{
    if (a.ring().is_field())
        throw std::invalid_argument("reduce_coefficients: input already has field coefficients");
    const CoefficientRing field = CoefficientRing::prime_field(p);
    GradedRing out(field, a.top());

    // survivors[k][i] = index of the reduction class of generator i, or -1.
    std::vector<std::vector<int>> survivors(static_cast<std::size_t>(a.top()) + 1);
    for (int k = 1; k <= a.top(); ++k) {
        auto& sv = survivors[static_cast<std::size_t>(k)];
        sv.assign(a.dim(k), -1);
        for (std::size_t i = 0; i < a.dim(k); ++i) {
            const Generator& g = a.gens(k)[i];
            if (g.annihilator == 0 || g.annihilator % p == 0)
                sv[i] = static_cast<int>(out.add_generator(k, g.label));
        }
        if (k + 1 <= a.top())
            for (const Generator& h : a.gens(k + 1))
                if (h.annihilator != 0 && h.annihilator % p == 0)
                    out.add_generator(k, h.label + "'");
    }

    for (const auto& [key, coeffs] : a.table()) {
        const auto [ka, ia, kb, ib] = key;
        if (survivors[static_cast<std::size_t>(ka)][static_cast<std::size_t>(ia)] < 0 ||
            survivors[static_cast<std::size_t>(kb)][static_cast<std::size_t>(ib)] < 0)
            continue;
        const int kc = ka + kb;
        std::vector<Int> reduced(out.dim(kc), Int(0));
        bool any = false;
        for (std::size_t ic = 0; ic < coeffs.size(); ++ic) {
            const int target = survivors[static_cast<std::size_t>(kc)][ic];
            if (target < 0)
                continue;
            reduced[static_cast<std::size_t>(target)] = mod_nonneg(coeffs[ic], p);
            any = true;
        }
        if (any)
            out.set_product(ka,
                            static_cast<std::size_t>(survivors[static_cast<std::size_t>(ka)][static_cast<std::size_t>(ia)]),
                            kb,
                            static_cast<std::size_t>(survivors[static_cast<std::size_t>(kb)][static_cast<std::size_t>(ib)]),
                            reduced);
    }
    return out;
}

} // namespace endsum
