#pragma once

#include "endsum/integers.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace endsum {

/// Expression tree over the closed oriented manifolds the library knows:
/// spheres, lens spaces L(k,1), surfaces, tori, products, connected sums,
/// and an opaque mod-p homology 3-sphere.  Values normalize on construction:
/// sphere summands are dropped from connected sums, surface summands merge,
/// connected sums flatten and sort, Sigma(0) becomes S(2) and L(1) becomes
/// S(3).  Structural equality of normalized values is the identity used for
/// node labels throughout.
class ManifoldExpr {
public:
    enum class Kind { sphere, lens, surface, torus, homology_sphere3, product, conn_sum };

    static ManifoldExpr sphere(std::int64_t n)
    {
        if (n < 2)
            throw std::invalid_argument("sphere: dimension must be at least 2");
        return ManifoldExpr(Kind::sphere, n);
    }

    static ManifoldExpr lens(std::int64_t k)
    {
        if (k < 1)
            throw std::invalid_argument("lens: order must be at least 1");
        if (k == 1)
            return sphere(3); // L(1,1) is the 3-sphere
        return ManifoldExpr(Kind::lens, k);
    }

    static ManifoldExpr surface(std::int64_t g)
    {
        if (g < 0)
            throw std::invalid_argument("surface: genus must be nonnegative");
        if (g == 0)
            return sphere(2);
        return ManifoldExpr(Kind::surface, g);
    }

    static ManifoldExpr torus(std::int64_t k)
    {
        if (k < 1)
            throw std::invalid_argument("torus: factor count must be at least 1");
        return ManifoldExpr(Kind::torus, k);
    }

    static ManifoldExpr homology_sphere3(std::int64_t p)
    {
        if (!is_prime(p))
            throw std::invalid_argument("homology_sphere3: parameter must be prime");
        return ManifoldExpr(Kind::homology_sphere3, p);
    }

    static ManifoldExpr product(ManifoldExpr a, ManifoldExpr b)
    {
        ManifoldExpr e(Kind::product, 0);
        e.children_.push_back(std::move(a));
        e.children_.push_back(std::move(b));
        return e;
    }

    static ManifoldExpr conn_sum(ManifoldExpr a, ManifoldExpr b)
    {
        const std::int64_t da = a.dimension();
        const std::int64_t db = b.dimension();
        if (da != db)
            throw std::invalid_argument("conn_sum: dimension mismatch (" + std::to_string(da) +
                                        " vs " + std::to_string(db) + ")");
        if (da < 2)
            throw std::invalid_argument("conn_sum: dimension must be at least 2");

        std::vector<ManifoldExpr> summands;
        auto flatten = [&summands](const ManifoldExpr& x) {
            if (x.kind_ == Kind::conn_sum)
                summands.insert(summands.end(), x.children_.begin(), x.children_.end());
            else
                summands.push_back(x);
        };
        flatten(a);
        flatten(b);

        // Sphere summands are the identity for connected sum.
        std::erase_if(summands, [](const ManifoldExpr& x) { return x.kind_ == Kind::sphere; });

        // Closed surfaces of genus g and h sum to genus g + h.
        std::int64_t genus = 0;
        std::erase_if(summands, [&genus](const ManifoldExpr& x) {
            if (x.kind_ == Kind::surface) {
                genus += x.param_;
                return true;
            }
            return false;
        });
        if (genus > 0)
            summands.push_back(surface(genus));

        if (summands.empty())
            return sphere(da);
        std::sort(summands.begin(), summands.end());
        if (summands.size() == 1)
            return summands.front();
        ManifoldExpr e(Kind::conn_sum, 0);
        e.children_ = std::move(summands);
        return e;
    }

    Kind kind() const { return kind_; }
    std::int64_t param() const { return param_; }
    const std::vector<ManifoldExpr>& children() const { return children_; }

    std::int64_t dimension() const
    {
        switch (kind_) {
        case Kind::sphere: return param_;
        case Kind::lens: return 3;
        case Kind::surface: return 2;
        case Kind::torus: return param_;
        case Kind::homology_sphere3: return 3;
        case Kind::product: return children_[0].dimension() + children_[1].dimension();
        case Kind::conn_sum: return children_[0].dimension();
        }
        return 0;
    }

    bool operator==(const ManifoldExpr& o) const
    {
        return kind_ == o.kind_ && param_ == o.param_ && children_ == o.children_;
    }
    bool operator!=(const ManifoldExpr& o) const { return !(*this == o); }

    bool operator<(const ManifoldExpr& o) const
    {
        if (kind_ != o.kind_)
            return kind_ < o.kind_;
        if (param_ != o.param_)
            return param_ < o.param_;
        return std::lexicographical_compare(children_.begin(), children_.end(),
                                            o.children_.begin(), o.children_.end());
    }

    std::string to_string() const
    {
        switch (kind_) {
        case Kind::sphere: return "S(" + std::to_string(param_) + ")";
        case Kind::lens: return "L(" + std::to_string(param_) + ")";
        case Kind::surface: return "Sigma(" + std::to_string(param_) + ")";
        case Kind::torus: return "T(" + std::to_string(param_) + ")";
        case Kind::homology_sphere3: return "HS3(" + std::to_string(param_) + ")";
        case Kind::product: {
            // 'x' binds tighter than '#', so sums need parentheses here.
            auto wrap = [](const ManifoldExpr& c) {
                const bool parens = c.kind_ == Kind::conn_sum || c.kind_ == Kind::product;
                return parens ? "(" + c.to_string() + ")" : c.to_string();
            };
            return wrap(children_[0]) + " x " + wrap(children_[1]);
        }
        case Kind::conn_sum: {
            std::string out;
            for (std::size_t i = 0; i < children_.size(); ++i) {
                if (i > 0)
                    out += " # ";
                out += children_[i].to_string();
            }
            return out;
        }
        }
        return {};
    }

private:
    ManifoldExpr(Kind k, std::int64_t param) : kind_(k), param_(param) {}

    Kind kind_;
    std::int64_t param_;
    std::vector<ManifoldExpr> children_;
};

inline std::int64_t dimension(const ManifoldExpr& m) { return m.dimension(); }

} // namespace endsum
