#pragma once

#include "hypermod/variety.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace testing_support {

inline const std::vector<std::string>& builtin_names()
{
    static const std::vector<std::string> names{"torus",  "p1",      "p2",          "p3",
                                                "curve0", "curve2",  "curve3",      "abelian1",
                                                "abelian2", "product:p1,p1", "product:p1,torus", "product:p1,p2"};
    return names;
}

// Integer combination of the degree-2 classes with entries in [lo, hi].
inline hypermod::Element random_divisor(const hypermod::VarietyData& v, std::mt19937& rng, int lo = -6, int hi = 12)
{
    std::uniform_int_distribution<int> dist(lo, hi);
    auto e = hypermod::Element::zero(v.ring);
    for (std::size_t i : v.ring->indices_of_degree(2))
        e = e + hypermod::ring_element(v.ring, v.ring->entry(i).label, hypermod::Rational(dist(rng)));
    return e;
}

using Table = std::vector<std::vector<std::optional<hypermod::RingPresentation::SparseVector>>>;

inline Table table_of(const hypermod::RingPresentation& r)
{
    Table t(r.size(), std::vector<std::optional<hypermod::RingPresentation::SparseVector>>(r.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < r.size(); ++j)
            t[i][j] = r.product(i, j);
    return t;
}

// v with its ring replaced by the same basis under a new product table.
inline hypermod::VarietyData with_table(const hypermod::VarietyData& v, Table t, std::optional<std::string> point)
{
    using namespace hypermod;
    VarietyData out = v;
    auto ring = std::make_shared<const RingPresentation>(v.ring->basis(), std::move(t), v.ring->top_degree(), point);
    out.ring = ring;
    auto move = [&](const Element& e) {
        std::vector<std::pair<std::string, Rational>> terms;
        for (const auto& [k, c] : e.terms())
            terms.emplace_back(v.ring->entry(RingPresentation::index_of(k)).label, c);
        return ring_element(ring, terms);
    };
    for (auto& c : out.tangent_chern)
        c = move(c);
    out.alpha = move(v.alpha);
    if (out.polarization)
        out.polarization = move(*out.polarization);
    for (auto& c : out.toric_curves)
        c = move(c);
    return out;
}

// Builtins with one structure constant x_i·x_j (i != j, both non-unit, product
// nonzero) rescaled, negated or dropped while x_j·x_i is left alone.
inline std::vector<hypermod::VarietyData> mutated_rings(std::size_t count)
{
    using namespace hypermod;
    std::vector<VarietyData> out;
    int kind = 0;
    for (const auto& name : builtin_names()) {
        const auto v = builtin(name);
        const auto point = v.ring->point_class();
        for (std::size_t i = 1; i < v.ring->size(); ++i)
            for (std::size_t j = 1; j < v.ring->size(); ++j) {
                if (out.size() == count)
                    return out;
                auto t = table_of(*v.ring);
                if (i == j || !t[i][j] || t[i][j]->empty())
                    continue;
                switch (kind++ % 3) {
                case 0:
                    for (auto& [k, c] : *t[i][j])
                        c *= 2;
                    break;
                case 1:
                    for (auto& [k, c] : *t[i][j])
                        c = -c;
                    break;
                default:
                    t[i][j]->clear();
                }
                out.push_back(with_table(v, std::move(t), point));
            }
    }
    return out;
}

}  // namespace testing_support
