#include "hypermod/cdga.hpp"

#include <algorithm>

namespace hypermod {

Element CDGAPresentation::d(GenId id) const
{
    const auto& e = differential.at(id);
    return e.algebra_ptr() ? e : Element::zero(algebra);
}

Element apply_differential(const CDGAPresentation& cdga, const Element& x)
{
    const auto& alg = cdga.algebra;
    if (x.algebra_ptr() && x.algebra_ptr() != alg)
        throw MismatchedAlgebraError("apply_differential: element outside the CDGA");
    Element result = Element::zero(alg);
    for (const auto& [m, c] : x.terms()) {
        const auto& fs = m.factors();
        int prefix_degree = 0;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            const auto& gen = alg->generator(fs[i].gen);
            Element dg = cdga.d(fs[i].gen);
            if (!dg.is_zero()) {
                std::vector<Factor> pre(fs.begin(), fs.begin() + static_cast<long>(i));
                std::vector<Factor> post(fs.begin() + static_cast<long>(i) + 1, fs.end());
                Rational coeff = c;
                if (prefix_degree % 2 != 0)
                    coeff = -coeff;
                if (fs[i].exp > 1) {
                    coeff *= fs[i].exp;
                    post.insert(post.begin(), Factor{fs[i].gen, fs[i].exp - 1});
                }
                Element left = Element::basis(alg, Monomial(std::move(pre)), coeff);
                Element right = Element::basis(alg, Monomial(std::move(post)));
                result = result + mul(mul(left, dg), right);
            }
            prefix_degree += gen.degree * static_cast<int>(fs[i].exp);
        }
    }
    return result;
}

std::vector<std::string> check_cdga(const CDGAPresentation& cdga)
{
    std::vector<std::string> out;
    if (!cdga.algebra) {
        out.push_back("missing algebra");
        return out;
    }
    if (cdga.differential.size() != cdga.algebra->size()) {
        out.push_back("differential must be given on every generator");
        return out;
    }
    for (const auto& g : cdga.algebra->generators()) {
        if (g.degree <= 0)
            out.push_back("generator " + g.name + " has degree " + std::to_string(g.degree) + " (must be >= 1)");
        Element dg = cdga.d(g.id);
        if (dg.algebra_ptr() != cdga.algebra) {
            out.push_back("d(" + g.name + ") lies outside the algebra");
            continue;
        }
        if (!dg.is_zero() && dg.degree() != g.degree + 1)
            out.push_back("d(" + g.name + ") is not homogeneous of degree " + std::to_string(g.degree + 1));
        if (!apply_differential(cdga, dg).is_zero())
            out.push_back("d(d(" + g.name + ")) != 0");
    }
    return out;
}

namespace {

// Transports an element along a generator id map into another free algebra.
Element transport(const Element& x, const std::shared_ptr<const FreeAlgebra>& target, const std::vector<GenId>& to)
{
    std::vector<Element> images;
    for (GenId g = 0; g < to.size(); ++g)
        images.push_back(generator_element(target, to[g]));
    return substitute(x, images, target);
}

}  // namespace

CDGAPresentation rename_generators(const CDGAPresentation& cdga,
                                   const std::vector<std::pair<std::string, std::string>>& renames)
{
    std::vector<GeneratorSpec> specs;
    for (const auto& g : cdga.algebra->generators()) {
        std::string name = g.name;
        for (const auto& [from, to] : renames)
            if (from == g.name)
                name = to;
        specs.push_back({name, g.degree});
    }
    auto alg = FreeAlgebra::make(std::move(specs));
    std::vector<GenId> identity(cdga.algebra->size());
    for (GenId i = 0; i < identity.size(); ++i)
        identity[i] = i;
    CDGAPresentation out{alg, {}};
    for (GenId i = 0; i < identity.size(); ++i)
        out.differential.push_back(transport(cdga.d(i), alg, identity));
    return out;
}

CDGAPresentation reorder_generators(const CDGAPresentation& cdga, const std::vector<GenId>& order)
{
    const std::size_t n = cdga.algebra->size();
    if (order.size() != n)
        throw std::invalid_argument("reorder_generators: order has the wrong length");
    std::vector<GenId> new_id(n, static_cast<GenId>(n));
    std::vector<GeneratorSpec> specs;
    for (GenId i = 0; i < n; ++i) {
        const auto& g = cdga.algebra->generator(order[i]);
        if (new_id[order[i]] != n)
            throw std::invalid_argument("reorder_generators: not a permutation");
        new_id[order[i]] = i;
        specs.push_back({g.name, g.degree});
    }
    auto alg = FreeAlgebra::make(std::move(specs));
    CDGAPresentation out{alg, {}};
    for (GenId i = 0; i < n; ++i)
        out.differential.push_back(transport(cdga.d(order[i]), alg, new_id));
    return out;
}

}  // namespace hypermod
