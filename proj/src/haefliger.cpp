#include "hypermod/haefliger.hpp"

namespace hypermod {

namespace {

struct PsiContext {
    std::shared_ptr<const FreeAlgebra> z_alg;
    std::shared_ptr<const FreeAlgebra> x_alg;
    std::shared_ptr<const TensorAlgebra> tensor;  // Λ(z) ⊗ Λ(x') ⊗ H*(X)
};

PsiContext make_context(const VarietyData& v)
{
    PsiContext ctx;
    ctx.z_alg = FreeAlgebra::make({{"z", 2}});
    std::vector<GeneratorSpec> primes;
    for (const auto& label : v.h1_basis)
        primes.push_back({label + "'", 1});
    ctx.x_alg = FreeAlgebra::make(std::move(primes));
    ctx.tensor = TensorAlgebra::make({ctx.z_alg, ctx.x_alg, v.ring});
    return ctx;
}

TensorElement psi_chi(const VarietyData& v, const PsiContext& ctx)
{
    const auto& t = ctx.tensor;
    const Element one_z = Element::one(ctx.z_alg);
    const Element one_x = Element::one(ctx.x_alg);
    const Element one_h = Element::one(v.ring);

    TensorElement base = pure_tensor(t, {generator_element(ctx.z_alg, 0), one_x, one_h}) +
                         pure_tensor(t, {one_z, one_x, v.alpha.algebra_ptr() ? v.alpha : Element::zero(v.ring)});
    for (std::size_t j = 0; j < v.h1_basis.size(); ++j)
        base = base + pure_tensor(t, {one_z, generator_element(ctx.x_alg, static_cast<GenId>(j)),
                                      ring_element(v.ring, v.h1_basis[j])});

    const auto jet = jet_chern(v);
    const unsigned top = static_cast<unsigned>(v.dim) + 1;
    TensorElement sum = TensorElement::zero(t);
    TensorElement pw = TensorElement::one(t);
    // powers base^0 .. base^{n+1}, reused from the low end
    std::vector<TensorElement> powers{pw};
    for (unsigned m = 1; m <= top; ++m)
        powers.push_back(mul(powers.back(), base));
    for (unsigned i = 0; i <= top; ++i) {
        TensorElement ci = pure_tensor(t, {one_z, one_x, jet.classes[i]});
        TensorElement term = mul(ci, powers[top - i]);
        sum = sum + (i % 2 == 0 ? term : -term);
    }
    return sum;
}

}  // namespace

TensorElement compute_k1(const VarietyData& v)
{
    auto z_alg = FreeAlgebra::make({{"z", 2}});
    auto tensor = TensorAlgebra::make({v.ring, z_alg});
    const auto jet = jet_chern(v);
    const unsigned top = static_cast<unsigned>(v.dim) + 1;
    const Element z = generator_element(z_alg, 0);
    TensorElement sum = TensorElement::zero(tensor);
    for (unsigned i = 0; i <= top; ++i) {
        TensorElement term = pure_tensor(tensor, {jet.classes[i], power(z, top - i)});
        sum = sum + (i % 2 == 0 ? term : -term);
    }
    return sum;
}

TensorElement compute_psi_chi(const VarietyData& v)
{
    return psi_chi(v, make_context(v));
}

CDGAPresentation build_section_cdga(const VarietyData& v)
{
    require_valid(v);
    const auto ctx = make_context(v);
    const TensorElement psi = psi_chi(v, ctx);
    const int n = v.dim;

    std::vector<GeneratorSpec> specs{{"z", 2}};
    for (const auto& label : v.h1_basis)
        specs.push_back({label + "'", 1});
    struct Dual {
        int i;
        std::string label;
    };
    std::vector<Dual> duals;
    for (int i = 2; i <= 2 * n + 2; ++i)
        for (std::size_t idx : v.ring->indices_of_degree(2 * n + 2 - i)) {
            const auto& label = v.ring->entry(idx).label;
            duals.push_back({i, label});
            specs.push_back({"w" + std::to_string(i) + "_" + label, i - 1});
        }
    auto alg = FreeAlgebra::make(std::move(specs));

    // Λ(z) ⊗ Λ(x') → Λ(z, x', w): z ↦ z, x_j' ↦ x_j'
    const Element z_img = generator_element(alg, 0);
    std::vector<Element> x_imgs;
    for (std::size_t j = 0; j < v.h1_basis.size(); ++j)
        x_imgs.push_back(generator_element(alg, static_cast<GenId>(1 + j)));
    auto target = TensorAlgebra::make({ctx.z_alg, ctx.x_alg});
    auto flatten = [&](const TensorElement& e) {
        Element out = Element::zero(alg);
        for (const auto& [k, c] : e.terms()) {
            Element zpart = substitute(Element::basis(ctx.z_alg, k[0], c), std::span(&z_img, 1), alg);
            Element xpart = substitute(Element::basis(ctx.x_alg, k[1]), x_imgs, alg);
            out = out + mul(zpart, xpart);
        }
        return out;
    };

    CDGAPresentation cdga{alg, {}};
    cdga.differential.push_back(Element::zero(alg));
    for (std::size_t j = 0; j < v.h1_basis.size(); ++j)
        cdga.differential.push_back(Element::zero(alg));
    for (const auto& dual : duals)
        cdga.differential.push_back(flatten(cap_dual(dual.label, psi, target)));
    return cdga;
}

std::vector<std::pair<std::string, std::string>> torus_display_names()
{
    return {{"w2_u", "y1"}, {"w3_a", "y2"}, {"w3_b", "y2'"}, {"w4_1", "y3"}};
}

}  // namespace hypermod
