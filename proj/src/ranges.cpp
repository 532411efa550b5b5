#include "hypermod/ranges.hpp"

#include <algorithm>
#include <stdexcept>

namespace hypermod {

std::string_view to_string(BoundSource s)
{
    switch (s) {
    case BoundSource::curve_RR:
        return "curve_RR";
    case BoundSource::toric:
        return "toric";
    case BoundSource::tensor_additivity:
        return "tensor_additivity";
    case BoundSource::user_supplied:
        return "user_supplied";
    case BoundSource::surface_fujita:
        return "surface_fujita";
    }
    return "user_supplied";
}

BoundSource parse_bound_source(std::string_view s)
{
    for (auto src : {BoundSource::curve_RR, BoundSource::toric, BoundSource::tensor_additivity,
                     BoundSource::user_supplied, BoundSource::surface_fujita})
        if (to_string(src) == s)
            return src;
    throw std::invalid_argument("unknown bound source '" + std::string(s) + "'");
}

int d_curve(int genus, int degree)
{
    if (genus < 0)
        throw std::invalid_argument("d_curve: genus must be non-negative");
    return std::max(degree - 2 * genus, -1);
}

int d_toric(std::span<const int> intersections)
{
    if (intersections.empty())
        throw std::invalid_argument("d_toric: no torus-invariant curves given");
    return std::max(*std::min_element(intersections.begin(), intersections.end()), -1);
}

int d_tensor(int a, int b)
{
    if (a < 0 || b < 0)
        throw std::invalid_argument("d_tensor: jet-ampleness bounds must be non-negative");
    return a + b;
}

int d_power(int dL, int k)
{
    if (dL < 0 || k < 1)
        throw std::invalid_argument("d_power: need dL >= 0 and k >= 1");
    return k * dL;
}

Integer length_bound(int n, int d)
{
    if (n < 1 || d < 0)
        throw std::invalid_argument("length_bound: need n >= 1 and d >= 0");
    Integer total = 0;
    Integer term = 1;  // binom(n-1+j, j)
    for (int j = 0; j <= d; ++j) {
        if (j > 0)
            term = term * (n - 1 + j) / j;
        total += term;
    }
    return total;
}

int main_range(int d)
{
    const int shifted = d - 4;
    // floor division towards -inf
    return shifted >= 0 ? shifted / 2 : -((-shifted + 1) / 2);
}

int stability_range(int dL, int k)
{
    return main_range(d_power(dL, k));
}

int curve_range(int genus, int degree)
{
    return main_range(d_curve(genus, degree));
}

FujitaClass surface_fujita_class(const VarietyData& surface, const Element& ample, const Element& very_ample, int d)
{
    if (surface.dim != 2)
        throw std::invalid_argument("surface_fujita_class: variety has dimension " + std::to_string(surface.dim) +
                                    ", expected 2");
    if (d < 1)
        throw std::invalid_argument("surface_fujita_class: d must be at least 1");
    FujitaClass out;
    out.divisor = canonical_class(surface) + ample * Rational(4) + very_ample * Rational(d - 1);
    out.claimed_bound = d;
    out.assumptions = {"A ample (user-asserted)", "L very ample (user-asserted)",
                       "K_X + 4A very ample on surfaces (Reider)"};
    return out;
}

RangeReport make_range_report(int jet_bound, BoundSource source, bool exact, std::vector<std::string> assumptions)
{
    if (jet_bound < -1)
        throw std::invalid_argument("jet bound must be at least -1");
    return RangeReport{jet_bound, source, exact, main_range(jet_bound), std::move(assumptions)};
}

std::optional<RangeReport> automatic_range(const VarietyData& v)
{
    std::vector<std::string> assumptions;
    if (v.ampleness_asserted)
        assumptions.push_back("alpha and alpha - c1(K_X) ample");
    else
        assumptions.push_back("ampleness of alpha and alpha - c1(K_X) NOT established; range not applicable");
    if (v.dim == 1) {
        const int genus = static_cast<int>(v.h1_basis.size() / 2);
        const Rational deg = integrate(v.alpha);
        if (deg.get_den() != 1)
            throw std::invalid_argument("alpha has non-integral degree " + format_rational(deg));
        return make_range_report(d_curve(genus, static_cast<int>(deg.get_num().get_si())), BoundSource::curve_RR, true,
                                 std::move(assumptions));
    }
    if (!v.toric_curves.empty()) {
        std::vector<int> values;
        for (const auto& c : v.toric_curves) {
            const Rational x = integrate(mul(v.alpha, c));
            if (x.get_den() != 1)
                throw std::invalid_argument("alpha has non-integral intersection " + format_rational(x));
            values.push_back(static_cast<int>(x.get_num().get_si()));
        }
        return make_range_report(d_toric(values), BoundSource::toric, true, std::move(assumptions));
    }
    return std::nullopt;
}

}  // namespace hypermod
