#include "hypermod/variety.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>

namespace hypermod {

namespace {

using SparseVector = RingPresentation::SparseVector;
using ProductFn = std::function<SparseVector(std::size_t, std::size_t)>;

std::shared_ptr<const RingPresentation> make_ring(std::vector<BasisEntry> basis, const ProductFn& product,
                                                  int top_degree, std::string point_class)
{
    const std::size_t n = basis.size();
    std::vector<std::vector<std::optional<SparseVector>>> table(n, std::vector<std::optional<SparseVector>>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            table[i][j] = product(i, j);
    return std::make_shared<const RingPresentation>(std::move(basis), std::move(table), top_degree,
                                                    std::move(point_class));
}

// Rank of a dense rational matrix by Gaussian elimination.
std::size_t dense_rank(std::vector<std::vector<Rational>> m)
{
    std::size_t rank = 0;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && m[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(m[p], m[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (m[r][c] == 0)
                continue;
            Rational f = m[r][c] / m[rank][c];
            for (std::size_t k = c; k < cols; ++k)
                m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

bool in_ring(const Element& e, const VarietyData& v)
{
    return e.is_zero() || e.algebra_ptr() == v.ring;
}

Element embed(const Element& e, const std::shared_ptr<const RingPresentation>& target,
              const std::function<std::size_t(std::size_t)>& index_map)
{
    Element::Terms t;
    for (const auto& [k, c] : e.terms())
        t[RingPresentation::key(index_map(RingPresentation::index_of(k)))] += c;
    return Element(target, std::move(t));
}

}  // namespace

std::vector<std::string> validate(const VarietyData& v, const ValidationOptions& options)
{
    std::vector<std::string> out;
    if (!v.ring) {
        out.push_back("ring: missing cohomology ring");
        return out;
    }
    const auto& ring = *v.ring;
    if (v.dim < 1)
        out.push_back("dimension: n = " + std::to_string(v.dim) + " must be at least 1");
    if (ring.top_degree() != 2 * v.dim)
        out.push_back("dimension: ring top degree " + std::to_string(ring.top_degree()) + " differs from 2n = " +
                      std::to_string(2 * v.dim));
    auto ring_violations = ring.validate();
    out.insert(out.end(), ring_violations.begin(), ring_violations.end());

    std::vector<std::string> seen;
    for (const auto& label : v.h1_basis) {
        auto idx = ring.index(label);
        if (!idx)
            out.push_back("h1 basis: label '" + label + "' is not in the basis");
        else if (ring.entry(*idx).degree != 1)
            out.push_back("h1 basis: label '" + label + "' is not of degree 1");
        if (std::find(seen.begin(), seen.end(), label) != seen.end())
            out.push_back("h1 basis: label '" + label + "' listed twice");
        seen.push_back(label);
    }
    if (ring.betti(1) != v.h1_basis.size())
        out.push_back("h1 basis: lists " + std::to_string(v.h1_basis.size()) + " classes but dim H^1 = " +
                      std::to_string(ring.betti(1)));

    if (v.tangent_chern.size() != static_cast<std::size_t>(std::max(v.dim, 0)))
        out.push_back("tangent chern: expected " + std::to_string(v.dim) + " classes, got " +
                      std::to_string(v.tangent_chern.size()));
    for (std::size_t i = 0; i < v.tangent_chern.size(); ++i) {
        const auto& c = v.tangent_chern[i];
        const int want = 2 * static_cast<int>(i + 1);
        if (!in_ring(c, v))
            out.push_back("tangent chern: c_" + std::to_string(i + 1) + " is not in the cohomology ring");
        else if (!c.is_zero() && c.degree() != want)
            out.push_back("tangent chern: c_" + std::to_string(i + 1) + " is not homogeneous of degree " +
                          std::to_string(want));
    }
    if (!in_ring(v.alpha, v))
        out.push_back("alpha: not in the cohomology ring");
    else if (!v.alpha.is_zero() && v.alpha.degree() != 2)
        out.push_back("alpha: not homogeneous of degree 2");
    if (v.polarization) {
        if (!in_ring(*v.polarization, v))
            out.push_back("polarization: not in the cohomology ring");
        else if (!v.polarization->is_zero() && v.polarization->degree() != 2)
            out.push_back("polarization: not homogeneous of degree 2");
    }
    for (std::size_t i = 0; i < v.toric_curves.size(); ++i) {
        const auto& c = v.toric_curves[i];
        if (!in_ring(c, v) || (!c.is_zero() && c.degree() != 2 * v.dim - 2))
            out.push_back("toric curves: class " + std::to_string(i) + " is not of degree 2n-2");
    }

    if (options.check_poincare_pairing && ring_violations.empty() && ring.point_class()) {
        const int top = ring.top_degree();
        const auto pt = RingPresentation::key(ring.require_index(*ring.point_class()));
        for (int q = 0; q <= top; ++q) {
            auto left = ring.indices_of_degree(q);
            auto right = ring.indices_of_degree(top - q);
            if (left.size() != right.size()) {
                out.push_back("poincare pairing: b_" + std::to_string(q) + " != b_" + std::to_string(top - q));
                continue;
            }
            std::vector<std::vector<Rational>> m(left.size(), std::vector<Rational>(right.size()));
            for (std::size_t i = 0; i < left.size(); ++i)
                for (std::size_t j = 0; j < right.size(); ++j) {
                    auto prod = ring.multiply(RingPresentation::key(left[i]), RingPresentation::key(right[j]));
                    auto it = prod.find(pt);
                    m[i][j] = it == prod.end() ? Rational(0) : it->second;
                }
            if (dense_rank(m) != left.size())
                out.push_back("poincare pairing: degenerate between degrees " + std::to_string(q) + " and " +
                              std::to_string(top - q));
        }
    }
    return out;
}

void require_valid(const VarietyData& v)
{
    auto violations = validate(v);
    if (violations.empty())
        return;
    std::string msg = "invalid variety '" + v.name + "':";
    for (const auto& s : violations)
        msg += "\n  " + s;
    throw std::invalid_argument(msg);
}

JetChernData jet_chern(const VarietyData& v)
{
    JetChernData out;
    out.classes.push_back(Element::one(v.ring));
    for (std::size_t i = 0; i < v.tangent_chern.size(); ++i) {
        const Element& c = v.tangent_chern[i].algebra_ptr() ? v.tangent_chern[i] : Element::zero(v.ring);
        out.classes.push_back(i % 2 == 0 ? -c : c);  // index i holds c_{i+1}
    }
    out.classes.push_back(Element::zero(v.ring));
    return out;
}

Element canonical_class(const VarietyData& v)
{
    if (v.tangent_chern.empty())
        return Element::zero(v.ring);
    return -v.tangent_chern.front();
}

std::vector<std::size_t> betti_numbers(const VarietyData& v)
{
    std::vector<std::size_t> b;
    for (int q = 0; q <= v.ring->top_degree(); ++q)
        b.push_back(v.ring->betti(q));
    return b;
}

std::optional<bool> decide_ampleness(const VarietyData& v)
{
    if (!v.ring || !v.ring->point_class())
        return std::nullopt;
    const Element anti_k = v.tangent_chern.empty() ? Element::zero(v.ring) : v.tangent_chern.front();
    const Element shifted = v.alpha + anti_k;  // alpha - c_1(K_X)
    if (v.dim == 1)
        return integrate(v.alpha) > 0 && integrate(shifted) > 0;
    if (!v.toric_curves.empty()) {
        for (const auto& c : v.toric_curves)
            if (integrate(mul(v.alpha, c)) <= 0 || integrate(mul(shifted, c)) <= 0)
                return false;
        return true;
    }
    return std::nullopt;
}

VarietyData with_alpha(VarietyData v, Element alpha)
{
    v.alpha = std::move(alpha);
    v.ampleness_asserted = decide_ampleness(v).value_or(false);
    return v;
}

VarietyData projective_space(int n)
{
    if (n < 1)
        throw std::invalid_argument("projective_space: n must be at least 1");
    std::vector<BasisEntry> basis;
    for (int i = 0; i <= n; ++i)
        basis.push_back({i == 0 ? "1" : (i == 1 ? "h" : "h^" + std::to_string(i)), 2 * i});
    auto ring = make_ring(
        basis,
        [n](std::size_t i, std::size_t j) {
            if (static_cast<int>(i + j) > n)
                return SparseVector{};
            return SparseVector{{i + j, Rational(1)}};
        },
        2 * n, basis.back().label);
    VarietyData v;
    v.name = "P" + std::to_string(n);
    v.dim = n;
    v.ring = ring;
    Integer binom = 1;
    for (int i = 1; i <= n; ++i) {
        binom = binom * (n + 2 - i) / i;  // binom(n+1, i)
        v.tangent_chern.push_back(Element::basis(ring, RingPresentation::key(i), Rational(binom)));
    }
    v.alpha = ring_element(ring, "h");
    v.polarization = v.alpha;
    v.toric_curves.push_back(Element::basis(ring, RingPresentation::key(static_cast<std::size_t>(n - 1))));
    v.ampleness_asserted = decide_ampleness(v).value_or(false);
    return v;
}

VarietyData curve(int genus)
{
    if (genus < 0)
        throw std::invalid_argument("curve: genus must be non-negative");
    const auto g = static_cast<std::size_t>(genus);
    std::vector<BasisEntry> basis{{"1", 0}};
    auto name_a = [&](std::size_t i) { return g == 1 ? std::string("a") : "a" + std::to_string(i + 1); };
    auto name_b = [&](std::size_t i) { return g == 1 ? std::string("b") : "b" + std::to_string(i + 1); };
    for (std::size_t i = 0; i < g; ++i)
        basis.push_back({name_a(i), 1});
    for (std::size_t i = 0; i < g; ++i)
        basis.push_back({name_b(i), 1});
    basis.push_back({"u", 2});
    const std::size_t top = basis.size() - 1;
    auto ring = make_ring(
        basis,
        [g, top](std::size_t i, std::size_t j) -> SparseVector {
            if (i == 0)
                return {{j, Rational(1)}};
            if (j == 0)
                return {{i, Rational(1)}};
            if (i >= 1 && i <= g && j == i + g)
                return {{top, Rational(1)}};  // a_k b_k = u
            if (j >= 1 && j <= g && i == j + g)
                return {{top, Rational(-1)}};  // b_k a_k = -u
            return {};
        },
        2, "u");
    VarietyData v;
    v.name = genus == 1 ? "torus" : "curve" + std::to_string(genus);
    v.dim = 1;
    v.ring = ring;
    for (std::size_t i = 0; i < g; ++i)
        v.h1_basis.push_back(name_a(i));
    for (std::size_t i = 0; i < g; ++i)
        v.h1_basis.push_back(name_b(i));
    v.tangent_chern.push_back(ring_element(ring, "u", Rational(2 - 2 * genus)));
    v.alpha = ring_element(ring, "u");
    v.polarization = v.alpha;
    if (genus == 0)
        v.toric_curves.push_back(Element::one(ring));
    v.ampleness_asserted = decide_ampleness(v).value_or(false);
    return v;
}

VarietyData abelian(int g)
{
    if (g < 1)
        throw std::invalid_argument("abelian: dimension must be at least 1");
    const int gens = 2 * g;
    std::vector<std::uint32_t> subsets;
    for (std::uint32_t s = 0; s < (1u << gens); ++s)
        subsets.push_back(s);
    std::stable_sort(subsets.begin(), subsets.end(), [](std::uint32_t a, std::uint32_t b) {
        if (a == b)
            return false;
        const int pa = std::popcount(a), pb = std::popcount(b);
        if (pa != pb)
            return pa < pb;
        // lexicographic on the sorted index lists
        for (int i = 0;; ++i) {
            const bool ba = (a >> i) & 1u, bb = (b >> i) & 1u;
            if (ba != bb)
                return ba;
        }
    });
    std::vector<BasisEntry> basis;
    std::map<std::uint32_t, std::size_t> position;
    for (auto s : subsets) {
        std::string label;
        for (int i = 0; i < gens; ++i)
            if ((s >> i) & 1u)
                label += "e" + std::to_string(i + 1);
        position[s] = basis.size();
        basis.push_back({label.empty() ? "1" : label, std::popcount(s)});
    }
    auto ring = make_ring(
        basis,
        [&](std::size_t i, std::size_t j) -> SparseVector {
            const std::uint32_t s = subsets[i], t = subsets[j];
            if (s & t)
                return {};
            // sign: pairs (x in s, y in t) with y < x must be passed
            int inversions = 0;
            for (int y = 0; y < gens; ++y)
                if ((t >> y) & 1u)
                    inversions += std::popcount(s >> (y + 1));
            return {{position.at(s | t), Rational(inversions % 2 == 0 ? 1 : -1)}};
        },
        2 * g, basis.back().label);
    VarietyData v;
    v.name = "abelian" + std::to_string(g);
    v.dim = g;
    v.ring = ring;
    for (int i = 0; i < gens; ++i)
        v.h1_basis.push_back("e" + std::to_string(i + 1));
    for (int i = 0; i < g; ++i)
        v.tangent_chern.push_back(Element::zero(ring));
    Element theta = Element::zero(ring);
    for (int i = 0; i < g; ++i)
        theta = theta + ring_element(ring, "e" + std::to_string(2 * i + 1) + "e" + std::to_string(2 * i + 2));
    v.alpha = theta;
    v.polarization = theta;
    v.ampleness_asserted = true;  // the principal polarization is ample and K_X = 0
    return v;
}

VarietyData product(const VarietyData& x, const VarietyData& y)
{
    const auto& rx = *x.ring;
    const auto& ry = *y.ring;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < rx.size(); ++i)
        for (std::size_t j = 0; j < ry.size(); ++j)
            pairs.emplace_back(i, j);
    std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& p, const auto& q) {
        return rx.entry(p.first).degree + ry.entry(p.second).degree <
               rx.entry(q.first).degree + ry.entry(q.second).degree;
    });
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> position;
    std::vector<BasisEntry> basis;
    for (const auto& [i, j] : pairs) {
        // composite factor labels are parenthesised so nested products stay unambiguous
        auto atom = [](const std::string& l) { return l.find('*') == std::string::npos ? l : "(" + l + ")"; };
        const std::string lx = atom(rx.entry(i).label);
        const std::string ly = atom(ry.entry(j).label);
        std::string label;
        if (lx == "1" && ly == "1")
            label = "1";
        else if (ly == "1")
            label = lx + "_1";
        else if (lx == "1")
            label = ly + "_2";
        else
            label = lx + "_1*" + ly + "_2";
        position[{i, j}] = basis.size();
        basis.push_back({label, rx.entry(i).degree + ry.entry(j).degree});
    }
    auto ring = make_ring(
        basis,
        [&](std::size_t p, std::size_t q) -> SparseVector {
            const auto [i, j] = pairs[p];
            const auto [k, l] = pairs[q];
            const auto px = rx.product(i, k);
            const auto py = ry.product(j, l);
            if (!px || !py)
                throw std::invalid_argument("product: factor ring has an incomplete table");
            const bool negative = (ry.entry(j).degree * rx.entry(k).degree) % 2 != 0;
            std::map<std::size_t, Rational> acc;
            for (const auto& [a, ca] : *px)
                for (const auto& [b, cb] : *py)
                    acc[position.at({a, b})] += negative ? Rational(-(ca * cb)) : Rational(ca * cb);
            SparseVector out;
            for (const auto& [idx, c] : acc)
                if (c != 0)
                    out.emplace_back(idx, c);
            return out;
        },
        rx.top_degree() + ry.top_degree(),
        basis[position.at({rx.require_index(*rx.point_class()), ry.require_index(*ry.point_class())})].label);

    const std::size_t unit_x = rx.require_index("1");
    const std::size_t unit_y = ry.require_index("1");
    auto left = [&](const Element& e) { return embed(e, ring, [&](std::size_t i) { return position.at({i, unit_y}); }); };
    auto right = [&](const Element& e) { return embed(e, ring, [&](std::size_t j) { return position.at({unit_x, j}); }); };

    VarietyData v;
    v.name = "product(" + x.name + "," + y.name + ")";
    v.dim = x.dim + y.dim;
    v.ring = ring;
    for (const auto& l : x.h1_basis)
        v.h1_basis.push_back(basis[position.at({rx.require_index(l), unit_y})].label);
    for (const auto& l : y.h1_basis)
        v.h1_basis.push_back(basis[position.at({unit_x, ry.require_index(l)})].label);

    // Whitney sum: c(T(X×Y)) = c(TX) ⊗ c(TY)
    auto chern = [](const VarietyData& w, int i) {
        if (i == 0)
            return Element::one(w.ring);
        if (i > w.dim)
            return Element::zero(w.ring);
        return w.tangent_chern[static_cast<std::size_t>(i - 1)];
    };
    for (int k = 1; k <= v.dim; ++k) {
        Element ck = Element::zero(ring);
        for (int i = 0; i <= k; ++i)
            ck = ck + mul(left(chern(x, i)), right(chern(y, k - i)));
        v.tangent_chern.push_back(ck);
    }
    v.alpha = left(x.alpha) + right(y.alpha);
    if (x.polarization && y.polarization)
        v.polarization = left(*x.polarization) + right(*y.polarization);
    if (!x.toric_curves.empty() && !y.toric_curves.empty()) {
        const Element pt_x = ring_element(x.ring, *rx.point_class());
        const Element pt_y = ring_element(y.ring, *ry.point_class());
        for (const auto& c : x.toric_curves)
            v.toric_curves.push_back(mul(left(c), right(pt_y)));
        for (const auto& c : y.toric_curves)
            v.toric_curves.push_back(mul(left(pt_x), right(c)));
    }
    v.ampleness_asserted = decide_ampleness(v).value_or(x.ampleness_asserted && y.ampleness_asserted);
    return v;
}

VarietyData builtin(std::string_view spec)
{
    auto number = [&](std::string_view digits) {
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw std::invalid_argument("unknown builtin '" + std::string(spec) + "'");
        return std::stoi(std::string(digits));
    };
    if (spec == "torus")
        return curve(1);
    if (spec.starts_with("product:")) {
        auto rest = spec.substr(8);
        auto comma = rest.find(',');
        if (comma == std::string_view::npos)
            throw std::invalid_argument("product builtin needs two factors: product:A,B");
        return product(builtin(rest.substr(0, comma)), builtin(rest.substr(comma + 1)));
    }
    if (spec.starts_with("abelian"))
        return abelian(number(spec.substr(7)));
    if (spec.starts_with("curve"))
        return curve(number(spec.substr(5)));
    if (spec.starts_with("p") || spec.starts_with("P"))
        return projective_space(number(spec.substr(1)));
    throw std::invalid_argument("unknown builtin '" + std::string(spec) + "'");
}

}  // namespace hypermod
