#include "hypermod/hrr.hpp"

#include <map>
#include <mutex>

namespace hypermod {

UnivariatePolynomial::UnivariatePolynomial(std::vector<Rational> coefficients) : coefficients_(std::move(coefficients))
{
    while (!coefficients_.empty() && coefficients_.back() == 0)
        coefficients_.pop_back();
}

Rational UnivariatePolynomial::operator()(const Rational& m) const
{
    Rational acc = 0;
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it)
        acc = acc * m + *it;
    return acc;
}

bool UnivariatePolynomial::is_integer_valued() const
{
    // a polynomial of degree k is integer-valued iff it is so at k+1 consecutive integers
    for (int m = 0; m <= std::max(degree(), 0); ++m)
        if ((*this)(Rational(m)).get_den() != 1)
            return false;
    return true;
}

namespace {

int ring_dimension(const Algebra& alg)
{
    const auto* ring = dynamic_cast<const RingPresentation*>(&alg);
    if (!ring)
        throw std::invalid_argument("expected an element of a presented cohomology ring");
    return ring->top_degree() / 2;
}

using Series = std::vector<Rational>;  // truncated power series, index = power of x

Series series_mul(const Series& a, const Series& b, std::size_t order)
{
    Series out(order + 1, Rational(0));
    for (std::size_t i = 0; i < a.size() && i <= order; ++i)
        for (std::size_t j = 0; j < b.size() && i + j <= order; ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

// Coefficients a_k of log(x / (1 - e^{-x})) = Σ a_k x^k, k = 0..order.
Series log_todd_series(std::size_t order)
{
    // q(x) = (1 - e^{-x}) / x = Σ (-1)^k x^k / (k+1)!
    Series u(order + 1, Rational(0));  // u = q - 1
    Integer fact = 1;
    for (std::size_t k = 0; k <= order; ++k) {
        fact *= static_cast<unsigned long>(k + 1);
        if (k > 0)
            u[k] = Rational(Integer((k % 2 == 0) ? 1 : -1), fact);
    }
    // log q = Σ_{j>=1} (-1)^{j+1} u^j / j
    Series log_q(order + 1, Rational(0));
    Series up = u;
    for (std::size_t j = 1; j <= order; ++j) {
        const Rational s(Integer((j % 2 == 1) ? 1 : -1), Integer(static_cast<unsigned long>(j)));
        for (std::size_t k = 0; k <= order; ++k)
            log_q[k] += s * up[k];
        up = series_mul(up, u, order);
    }
    for (auto& c : log_q)
        c = -c;
    return log_q;
}

Element build_universal_todd(int n)
{
    std::vector<GeneratorSpec> specs;
    for (int i = 1; i <= n; ++i)
        specs.push_back({"c" + std::to_string(i), 2 * i});
    auto alg = FreeAlgebra::make(std::move(specs));
    const int top = 2 * n;
    auto e = [&](int k) {
        return (k >= 1 && k <= n) ? generator_element(alg, static_cast<GenId>(k - 1)) : Element::zero(alg);
    };
    // Newton: p_k = Σ_{i=1}^{k-1} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k
    std::vector<Element> p{Element::zero(alg)};
    for (int k = 1; k <= n; ++k) {
        Element pk = e(k) * Rational((k % 2 == 1) ? k : -k);
        for (int i = 1; i < k; ++i) {
            Element t = mul(e(i), p[static_cast<std::size_t>(k - i)]);
            pk = pk + ((i % 2 == 1) ? t : -t);
        }
        p.push_back(pk);
    }
    const Series a = log_todd_series(static_cast<std::size_t>(n));
    Element s = Element::zero(alg);
    for (int k = 1; k <= n; ++k)
        s = s + p[static_cast<std::size_t>(k)] * a[static_cast<std::size_t>(k)];
    // exp(s), s has no constant term
    Element td = Element::one(alg);
    Element sp = Element::one(alg);
    Integer fact = 1;
    for (int j = 1; j <= n; ++j) {
        sp = mul(sp, s).truncated(top);
        fact *= j;
        td = td + sp * Rational(Integer(1), fact);
    }
    return td.truncated(top);
}

}  // namespace

Element chern_character(const Element& c1)
{
    const int n = ring_dimension(c1.algebra());
    Element ch = Element::one(c1.algebra_ptr());
    Element pw = ch;
    Integer fact = 1;
    for (int m = 1; m <= n; ++m) {
        pw = mul(pw, c1);
        fact *= m;
        ch = ch + pw * Rational(Integer(1), fact);
    }
    return ch;
}

std::shared_ptr<const Element> universal_todd(int n)
{
    if (n < 0)
        throw std::invalid_argument("universal_todd: rank must be non-negative");
    static std::mutex mutex;
    static std::map<int, std::shared_ptr<const Element>> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(n); it != cache.end())
            return it->second;
    }
    auto built = std::make_shared<const Element>(build_universal_todd(n));
    std::lock_guard lock(mutex);
    return cache.emplace(n, std::move(built)).first->second;
}

Element todd_class(const std::vector<Element>& chern_classes, const std::shared_ptr<const Algebra>& ring)
{
    const int n = static_cast<int>(chern_classes.size());
    const auto univ = universal_todd(n);
    std::vector<Element> images;
    for (const auto& c : chern_classes)
        images.push_back(c.algebra_ptr() ? c : Element::zero(ring));
    Element td = substitute(*univ, images, ring);
    if (const auto* pres = dynamic_cast<const RingPresentation*>(ring.get()))
        td = td.truncated(pres->top_degree());
    return td;
}

Element todd_class(const VarietyData& v)
{
    return todd_class(v.tangent_chern, v.ring);
}

UnivariatePolynomial hilbert_polynomial(const VarietyData& v, const Element& c1L, const Element& h)
{
    const Element td = todd_class(v);
    const Element base = mul(chern_character(c1L.algebra_ptr() ? c1L : Element::zero(v.ring)), td);
    std::vector<Rational> coeffs;
    Element hp = Element::one(v.ring);
    Integer fact = 1;
    for (int r = 0; r <= v.dim; ++r) {
        if (r > 0) {
            hp = mul(hp, h);
            fact *= r;
        }
        coeffs.push_back(integrate(mul(base, hp)) / Rational(fact));
    }
    return UnivariatePolynomial(std::move(coeffs));
}

UnivariatePolynomial hilbert_polynomial(const VarietyData& v, const Element& c1L)
{
    if (!v.polarization)
        throw std::invalid_argument("hilbert_polynomial: variety '" + v.name + "' has no polarization");
    return hilbert_polynomial(v, c1L, *v.polarization);
}

std::vector<Element> filter_by_hilbert_polynomial(const VarietyData& v, const UnivariatePolynomial& target,
                                                  const std::vector<Element>& candidates)
{
    std::vector<Element> out;
    for (const auto& c : candidates)
        if (hilbert_polynomial(v, c) == target)
            out.push_back(c);
    return out;
}

}  // namespace hypermod
