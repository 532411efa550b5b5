#pragma once

// Hilbert polynomials through Hirzebruch–Riemann–Roch: χ(X, L) = ∫ ch(L) td(X).

#include "hypermod/variety.hpp"

#include <memory>
#include <vector>

namespace hypermod {

class UnivariatePolynomial {
public:
    UnivariatePolynomial() = default;
    explicit UnivariatePolynomial(std::vector<Rational> coefficients);

    /// Ascending in the variable m; no trailing zeros.
    const std::vector<Rational>& coefficients() const { return coefficients_; }
    int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
    Rational operator()(const Rational& m) const;
    /// Integer values at every integer argument.
    bool is_integer_valued() const;

    friend bool operator==(const UnivariatePolynomial&, const UnivariatePolynomial&) = default;

private:
    std::vector<Rational> coefficients_;
};

/// Σ_{m=0}^{n} c1^m / m!, n = top degree / 2 of the ring.
Element chern_character(const Element& c1);

/// Universal Todd polynomial of a rank-n bundle as an element of the free
/// algebra on c_1..c_n (c_i of degree 2i), truncated at degree 2n. Built from
/// Chern roots: log(x/(1−e^{−x})) summed over roots is rewritten through
/// power sums and Newton's identities, then exponentiated. Memoized per n.
std::shared_ptr<const Element> universal_todd(int n);

/// Todd class of a bundle with the given Chern classes, evaluated in their ring.
Element todd_class(const std::vector<Element>& chern_classes, const std::shared_ptr<const Algebra>& ring);
Element todd_class(const VarietyData& v);

/// P(m) = ∫ exp(c1L + m·h) td(X) with h the given polarization.
UnivariatePolynomial hilbert_polynomial(const VarietyData& v, const Element& c1L, const Element& h);
/// Same, using v.polarization; throws std::invalid_argument without one.
UnivariatePolynomial hilbert_polynomial(const VarietyData& v, const Element& c1L);

/// Candidates whose Hilbert polynomial (with v.polarization) equals target.
std::vector<Element> filter_by_hilbert_polynomial(const VarietyData& v, const UnivariatePolynomial& target,
                                                  const std::vector<Element>& candidates);

}  // namespace hypermod
