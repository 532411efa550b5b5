#pragma once

// Graded-commutative algebra engine: Koszul-signed monomials over free
// algebras, finite-dimensional rings given by structure constants, and
// tensor products of those with the Koszul product rule.

#include "hypermod/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hypermod {

using GenId = std::uint32_t;

struct Generator {
    GenId id = 0;
    std::string name;
    int degree = 0;

    bool is_odd() const { return degree % 2 != 0; }
};

struct Factor {
    GenId gen = 0;
    std::uint32_t exp = 0;

    auto operator<=>(const Factor&) const = default;
};

/// Normalized monomial. Factors are sorted by the owning algebra's generator
/// order and odd generators carry exponent 1. For a RingPresentation the
/// monomial {(i, 1)} stands for basis element i.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<Factor> factors) : factors_(std::move(factors)) {}

    const std::vector<Factor>& factors() const { return factors_; }
    bool empty() const { return factors_.empty(); }

    auto operator<=>(const Monomial&) const = default;

private:
    std::vector<Factor> factors_;
};

class MismatchedAlgebraError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A graded-commutative algebra with a distinguished basis indexed by monomials.
class Algebra {
public:
    using key_type = Monomial;
    using Terms = std::map<Monomial, Rational>;

    virtual ~Algebra() = default;

    virtual int degree(const Monomial& m) const = 0;
    virtual Monomial unit() const = 0;
    /// Product of two basis keys, expanded in the basis.
    virtual Terms multiply(const Monomial& a, const Monomial& b) const = 0;
    virtual std::string render(const Monomial& m) const = 0;
};

/// Immutable sparse linear combination of basis keys of one algebra.
template <class AlgebraT>
class BasicElement {
public:
    using key_type = typename AlgebraT::key_type;
    using Terms = std::map<key_type, Rational>;

    BasicElement() = default;
    explicit BasicElement(std::shared_ptr<const AlgebraT> algebra, Terms terms = {})
        : algebra_(std::move(algebra)), terms_(std::move(terms))
    {
        std::erase_if(terms_, [](const auto& t) { return t.second == 0; });
    }

    static BasicElement basis(std::shared_ptr<const AlgebraT> algebra, key_type key, Rational coeff = 1)
    {
        Terms t;
        t.emplace(std::move(key), std::move(coeff));
        return BasicElement(std::move(algebra), std::move(t));
    }
    static BasicElement one(std::shared_ptr<const AlgebraT> algebra)
    {
        auto u = algebra->unit();
        return basis(std::move(algebra), std::move(u));
    }
    static BasicElement zero(std::shared_ptr<const AlgebraT> algebra) { return BasicElement(std::move(algebra)); }

    const std::shared_ptr<const AlgebraT>& algebra_ptr() const { return algebra_; }
    const AlgebraT& algebra() const { return *algebra_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(const key_type& key) const
    {
        auto it = terms_.find(key);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Degree of a nonzero homogeneous element; nullopt for zero or mixed degrees.
    std::optional<int> degree() const
    {
        std::optional<int> deg;
        for (const auto& [k, c] : terms_) {
            int d = algebra_->degree(k);
            if (deg && *deg != d)
                return std::nullopt;
            deg = d;
        }
        return deg;
    }

    /// True for zero and for elements whose terms all share one degree.
    bool is_homogeneous() const { return is_zero() || degree().has_value(); }

    /// Component of the given degree.
    BasicElement part(int deg) const
    {
        Terms t;
        for (const auto& [k, c] : terms_)
            if (algebra_->degree(k) == deg)
                t.emplace(k, c);
        return BasicElement(algebra_, std::move(t));
    }

    /// Drops every term of degree above max_degree.
    BasicElement truncated(int max_degree) const
    {
        Terms t;
        for (const auto& [k, c] : terms_)
            if (algebra_->degree(k) <= max_degree)
                t.emplace(k, c);
        return BasicElement(algebra_, std::move(t));
    }

    friend BasicElement operator+(const BasicElement& a, const BasicElement& b)
    {
        check_same(a, b);
        Terms t = a.terms_;
        for (const auto& [k, c] : b.terms_)
            t[k] += c;
        return BasicElement(a.algebra_ ? a.algebra_ : b.algebra_, std::move(t));
    }
    friend BasicElement operator-(const BasicElement& a) { return a * Rational(-1); }
    friend BasicElement operator-(const BasicElement& a, const BasicElement& b) { return a + (-b); }
    friend BasicElement operator*(const BasicElement& a, const Rational& s)
    {
        Terms t;
        if (s != 0)
            for (const auto& [k, c] : a.terms_)
                t.emplace(k, c * s);
        return BasicElement(a.algebra_, std::move(t));
    }
    friend BasicElement operator*(const Rational& s, const BasicElement& a) { return a * s; }

    friend bool operator==(const BasicElement& a, const BasicElement& b)
    {
        if (a.terms_.empty() && b.terms_.empty())
            return true;
        return a.algebra_ == b.algebra_ && a.terms_ == b.terms_;
    }

    static void check_same(const BasicElement& a, const BasicElement& b)
    {
        if (a.algebra_ && b.algebra_ && a.algebra_ != b.algebra_)
            throw MismatchedAlgebraError("elements belong to different algebras");
    }

private:
    std::shared_ptr<const AlgebraT> algebra_;
    Terms terms_;
};

using Element = BasicElement<Algebra>;

/// Bilinear product; homogeneous inputs give output of degree |a| + |b|.
template <class AlgebraT>
BasicElement<AlgebraT> mul(const BasicElement<AlgebraT>& a, const BasicElement<AlgebraT>& b)
{
    BasicElement<AlgebraT>::check_same(a, b);
    const auto& alg = a.algebra_ptr() ? a.algebra_ptr() : b.algebra_ptr();
    typename BasicElement<AlgebraT>::Terms out;
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms())
            for (const auto& [k, c] : alg->multiply(ka, kb))
                out[k] += ca * cb * c;
    return BasicElement<AlgebraT>(alg, std::move(out));
}

/// m-fold product; requires every term of a to have even degree when m >= 2.
template <class AlgebraT>
BasicElement<AlgebraT> power(const BasicElement<AlgebraT>& a, unsigned m)
{
    if (!a.algebra_ptr())
        throw std::invalid_argument("power of an element without algebra");
    if (m >= 2)
        for (const auto& [k, c] : a.terms())
            if (a.algebra().degree(k) % 2 != 0)
                throw std::domain_error("power of an odd-degree element with exponent >= 2");
    auto result = BasicElement<AlgebraT>::one(a.algebra_ptr());
    auto base = a;
    while (m > 0) {
        if (m & 1u)
            result = mul(result, base);
        m >>= 1;
        if (m > 0)
            base = mul(base, base);
    }
    return result;
}

/// Human-readable form, e.g. "6 z - 2 a' b'". Terms ordered by the key order
/// the algebra's render_order supplies (see FreeAlgebra::render_less).
std::string to_string(const Element& e);

// ---------------------------------------------------------------------------
// Free graded-commutative algebra

struct GeneratorSpec {
    std::string name;
    int degree = 0;
};

struct SignedMonomial {
    int sign = 1;  ///< +1, -1, or 0 when an odd generator repeats
    Monomial monomial;
};

class FreeAlgebra final : public Algebra {
public:
    /// Generator ids are insertion indices. Total order: (degree, id).
    explicit FreeAlgebra(std::vector<GeneratorSpec> generators);

    static std::shared_ptr<const FreeAlgebra> make(std::vector<GeneratorSpec> generators)
    {
        return std::make_shared<const FreeAlgebra>(std::move(generators));
    }

    std::size_t size() const { return generators_.size(); }
    const std::vector<Generator>& generators() const { return generators_; }
    const Generator& generator(GenId id) const;
    std::optional<GenId> find(const std::string& name) const;
    /// Position of the generator in the total order.
    std::size_t rank(GenId id) const { return rank_.at(id); }
    /// Generator ids listed in the total order.
    const std::vector<GenId>& order() const { return order_; }

    /// Sorts an arbitrary factor list, accumulating (-1)^{pq} per adjacent swap.
    SignedMonomial normalize(std::span<const GenId> factors) const;
    SignedMonomial normalize(std::span<const Factor> factors) const;

    int degree(const Monomial& m) const override;
    Monomial unit() const override { return {}; }
    Terms multiply(const Monomial& a, const Monomial& b) const override;
    std::string render(const Monomial& m) const override;

    /// Comparison used for display: exponents compared generator by generator
    /// in insertion order, larger exponent first.
    bool render_less(const Monomial& a, const Monomial& b) const;

private:
    std::vector<Generator> generators_;
    std::vector<std::size_t> rank_;
    std::vector<GenId> order_;
};

/// The generator as an element of its free algebra.
Element generator_element(const std::shared_ptr<const FreeAlgebra>& algebra, GenId id, Rational coeff = 1);

/// Algebra homomorphism out of a free algebra: generator i maps to images[i].
/// Images must live in one target algebra and match generator parity.
Element substitute(const Element& source, std::span<const Element> images,
                   const std::shared_ptr<const Algebra>& target);

// ---------------------------------------------------------------------------
// Finite-dimensional ring from structure constants

struct BasisEntry {
    std::string label;
    int degree = 0;
};

class RingPresentation final : public Algebra {
public:
    using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

    /// products[i][j] = b_i * b_j. Missing pairs are recorded and reported by
    /// validate(); construction only rejects structural errors (duplicate or
    /// unknown labels, table of the wrong shape).
    RingPresentation(std::vector<BasisEntry> basis,
                     std::vector<std::vector<std::optional<SparseVector>>> products, int top_degree,
                     std::optional<std::string> point_class);

    std::size_t size() const { return basis_.size(); }
    const std::vector<BasisEntry>& basis() const { return basis_; }
    const BasisEntry& entry(std::size_t i) const { return basis_.at(i); }
    std::optional<std::size_t> index(const std::string& label) const;
    std::size_t require_index(const std::string& label) const;
    int top_degree() const { return top_degree_; }
    const std::optional<std::string>& point_class() const { return point_class_; }
    /// Labels of the given degree, in basis order.
    std::vector<std::size_t> indices_of_degree(int degree) const;
    std::size_t betti(int degree) const { return indices_of_degree(degree).size(); }
    std::optional<SparseVector> product(std::size_t i, std::size_t j) const;

    static Monomial key(std::size_t i) { return Monomial({Factor{static_cast<GenId>(i), 1}}); }
    static std::size_t index_of(const Monomial& m) { return m.factors().front().gen; }

    int degree(const Monomial& m) const override;
    Monomial unit() const override;
    Terms multiply(const Monomial& a, const Monomial& b) const override;
    std::string render(const Monomial& m) const override;

    /// Ring-law violations: unit, graded commutativity, associativity, degree
    /// bookkeeping, totality, point class. Empty means valid.
    std::vector<std::string> validate() const;

private:
    std::vector<BasisEntry> basis_;
    std::map<std::string, std::size_t> by_label_;
    std::vector<std::vector<std::optional<SparseVector>>> products_;
    int top_degree_ = 0;
    std::optional<std::string> point_class_;
    std::optional<std::size_t> unit_;
};

/// Basis element of a ring as an element.
Element ring_element(const std::shared_ptr<const RingPresentation>& ring, const std::string& label,
                     Rational coeff = 1);
/// Linear combination of labelled basis elements.
Element ring_element(const std::shared_ptr<const RingPresentation>& ring,
                     const std::vector<std::pair<std::string, Rational>>& terms);

/// Coefficient of the point class. Throws std::logic_error without a point class.
Rational integrate(const Element& a);

// ---------------------------------------------------------------------------
// Tensor products

using TensorKey = std::vector<Monomial>;

class TensorAlgebra {
public:
    using key_type = TensorKey;
    using Terms = std::map<TensorKey, Rational>;

    explicit TensorAlgebra(std::vector<std::shared_ptr<const Algebra>> factors);
    static std::shared_ptr<const TensorAlgebra> make(std::vector<std::shared_ptr<const Algebra>> factors)
    {
        return std::make_shared<const TensorAlgebra>(std::move(factors));
    }

    std::size_t arity() const { return factors_.size(); }
    const std::vector<std::shared_ptr<const Algebra>>& factors() const { return factors_; }
    const std::shared_ptr<const Algebra>& factor(std::size_t i) const { return factors_.at(i); }

    int degree(const TensorKey& k) const;
    TensorKey unit() const;
    /// (a1⊗…⊗ar)(b1⊗…⊗br) = (-1)^{Σ_{i>j}|a_i||b_j|} a1b1⊗…⊗arbr.
    Terms multiply(const TensorKey& a, const TensorKey& b) const;
    std::string render(const TensorKey& k) const;

private:
    std::vector<std::shared_ptr<const Algebra>> factors_;
};

using TensorElement = BasicElement<TensorAlgebra>;

/// Pure tensor p1⊗…⊗pr of single-factor elements.
TensorElement pure_tensor(const std::shared_ptr<const TensorAlgebra>& tensor, const std::vector<Element>& parts);

/// y' ∩ (w ⊗ y) = y'(y) w on the rightmost factor, which must be a RingPresentation.
/// The result lives in `target`, whose factors must equal all but the last factor.
TensorElement cap_dual(const std::string& dual_label, const TensorElement& v,
                       const std::shared_ptr<const TensorAlgebra>& target);
/// Same, building the target tensor algebra on the fly.
TensorElement cap_dual(const std::string& dual_label, const TensorElement& v);

/// Reorders tensor factors: factor i of the result is factor perm[i] of v.
/// Koszul signs from passing graded factors past each other are applied.
TensorElement permute_factors(const TensorElement& v, const std::vector<std::size_t>& perm,
                              const std::shared_ptr<const TensorAlgebra>& target);

std::string to_string(const TensorElement& e);

}  // namespace hypermod
