#include "hypermod/grca.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace hypermod {

namespace {

// Appends "c m" to out with the sign handled by the caller's separator.
void append_term(std::string& out, bool first, const Rational& c, const std::string& mono, bool is_unit)
{
    const bool negative = c < 0;
    if (first)
        out += negative ? "-" : "";
    else
        out += negative ? " - " : " + ";
    Rational a = abs(c);
    if (is_unit) {
        out += format_rational(a);
        return;
    }
    if (a != 1)
        out += format_rational(a) + " ";
    out += mono;
}

constexpr std::size_t kMaxReportedPerCategory = 10;

class ViolationLog {
public:
    void add(const std::string& category, const std::string& detail)
    {
        auto& n = counts_[category];
        if (n < kMaxReportedPerCategory)
            lines_.push_back(category + ": " + detail);
        ++n;
    }
    std::vector<std::string> finish()
    {
        for (const auto& [cat, n] : counts_)
            if (n > kMaxReportedPerCategory)
                lines_.push_back(cat + ": ... and " + std::to_string(n - kMaxReportedPerCategory) + " more");
        return std::move(lines_);
    }

private:
    std::map<std::string, std::size_t> counts_;
    std::vector<std::string> lines_;
};

}  // namespace

// ---------------------------------------------------------------------------
// FreeAlgebra

FreeAlgebra::FreeAlgebra(std::vector<GeneratorSpec> generators)
{
    generators_.reserve(generators.size());
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (generators[i].degree < 0)
            throw std::invalid_argument("generator '" + generators[i].name + "' has negative degree");
        for (std::size_t j = 0; j < i; ++j)
            if (generators[j].name == generators[i].name)
                throw std::invalid_argument("duplicate generator name '" + generators[i].name + "'");
        generators_.push_back(Generator{static_cast<GenId>(i), std::move(generators[i].name), generators[i].degree});
    }
    order_.resize(generators_.size());
    std::iota(order_.begin(), order_.end(), GenId{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](GenId a, GenId b) { return generators_[a].degree < generators_[b].degree; });
    rank_.resize(generators_.size());
    for (std::size_t r = 0; r < order_.size(); ++r)
        rank_[order_[r]] = r;
}

const Generator& FreeAlgebra::generator(GenId id) const
{
    if (id >= generators_.size())
        throw std::out_of_range("unknown generator id " + std::to_string(id));
    return generators_[id];
}

std::optional<GenId> FreeAlgebra::find(const std::string& name) const
{
    for (const auto& g : generators_)
        if (g.name == name)
            return g.id;
    return std::nullopt;
}

SignedMonomial FreeAlgebra::normalize(std::span<const GenId> factors) const
{
    std::vector<Factor> blocks;
    blocks.reserve(factors.size());
    for (GenId g : factors)
        blocks.push_back(Factor{g, 1});
    return normalize(blocks);
}

SignedMonomial FreeAlgebra::normalize(std::span<const Factor> factors) const
{
    std::vector<Factor> blocks;
    for (const auto& f : factors) {
        const auto& gen = generator(f.gen);
        if (f.exp == 0)
            continue;
        if (gen.is_odd() && f.exp > 1)
            return {0, {}};
        blocks.push_back(f);
    }
    auto odd_block = [&](const Factor& f) { return (generators_[f.gen].degree * static_cast<long>(f.exp)) % 2 != 0; };
    int sign = 1;
    // insertion sort, each adjacent transposition of two odd blocks flips the sign
    for (std::size_t i = 1; i < blocks.size(); ++i)
        for (std::size_t j = i; j > 0 && rank_[blocks[j - 1].gen] > rank_[blocks[j].gen]; --j) {
            if (odd_block(blocks[j - 1]) && odd_block(blocks[j]))
                sign = -sign;
            std::swap(blocks[j - 1], blocks[j]);
        }
    std::vector<Factor> merged;
    for (const auto& f : blocks) {
        if (!merged.empty() && merged.back().gen == f.gen) {
            if (generators_[f.gen].is_odd())
                return {0, {}};
            merged.back().exp += f.exp;
        } else {
            merged.push_back(f);
        }
    }
    return {sign, Monomial(std::move(merged))};
}

int FreeAlgebra::degree(const Monomial& m) const
{
    int d = 0;
    for (const auto& f : m.factors())
        d += generator(f.gen).degree * static_cast<int>(f.exp);
    return d;
}

Algebra::Terms FreeAlgebra::multiply(const Monomial& a, const Monomial& b) const
{
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    auto odd = [&](const Factor& f) { return generators_[f.gen].is_odd(); };
    std::size_t odd_left = 0;
    for (const auto& f : fa)
        odd_left += odd(f) ? 1 : 0;

    std::vector<Factor> out;
    out.reserve(fa.size() + fb.size());
    std::size_t i = 0, j = 0;
    bool negative = false;
    while (i < fa.size() || j < fb.size()) {
        if (j == fb.size() || (i < fa.size() && rank_[fa[i].gen] < rank_[fb[j].gen])) {
            if (odd(fa[i]))
                --odd_left;
            out.push_back(fa[i++]);
        } else if (i == fa.size() || rank_[fb[j].gen] < rank_[fa[i].gen]) {
            if (odd(fb[j]) && odd_left % 2 == 1)
                negative = !negative;
            out.push_back(fb[j++]);
        } else {
            if (odd(fa[i]))
                return {};
            out.push_back(Factor{fa[i].gen, fa[i].exp + fb[j].exp});
            ++i;
            ++j;
        }
    }
    Terms t;
    t.emplace(Monomial(std::move(out)), negative ? Rational(-1) : Rational(1));
    return t;
}

std::string FreeAlgebra::render(const Monomial& m) const
{
    if (m.empty())
        return "1";
    std::string s;
    for (const auto& f : m.factors()) {
        if (!s.empty())
            s += " ";
        s += generator(f.gen).name;
        if (f.exp > 1)
            s += "^" + std::to_string(f.exp);
    }
    return s;
}

bool FreeAlgebra::render_less(const Monomial& a, const Monomial& b) const
{
    std::vector<std::uint32_t> ea(generators_.size(), 0), eb(generators_.size(), 0);
    for (const auto& f : a.factors())
        ea[f.gen] = f.exp;
    for (const auto& f : b.factors())
        eb[f.gen] = f.exp;
    for (std::size_t g = 0; g < generators_.size(); ++g)
        if (ea[g] != eb[g])
            return ea[g] > eb[g];
    return false;
}

Element generator_element(const std::shared_ptr<const FreeAlgebra>& algebra, GenId id, Rational coeff)
{
    algebra->generator(id);
    return Element::basis(algebra, Monomial({Factor{id, 1}}), std::move(coeff));
}

Element substitute(const Element& source, std::span<const Element> images,
                   const std::shared_ptr<const Algebra>& target)
{
    const auto* free = dynamic_cast<const FreeAlgebra*>(source.algebra_ptr().get());
    if (!source.is_zero() && !free)
        throw std::invalid_argument("substitute: source must be an element of a free algebra");
    if (free && images.size() != free->size())
        throw std::invalid_argument("substitute: one image per generator required");
    for (const auto& im : images)
        if (im.algebra_ptr() && im.algebra_ptr() != target)
            throw MismatchedAlgebraError("substitute: image outside the target algebra");
    Element result = Element::zero(target);
    for (const auto& [m, c] : source.terms()) {
        Element term = Element::one(target) * c;
        for (const auto& f : m.factors()) {
            Element img = images[f.gen].algebra_ptr() ? images[f.gen] : Element::zero(target);
            term = mul(term, power(img, f.exp));
        }
        result = result + term;
    }
    return result;
}

// ---------------------------------------------------------------------------
// RingPresentation

RingPresentation::RingPresentation(std::vector<BasisEntry> basis,
                                   std::vector<std::vector<std::optional<SparseVector>>> products, int top_degree,
                                   std::optional<std::string> point_class)
    : basis_(std::move(basis)),
      products_(std::move(products)),
      top_degree_(top_degree),
      point_class_(std::move(point_class))
{
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (!by_label_.emplace(basis_[i].label, i).second)
            throw std::invalid_argument("duplicate basis label '" + basis_[i].label + "'");
        if (basis_[i].label == "1")
            unit_ = i;
    }
    if (products_.size() != basis_.size())
        throw std::invalid_argument("structure-constant table has wrong number of rows");
    for (const auto& row : products_) {
        if (row.size() != basis_.size())
            throw std::invalid_argument("structure-constant table has a row of wrong length");
        for (const auto& cell : row)
            if (cell)
                for (const auto& [idx, c] : *cell)
                    if (idx >= basis_.size())
                        throw std::invalid_argument("structure constant refers to an unknown basis index");
    }
}

std::optional<std::size_t> RingPresentation::index(const std::string& label) const
{
    auto it = by_label_.find(label);
    if (it == by_label_.end())
        return std::nullopt;
    return it->second;
}

std::size_t RingPresentation::require_index(const std::string& label) const
{
    auto i = index(label);
    if (!i)
        throw std::invalid_argument("label '" + label + "' is not in the basis");
    return *i;
}

std::vector<std::size_t> RingPresentation::indices_of_degree(int degree) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i].degree == degree)
            out.push_back(i);
    return out;
}

std::optional<RingPresentation::SparseVector> RingPresentation::product(std::size_t i, std::size_t j) const
{
    return products_.at(i).at(j);
}

int RingPresentation::degree(const Monomial& m) const
{
    if (m.empty())
        return 0;
    return basis_.at(index_of(m)).degree;
}

Monomial RingPresentation::unit() const
{
    if (!unit_)
        throw std::logic_error("ring has no unit label \"1\"");
    return key(*unit_);
}

Algebra::Terms RingPresentation::multiply(const Monomial& a, const Monomial& b) const
{
    const auto& cell = products_.at(index_of(a)).at(index_of(b));
    if (!cell)
        throw std::logic_error("missing structure constant for (" + basis_[index_of(a)].label + ", " +
                               basis_[index_of(b)].label + ")");
    Terms t;
    for (const auto& [idx, c] : *cell)
        if (c != 0)
            t[key(idx)] += c;
    std::erase_if(t, [](const auto& kv) { return kv.second == 0; });
    return t;
}

std::string RingPresentation::render(const Monomial& m) const
{
    return basis_.at(index_of(m)).label;
}

std::vector<std::string> RingPresentation::validate() const
{
    ViolationLog log;
    const std::size_t n = basis_.size();
    auto lab = [&](std::size_t i) { return basis_[i].label; };

    std::vector<std::size_t> degree_zero = indices_of_degree(0);
    if (degree_zero.size() != 1 || !unit_ || basis_[*unit_].degree != 0)
        log.add("unit", "exactly one degree-0 basis element labelled \"1\" is required");
    if (top_degree_ < 0 || top_degree_ % 2 != 0)
        log.add("degree", "top degree " + std::to_string(top_degree_) + " is not a non-negative even integer");
    for (std::size_t i = 0; i < n; ++i)
        if (basis_[i].degree < 0 || basis_[i].degree > top_degree_)
            log.add("degree", "basis element " + lab(i) + " has degree outside [0, top_degree]");

    if (!point_class_) {
        log.add("point class", "no point class declared");
    } else if (auto pi = index(*point_class_); !pi) {
        log.add("point class", "point class '" + *point_class_ + "' is not a basis label");
    } else if (basis_[*pi].degree != top_degree_) {
        log.add("point class", "point class '" + *point_class_ + "' is not in the top degree");
    }

    bool total = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto& cell = products_[i][j];
            if (!cell) {
                total = false;
                log.add("missing product", "(" + lab(i) + ", " + lab(j) + ")");
                continue;
            }
            const int want = basis_[i].degree + basis_[j].degree;
            for (const auto& [idx, c] : *cell)
                if (c != 0 && basis_[idx].degree != want)
                    log.add("degree", lab(i) + "*" + lab(j) + " has a term " + lab(idx) + " of degree " +
                                          std::to_string(basis_[idx].degree) + ", expected " +
                                          std::to_string(want));
        }
    if (!total)
        return log.finish();

    auto as_map = [&](std::size_t i, std::size_t j) {
        std::map<std::size_t, Rational> m;
        for (const auto& [idx, c] : *products_[i][j])
            m[idx] += c;
        std::erase_if(m, [](const auto& kv) { return kv.second == 0; });
        return m;
    };

    if (unit_)
        for (std::size_t b = 0; b < n; ++b) {
            std::map<std::size_t, Rational> expect{{b, Rational(1)}};
            if (as_map(*unit_, b) != expect || as_map(b, *unit_) != expect)
                log.add("unit law", "1*" + lab(b) + " or " + lab(b) + "*1 differs from " + lab(b));
        }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            auto ab = as_map(i, j);
            auto ba = as_map(j, i);
            const bool odd = (basis_[i].degree * basis_[j].degree) % 2 != 0;
            if (odd)
                for (auto& [k, c] : ba)
                    c = -c;
            if (ab != ba)
                log.add("graded commutativity", "(" + lab(i) + ", " + lab(j) + ")");
        }

    auto times = [&](const std::map<std::size_t, Rational>& left, std::size_t right, bool left_side) {
        std::map<std::size_t, Rational> out;
        for (const auto& [k, c] : left)
            for (const auto& [idx, d] : (left_side ? *products_[k][right] : *products_[right][k]))
                out[idx] += c * d;
        std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
        return out;
    };
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            auto ab = as_map(a, b);
            for (std::size_t c = 0; c < n; ++c) {
                auto left = times(ab, c, true);              // (ab)c
                auto right = times(as_map(b, c), a, false);  // a(bc)
                if (left != right)
                    log.add("associativity", "(" + lab(a) + ", " + lab(b) + ", " + lab(c) + ")");
            }
        }
    return log.finish();
}

Element ring_element(const std::shared_ptr<const RingPresentation>& ring, const std::string& label, Rational coeff)
{
    return Element::basis(ring, RingPresentation::key(ring->require_index(label)), std::move(coeff));
}

Element ring_element(const std::shared_ptr<const RingPresentation>& ring,
                     const std::vector<std::pair<std::string, Rational>>& terms)
{
    Element::Terms t;
    for (const auto& [label, c] : terms)
        t[RingPresentation::key(ring->require_index(label))] += c;
    return Element(ring, std::move(t));
}

Rational integrate(const Element& a)
{
    const auto* ring = dynamic_cast<const RingPresentation*>(a.algebra_ptr().get());
    if (!ring) {
        if (a.is_zero())
            return 0;
        throw std::invalid_argument("integrate: element is not in a presented ring");
    }
    if (!ring->point_class())
        throw std::logic_error("integrate: ring has no point class");
    return a.coefficient(RingPresentation::key(ring->require_index(*ring->point_class())));
}

// ---------------------------------------------------------------------------
// Tensor products

TensorAlgebra::TensorAlgebra(std::vector<std::shared_ptr<const Algebra>> factors) : factors_(std::move(factors))
{
    for (const auto& f : factors_)
        if (!f)
            throw std::invalid_argument("null tensor factor");
}

int TensorAlgebra::degree(const TensorKey& k) const
{
    int d = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i)
        d += factors_[i]->degree(k.at(i));
    return d;
}

TensorKey TensorAlgebra::unit() const
{
    TensorKey k;
    for (const auto& f : factors_)
        k.push_back(f->unit());
    return k;
}

TensorAlgebra::Terms TensorAlgebra::multiply(const TensorKey& a, const TensorKey& b) const
{
    const std::size_t r = factors_.size();
    long exponent = 0;
    for (std::size_t i = 0; i < r; ++i) {
        const int ai = factors_[i]->degree(a[i]);
        for (std::size_t j = 0; j < i; ++j)
            exponent += static_cast<long>(ai) * factors_[j]->degree(b[j]);
    }
    Terms acc;
    acc.emplace(TensorKey{}, exponent % 2 == 0 ? Rational(1) : Rational(-1));
    for (std::size_t i = 0; i < r; ++i) {
        auto partial = factors_[i]->multiply(a[i], b[i]);
        Terms next;
        for (const auto& [prefix, c] : acc)
            for (const auto& [m, d] : partial) {
                TensorKey k = prefix;
                k.push_back(m);
                next[std::move(k)] += c * d;
            }
        acc = std::move(next);
        if (acc.empty())
            break;
    }
    std::erase_if(acc, [](const auto& kv) { return kv.second == 0; });
    return acc;
}

std::string TensorAlgebra::render(const TensorKey& k) const
{
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i)
            s += " ⊗ ";
        std::string part = factors_[i]->render(k.at(i));
        if (part.find(' ') != std::string::npos)
            part = "(" + part + ")";
        s += part;
    }
    return s;
}

TensorElement pure_tensor(const std::shared_ptr<const TensorAlgebra>& tensor, const std::vector<Element>& parts)
{
    if (parts.size() != tensor->arity())
        throw std::invalid_argument("pure_tensor: one part per factor required");
    TensorElement::Terms acc;
    acc.emplace(TensorKey{}, Rational(1));
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].algebra_ptr() && parts[i].algebra_ptr() != tensor->factor(i))
            throw MismatchedAlgebraError("pure_tensor: part " + std::to_string(i) + " is not in its factor");
        TensorElement::Terms next;
        for (const auto& [prefix, c] : acc)
            for (const auto& [m, d] : parts[i].terms()) {
                TensorKey k = prefix;
                k.push_back(m);
                next[std::move(k)] += c * d;
            }
        acc = std::move(next);
    }
    return TensorElement(tensor, std::move(acc));
}

TensorElement cap_dual(const std::string& dual_label, const TensorElement& v,
                       const std::shared_ptr<const TensorAlgebra>& target)
{
    const auto& tensor = v.algebra();
    if (tensor.arity() == 0)
        throw std::invalid_argument("cap_dual: empty tensor product");
    const auto* ring = dynamic_cast<const RingPresentation*>(tensor.factors().back().get());
    if (!ring)
        throw std::invalid_argument("cap_dual: rightmost factor is not a presented ring");
    if (target->arity() + 1 != tensor.arity())
        throw MismatchedAlgebraError("cap_dual: target must drop exactly the rightmost factor");
    for (std::size_t i = 0; i < target->arity(); ++i)
        if (target->factor(i) != tensor.factor(i))
            throw MismatchedAlgebraError("cap_dual: target factors differ from the source");
    const Monomial b = RingPresentation::key(ring->require_index(dual_label));
    TensorElement::Terms out;
    for (const auto& [k, c] : v.terms())
        if (k.back() == b)
            out[TensorKey(k.begin(), k.end() - 1)] += c;
    return TensorElement(target, std::move(out));
}

TensorElement cap_dual(const std::string& dual_label, const TensorElement& v)
{
    const auto& f = v.algebra().factors();
    auto target = TensorAlgebra::make(std::vector<std::shared_ptr<const Algebra>>(f.begin(), f.end() - 1));
    return cap_dual(dual_label, v, target);
}

TensorElement permute_factors(const TensorElement& v, const std::vector<std::size_t>& perm,
                              const std::shared_ptr<const TensorAlgebra>& target)
{
    const auto& src = v.algebra();
    const std::size_t r = src.arity();
    if (perm.size() != r || target->arity() != r)
        throw std::invalid_argument("permute_factors: permutation has the wrong length");
    std::vector<bool> seen(r, false);
    for (std::size_t i = 0; i < r; ++i) {
        if (perm[i] >= r || seen[perm[i]])
            throw std::invalid_argument("permute_factors: not a permutation");
        seen[perm[i]] = true;
        if (target->factor(i) != src.factor(perm[i]))
            throw MismatchedAlgebraError("permute_factors: target factor mismatch");
    }
    TensorElement::Terms out;
    for (const auto& [k, c] : v.terms()) {
        long exponent = 0;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = i + 1; j < r; ++j)
                if (perm[i] > perm[j])
                    exponent += static_cast<long>(src.factor(perm[i])->degree(k[perm[i]])) *
                                src.factor(perm[j])->degree(k[perm[j]]);
        TensorKey nk(r);
        for (std::size_t i = 0; i < r; ++i)
            nk[i] = k[perm[i]];
        out[std::move(nk)] += exponent % 2 == 0 ? c : Rational(-c);
    }
    return TensorElement(target, std::move(out));
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

bool key_less(const Algebra& alg, const Monomial& a, const Monomial& b)
{
    if (const auto* free = dynamic_cast<const FreeAlgebra*>(&alg))
        return free->render_less(a, b);
    return a < b;
}

}  // namespace

std::string to_string(const Element& e)
{
    if (e.is_zero())
        return "0";
    const auto& alg = e.algebra();
    std::vector<std::pair<Monomial, Rational>> terms(e.terms().begin(), e.terms().end());
    std::stable_sort(terms.begin(), terms.end(),
                     [&](const auto& x, const auto& y) { return key_less(alg, x.first, y.first); });
    std::string out;
    bool first = true;
    const Monomial unit = alg.unit();
    for (const auto& [m, c] : terms) {
        append_term(out, first, c, alg.render(m), m == unit);
        first = false;
    }
    return out;
}

std::string to_string(const TensorElement& e)
{
    if (e.is_zero())
        return "0";
    const auto& alg = e.algebra();
    std::vector<std::pair<TensorKey, Rational>> terms(e.terms().begin(), e.terms().end());
    std::stable_sort(terms.begin(), terms.end(), [&](const auto& x, const auto& y) {
        for (std::size_t i = 0; i < alg.arity(); ++i) {
            if (key_less(*alg.factor(i), x.first[i], y.first[i]))
                return true;
            if (key_less(*alg.factor(i), y.first[i], x.first[i]))
                return false;
        }
        return false;
    });
    std::string out;
    bool first = true;
    const TensorKey unit = alg.unit();
    for (const auto& [k, c] : terms) {
        append_term(out, first, c, alg.render(k), k == unit);
        first = false;
    }
    return out;
}

}  // namespace hypermod
