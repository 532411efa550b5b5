#include "hypermod/cohomology.hpp"

#include <cstdlib>
#include <string>

namespace hypermod {

std::size_t max_monomials_from_env()
{
    const char* raw = std::getenv("HYPERMOD_MAX_MONOMIALS");
    if (!raw || !*raw)
        return kDefaultMaxMonomials;
    char* end = nullptr;
    const unsigned long long value = std::strtoull(raw, &end, 10);
    if (*end != '\0' || value == 0)
        return kDefaultMaxMonomials;
    return static_cast<std::size_t>(value);
}

ResourceLimitError::ResourceLimitError(int degree, std::size_t limit)
    : std::runtime_error("resource cutoff: degree " + std::to_string(degree) + " needs more than " +
                         std::to_string(limit) + " monomials"),
      degree_(degree)
{
}

std::map<Monomial, std::size_t> DegreeBasis::index() const
{
    std::map<Monomial, std::size_t> out;
    for (std::size_t i = 0; i < monomials.size(); ++i)
        out.emplace(monomials[i], i);
    return out;
}

bool SparseMatrix::is_zero() const
{
    for (const auto& col : columns)
        for (const auto& [r, c] : col)
            if (c != 0)
                return false;
    return true;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b)
{
    if (a.cols != b.rows)
        throw std::invalid_argument("multiply: inner dimensions differ");
    SparseMatrix out{a.rows, b.cols, {}};
    for (const auto& bcol : b.columns) {
        std::map<std::size_t, Rational> acc;
        for (const auto& [k, bk] : bcol)
            for (const auto& [r, ark] : a.columns[k])
                acc[r] += ark * bk;
        SparseMatrix::Column col;
        for (const auto& [r, c] : acc)
            if (c != 0)
                col.emplace_back(r, c);
        out.columns.push_back(std::move(col));
    }
    return out;
}

namespace {

using IntVector = std::vector<std::pair<std::size_t, Integer>>;

void make_primitive(IntVector& v)
{
    if (v.empty())
        return;
    Integer g = 0;
    for (const auto& [i, c] : v) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1)
            break;
    }
    if (v.front().second < 0)
        g = -g;
    if (g != 1)
        for (auto& [i, c] : v)
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

IntVector clear_denominators(const SparseMatrix::Column& col)
{
    Integer l = 1;
    for (const auto& [r, c] : col)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    IntVector v;
    for (const auto& [r, c] : col)
        if (c != 0)
            v.emplace_back(r, Integer(c.get_num() * (l / c.get_den())));
    make_primitive(v);
    return v;
}

// v ← (p_lead/g)·v − (v_lead/g)·p, cancelling the shared leading entry.
IntVector eliminate(const IntVector& v, const IntVector& p)
{
    Integer g;
    mpz_gcd(g.get_mpz_t(), v.front().second.get_mpz_t(), p.front().second.get_mpz_t());
    const Integer sv = p.front().second / g;
    const Integer sp = v.front().second / g;
    IntVector out;
    out.reserve(v.size() + p.size());
    std::size_t i = 1, j = 1;
    while (i < v.size() || j < p.size()) {
        if (j == p.size() || (i < v.size() && v[i].first < p[j].first)) {
            out.emplace_back(v[i].first, Integer(sv * v[i].second));
            ++i;
        } else if (i == v.size() || p[j].first < v[i].first) {
            out.emplace_back(p[j].first, Integer(-sp * p[j].second));
            ++j;
        } else {
            Integer c = sv * v[i].second - sp * p[j].second;
            if (c != 0)
                out.emplace_back(v[i].first, std::move(c));
            ++i;
            ++j;
        }
    }
    make_primitive(out);
    return out;
}

// Reduces each column against the pivots found so far; returns (rank, number
// of columns that reduced to zero).
std::pair<std::size_t, std::size_t> eliminate_columns(const SparseMatrix& m)
{
    std::map<std::size_t, IntVector> pivots;
    std::size_t zero = 0;
    for (const auto& col : m.columns) {
        IntVector v = clear_denominators(col);
        while (!v.empty()) {
            auto it = pivots.find(v.front().first);
            if (it == pivots.end())
                break;
            v = eliminate(v, it->second);
        }
        if (v.empty())
            ++zero;
        else
            pivots.emplace(v.front().first, std::move(v));
    }
    return {pivots.size(), zero};
}

void enumerate(const FreeAlgebra& alg, std::size_t pos, int remaining, std::vector<Factor>& current,
               std::vector<Monomial>& out, std::size_t limit, int degree)
{
    const auto& order = alg.order();
    if (remaining == 0) {
        out.emplace_back(current);
        if (out.size() > limit)
            throw ResourceLimitError(degree, limit);
        return;
    }
    if (pos == order.size())
        return;
    const auto& g = alg.generator(order[pos]);
    const int max_exp = g.is_odd() ? std::min(1, remaining / g.degree) : remaining / g.degree;
    for (int e = max_exp; e >= 0; --e) {
        if (e > 0)
            current.push_back(Factor{g.id, static_cast<std::uint32_t>(e)});
        enumerate(alg, pos + 1, remaining - e * g.degree, current, out, limit, degree);
        if (e > 0)
            current.pop_back();
    }
}

}  // namespace

std::size_t rank(const SparseMatrix& m)
{
    return eliminate_columns(m).first;
}

DegreeBasis enumerate_basis(const CDGAPresentation& cdga, int degree, const CohomologyOptions& options)
{
    for (const auto& g : cdga.algebra->generators())
        if (g.degree <= 0)
            throw std::invalid_argument("generator " + g.name + " of degree " + std::to_string(g.degree) +
                                        " makes the degreewise bases infinite");
    DegreeBasis basis{degree, {}};
    if (degree < 0)
        return basis;
    std::vector<Factor> current;
    enumerate(*cdga.algebra, 0, degree, current, basis.monomials, options.max_monomials, degree);
    return basis;
}

SparseMatrix differential_matrix(const CDGAPresentation& cdga, const DegreeBasis& source, const DegreeBasis& target)
{
    const auto row_of = target.index();
    SparseMatrix m{target.size(), source.size(), {}};
    m.columns.reserve(source.size());
    for (const auto& mono : source.monomials) {
        Element dm = apply_differential(cdga, Element::basis(cdga.algebra, mono));
        SparseMatrix::Column col;
        for (const auto& [k, c] : dm.terms()) {
            auto it = row_of.find(k);
            if (it == row_of.end())
                throw std::logic_error("differential leaves the target degree");
            col.emplace_back(it->second, c);
        }
        std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        m.columns.push_back(std::move(col));
    }
    return m;
}

SparseMatrix differential_matrix(const CDGAPresentation& cdga, int degree, const CohomologyOptions& options)
{
    return differential_matrix(cdga, enumerate_basis(cdga, degree, options),
                               enumerate_basis(cdga, degree + 1, options));
}

CohomologyReport cohomology_report(const CDGAPresentation& cdga, int max_degree, const CohomologyOptions& options)
{
    if (max_degree < 0)
        throw std::invalid_argument("max_degree must be non-negative");
    CohomologyReport report;
    report.table.max_degree = max_degree;
    DegreeBasis current = enumerate_basis(cdga, 0, options);
    std::size_t previous_rank = 0;
    for (int d = 0; d <= max_degree; ++d) {
        DegreeBasis next = enumerate_basis(cdga, d + 1, options);
        const auto [r, kernel] = eliminate_columns(differential_matrix(cdga, current, next));
        report.dims.push_back(current.size());
        report.ranks.push_back(r);
        report.kernels.push_back(kernel);
        report.table.betti.push_back(kernel - previous_rank);
        previous_rank = r;
        current = std::move(next);
    }
    return report;
}

BettiTable betti_table(const CDGAPresentation& cdga, int max_degree, const CohomologyOptions& options)
{
    return cohomology_report(cdga, max_degree, options).table;
}

}  // namespace hypermod
