#include "hypermod/stable.hpp"

#include "hypermod/haefliger.hpp"
#include "hypermod/ranges.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace hypermod {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b)
{
    if (a > std::numeric_limits<std::uint64_t>::max() - b)
        throw std::overflow_error("Poincare series coefficient overflows 64 bits");
    return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
        throw std::overflow_error("Poincare series coefficient overflows 64 bits");
    return a * b;
}

}  // namespace

PoincareSeries free_gca_series(const GeneratorCounts& generators, int max_degree)
{
    if (max_degree < 0)
        throw std::invalid_argument("free_gca_series: max_degree must be non-negative");
    PoincareSeries s{max_degree, std::vector<std::uint64_t>(static_cast<std::size_t>(max_degree) + 1, 0)};
    s.coefficients[0] = 1;
    for (const auto& [deg, mult] : generators) {
        if (deg <= 0)
            throw std::invalid_argument("free_gca_series: generator of degree " + std::to_string(deg));
        const auto d = static_cast<std::size_t>(deg);
        for (std::uint64_t copy = 0; copy < mult; ++copy) {
            if (deg % 2 != 0) {
                // multiply by 1 + t^d, in place from the top
                for (std::size_t k = s.coefficients.size(); k-- > d;)
                    s.coefficients[k] = checked_add(s.coefficients[k], s.coefficients[k - d]);
            } else {
                // divide by 1 - t^d, in place from the bottom
                for (std::size_t k = d; k < s.coefficients.size(); ++k)
                    s.coefficients[k] = checked_add(s.coefficients[k], s.coefficients[k - d]);
            }
        }
    }
    return s;
}

PoincareSeries multiply(const PoincareSeries& a, const PoincareSeries& b)
{
    const int top = std::min(a.max_degree, b.max_degree);
    PoincareSeries out{top, std::vector<std::uint64_t>(static_cast<std::size_t>(top) + 1, 0)};
    for (int i = 0; i <= top; ++i)
        for (int j = 0; i + j <= top; ++j)
            out.coefficients[static_cast<std::size_t>(i + j)] =
                checked_add(out.coefficients[static_cast<std::size_t>(i + j)],
                            checked_mul(a.coefficients[static_cast<std::size_t>(i)],
                                        b.coefficients[static_cast<std::size_t>(j)]));
    return out;
}

PoincareSeries stable_moduli_series(const VarietyData& v, int max_degree)
{
    GeneratorCounts gens;
    for (int q = 1; q <= v.ring->top_degree(); ++q)
        if (auto b = v.ring->betti(q); b > 0)
            gens.emplace_back(q + 1, b);
    return free_gca_series(gens, max_degree);
}

PoincareSeries grw_series(const VarietyData& v, int max_degree)
{
    const auto extra = v.ring->betti(2 * v.dim - 1);
    return multiply(stable_moduli_series(v, max_degree), free_gca_series({{1, extra}}, max_degree));
}

ComparisonReport compare_stable(const VarietyData& v, int jet_bound, int max_degree, const CohomologyOptions& options)
{
    if (v.ring->betti(1) != 0 || v.ring->betti(2 * v.dim - 1) != 0)
        throw std::domain_error("H^1 != 0: the comparison with the stable cohomology ring is only asserted when "
                                "H^{2n-1}(X;Q) vanishes");
    ComparisonReport report;
    report.jet_bound = jet_bound;
    report.certified_range = main_range(jet_bound);
    const int top = std::max(report.certified_range, max_degree);
    report.all_equal = report.certified_range >= 0;
    if (top < 0)
        return report;
    const BettiTable betti = betti_table(build_section_cdga(v), top, options);
    const PoincareSeries series = stable_moduli_series(v, top);
    for (int d = 0; d <= top; ++d) {
        ComparisonRow row;
        row.degree = d;
        row.betti = betti.betti[static_cast<std::size_t>(d)];
        row.stable = series.coefficients[static_cast<std::size_t>(d)];
        row.equal = row.betti == row.stable;
        row.certified = d <= report.certified_range;
        if (row.certified && !row.equal)
            report.all_equal = false;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace hypermod
