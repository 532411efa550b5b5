#pragma once

// Poincaré series of the stable cohomology rings Λ(H^{•>0}(X)[•+1]) and
// Λ(H^{2n−1}(X)[1]) ⊗ Λ(H^{•>0}(X)[•+1]), and their comparison with the
// Betti numbers of the section-space model.

#include "hypermod/cohomology.hpp"
#include "hypermod/variety.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hypermod {

struct PoincareSeries {
    int max_degree = 0;
    std::vector<std::uint64_t> coefficients;  ///< degrees 0..max_degree

    friend bool operator==(const PoincareSeries&, const PoincareSeries&) = default;
};

/// (degree, multiplicity) pairs of free generators.
using GeneratorCounts = std::vector<std::pair<int, std::uint64_t>>;

/// Truncation of Π_{d odd}(1+t^d)^{m_d} · Π_{d even}(1−t^d)^{−m_d}.
PoincareSeries free_gca_series(const GeneratorCounts& generators, int max_degree);

/// Truncated product of two series; the cutoff is the smaller of the two.
PoincareSeries multiply(const PoincareSeries& a, const PoincareSeries& b);

/// One generator of degree q+1 per basis class of H^q(X), q = 1..2n.
PoincareSeries stable_moduli_series(const VarietyData& v, int max_degree);

/// stable_moduli_series times the free series on b_{2n−1}(X) generators of degree 1.
PoincareSeries grw_series(const VarietyData& v, int max_degree);

struct ComparisonRow {
    int degree = 0;
    std::size_t betti = 0;
    std::uint64_t stable = 0;
    bool equal = false;
    bool certified = false;  ///< degree within main_range(jet bound)
};

struct ComparisonReport {
    int jet_bound = -1;
    int certified_range = -1;
    std::vector<ComparisonRow> rows;
    bool all_equal = false;  ///< over the certified rows
};

/// Compares the Betti numbers of the section-space model with the stable
/// series through max(main_range(jet_bound), extra_degrees); rows past the
/// certified range are marked uncertified and do not enter the verdict.
/// Refuses (std::domain_error) when H^1(X) or H^{2n−1}(X) is nonzero.
ComparisonReport compare_stable(const VarietyData& v, int jet_bound, int max_degree = -1,
                                const CohomologyOptions& options = {});

}  // namespace hypermod
