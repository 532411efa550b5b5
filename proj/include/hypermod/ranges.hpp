#pragma once

// Lower bounds on jet ampleness and the homology-isomorphism degree ranges
// they certify.

#include "hypermod/variety.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hypermod {

enum class BoundSource { curve_RR, toric, tensor_additivity, user_supplied, surface_fujita };

std::string_view to_string(BoundSource s);
BoundSource parse_bound_source(std::string_view s);

struct RangeReport {
    int jet_bound = -1;
    BoundSource source = BoundSource::user_supplied;
    bool exact = false;          ///< true when the bound equals d(X, alpha), not merely below it
    int max_valid_degree = -1;   ///< negative encodes an empty range
    std::vector<std::string> assumptions;

    friend bool operator==(const RangeReport&, const RangeReport&) = default;
};

/// deg − 2g, clamped at −1 (Riemann–Roch on a genus-g curve).
int d_curve(int genus, int degree);
/// Minimum over the torus-invariant curves, clamped at −1.
int d_toric(std::span<const int> intersections);
/// a + b for an a-jet ample and a b-jet ample bundle.
int d_tensor(int a, int b);
/// k·dL for the k-th tensor power of a dL-jet ample bundle.
int d_power(int dL, int k);
/// Σ_{j=0}^{d} binom(n+j−1, j): length of the subschemes to test.
Integer length_bound(int n, int d);

/// Largest integer strictly below (d−3)/2, i.e. floor((d−4)/2). Any negative
/// value means the certified range is empty.
int main_range(int d);
int stability_range(int dL, int k);
int curve_range(int genus, int degree);

struct FujitaClass {
    Element divisor;  ///< K_X + 4A + (d−1)L
    int claimed_bound = 0;
    std::vector<std::string> assumptions;
};

/// Surface class certified d-jet ample when A is ample and L very ample.
FujitaClass surface_fujita_class(const VarietyData& surface, const Element& ample, const Element& very_ample, int d);

RangeReport make_range_report(int jet_bound, BoundSource source, bool exact, std::vector<std::string> assumptions = {});

/// Bound read off the variety data where a formula applies: curves
/// (Riemann–Roch, exact) and toric varieties (invariant curves, exact).
std::optional<RangeReport> automatic_range(const VarietyData& v);

}  // namespace hypermod
