#pragma once

#include "hypermod/grca.hpp"

#include <memory>
#include <string>
#include <vector>

namespace hypermod {

/// Free CDGA: a free graded-commutative algebra with the differential given
/// on generators. differential[id] is d(generator id) in the same algebra.
struct CDGAPresentation {
    std::shared_ptr<const FreeAlgebra> algebra;
    std::vector<Element> differential;

    Element d(GenId id) const;
};

/// Extends d from generators by the graded Leibniz rule
/// d(gh) = d(g) h + (-1)^{|g|} g d(h).
Element apply_differential(const CDGAPresentation& cdga, const Element& x);

/// Structural problems: degree-0 generators, non-homogeneous or wrongly graded
/// differentials, and d∘d ≠ 0 on a generator. Empty means well formed.
std::vector<std::string> check_cdga(const CDGAPresentation& cdga);

/// Copy with generators renamed; names missing from the map are kept.
CDGAPresentation rename_generators(const CDGAPresentation& cdga,
                                   const std::vector<std::pair<std::string, std::string>>& renames);

/// Copy with generators inserted in a different order: generator i of the
/// result is generator order[i] of the input. Differentials are transported.
CDGAPresentation reorder_generators(const CDGAPresentation& cdga, const std::vector<GenId>& order);

}  // namespace hypermod
