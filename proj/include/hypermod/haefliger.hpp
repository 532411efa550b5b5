#pragma once

// CDGA model of the section space of P(J^1 O_X) over the component indexed by
// alpha, assembled from the second k-invariant of the fibrewise-rationalised
// Moore–Postnikov tower.

#include "hypermod/cdga.hpp"
#include "hypermod/variety.hpp"

#include <string>
#include <utility>
#include <vector>

namespace hypermod {

/// k_1 = Σ_{i=0}^{n+1} (-1)^i c_i(J^1 O_X) ⊗ z^{n+1-i} in H*(X) ⊗ Λ(z).
TensorElement compute_k1(const VarietyData& v);

/// Ψ*(χ) = Σ_i (-1)^i (1⊗1⊗c_i) (z⊗1⊗1 + 1⊗1⊗α + Σ_j 1⊗x_j'⊗x_j)^{n+1-i}
/// in Λ(z) ⊗ Λ(x_j') ⊗ H*(X), x_j running over the designated H^1 basis.
TensorElement compute_psi_chi(const VarietyData& v);

/// Λ(z, x_j', w_{i,k}) with d(z) = d(x_j') = 0 and d(w_{i,k}) = b_{i,k}' ∩ Ψ*(χ),
/// one w_{i,k} of degree i-1 for each basis class b_{i,k} of H^{2n+2-i}(X).
/// Generators are named "z", "<label>'" and "w<i>_<label>".
CDGAPresentation build_section_cdga(const VarietyData& v);

/// Display names matching the classical torus computation: a', b', y1, y2, y2', y3.
/// Only meaningful for the genus-one curve with basis a, b, u.
std::vector<std::pair<std::string, std::string>> torus_display_names();

}  // namespace hypermod
