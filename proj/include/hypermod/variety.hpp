#pragma once

// Input model for a smooth projective variety X: its rational cohomology ring,
// tangent Chern classes, H^1 basis and the divisor class alpha.

#include "hypermod/grca.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hypermod {

struct VarietyData {
    std::string name;
    int dim = 0;  ///< complex dimension n
    std::shared_ptr<const RingPresentation> ring;
    std::vector<std::string> h1_basis;
    std::vector<Element> tangent_chern;  ///< c_1(TX), ..., c_n(TX)
    Element alpha;
    std::optional<Element> polarization;
    bool ampleness_asserted = false;
    /// Classes of the torus-invariant curves when X is a smooth projective toric
    /// variety; empty otherwise.
    std::vector<Element> toric_curves;
};

/// c_0, ..., c_{n+1} of the first jet bundle J^1 O_X; c_{n+1} is zero.
struct JetChernData {
    std::vector<Element> classes;
};

struct ValidationOptions {
    bool check_poincare_pairing = true;
};

/// Every violated invariant as one line; empty means valid.
std::vector<std::string> validate(const VarietyData& v, const ValidationOptions& options = {});

/// Throws std::invalid_argument listing the violations when v is not valid.
void require_valid(const VarietyData& v);

/// c_i(J^1 O_X) = (-1)^i c_i(TX), using J^1 O_X ≅ Ω^1_X ⊕ O_X topologically.
JetChernData jet_chern(const VarietyData& v);

/// c_1(K_X) = -c_1(TX).
Element canonical_class(const VarietyData& v);

/// Betti numbers b_0..b_{2n} of X.
std::vector<std::size_t> betti_numbers(const VarietyData& v);

/// Ampleness of alpha and of alpha - c_1(K_X) in the cases where ring data decides
/// it: curves (positive degree) and toric varieties (positive on every invariant
/// curve). nullopt otherwise.
std::optional<bool> decide_ampleness(const VarietyData& v);

/// Copy of v with a new alpha; the ampleness flag is recomputed when decidable
/// and cleared otherwise.
VarietyData with_alpha(VarietyData v, Element alpha);

// Builtins. Each comes with alpha equal to its polarization.
VarietyData projective_space(int n);
VarietyData curve(int genus);
VarietyData abelian(int g);
VarietyData product(const VarietyData& x, const VarietyData& y);

/// Builtin by name: "torus", "pN", "curveG", "abelianG", "product:A,B".
VarietyData builtin(std::string_view spec);

}  // namespace hypermod
