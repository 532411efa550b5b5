#pragma once

// Degreewise cohomology of a free CDGA over Q by exact sparse elimination.

#include "hypermod/cdga.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

namespace hypermod {

inline constexpr std::size_t kDefaultMaxMonomials = 5'000'000;

/// HYPERMOD_MAX_MONOMIALS when set to a positive integer, else the default.
std::size_t max_monomials_from_env();

struct CohomologyOptions {
    std::size_t max_monomials = kDefaultMaxMonomials;  ///< per degree
};

class ResourceLimitError : public std::runtime_error {
public:
    ResourceLimitError(int degree, std::size_t limit);
    int degree() const { return degree_; }

private:
    int degree_;
};

struct DegreeBasis {
    int degree = 0;
    std::vector<Monomial> monomials;

    std::size_t size() const { return monomials.size(); }
    std::map<Monomial, std::size_t> index() const;
};

/// Column-major sparse rational matrix.
struct SparseMatrix {
    using Column = std::vector<std::pair<std::size_t, Rational>>;

    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Column> columns;

    bool is_zero() const;
};

/// Product a·b (a is rows×k, b is k×cols).
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

/// Rank over Q. Columns are cleared of denominators and reduced one at a time
/// against integer pivot vectors keyed by their first nonzero row; every row
/// operation is fraction-free and rows are kept primitive.
std::size_t rank(const SparseMatrix& m);

/// All monomials of exactly the given degree, odd generators with exponent <= 1,
/// lexicographic in the generator order with larger exponents first.
DegreeBasis enumerate_basis(const CDGAPresentation& cdga, int degree, const CohomologyOptions& options = {});

/// Matrix of d from degree D to degree D+1 in the enumerated bases.
SparseMatrix differential_matrix(const CDGAPresentation& cdga, int degree, const CohomologyOptions& options = {});
SparseMatrix differential_matrix(const CDGAPresentation& cdga, const DegreeBasis& source, const DegreeBasis& target);

struct BettiTable {
    int max_degree = 0;
    std::vector<std::size_t> betti;

    friend bool operator==(const BettiTable&, const BettiTable&) = default;
};

/// Betti table plus the bookkeeping it was computed from.
struct CohomologyReport {
    BettiTable table;
    std::vector<std::size_t> dims;    ///< |DegreeBasis(D)|
    std::vector<std::size_t> ranks;   ///< rank of d_D : C^D → C^{D+1}
    std::vector<std::size_t> kernels; ///< dim ker d_D, counted independently of ranks
};

CohomologyReport cohomology_report(const CDGAPresentation& cdga, int max_degree, const CohomologyOptions& options = {});

/// b_D = dim ker d_D − rank d_{D−1} for D = 0..max_degree.
BettiTable betti_table(const CDGAPresentation& cdga, int max_degree, const CohomologyOptions& options = {});

}  // namespace hypermod
