#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "permascale/matrix.hpp"

namespace permascale {

/// Boolean support mask, row-major.
struct SupportMask {
    std::size_t n = 0;
    std::vector<char> mask; // n*n entries

    bool at(std::size_t i, std::size_t j) const { return mask[i * n + j] != 0; }
    static SupportMask of(const NonnegMatrix& a);
};

struct Block {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
};

struct FkWitness {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols; // |rows| + |cols| = n + 1, A[rows,cols] == 0
};

struct PatternReport {
    bool has_positive_diagonal = false;
    std::vector<char> pi_support; // n*n mask of entries on positive diagonals
    bool in_pn = false;           // Pi(A) has the same support as A
    std::vector<Block> blocks;    // fully indecomposable components of Pi(A)
    std::optional<FkWitness> fk_witness;
};

/// Perfect matching of rows to columns through true entries, or nullopt.
/// Hopcroft-Karp, O(E sqrt(V)). Result[i] is the column matched to row i.
std::optional<std::vector<std::size_t>> max_bipartite_matching(const SupportMask& support);

/// Zero every entry not lying on a positive diagonal (the projection Pi).
std::pair<NonnegMatrix, PatternReport> pi_projection(const NonnegMatrix& a);

/// Fully indecomposable components of Pi(A), in increasing order of
/// smallest row index. blocks is empty when Pi(A) = 0.
PatternReport decompose_fully_indecomposable(const NonnegMatrix& a);

/// If per A = 0, a zero submatrix R x C with |R|+|C| = n+1 extracted from
/// the Koenig cover of the deficient matching; otherwise nullopt.
std::optional<FkWitness> frobenius_konig_witness(const NonnegMatrix& a);

} // namespace permascale
