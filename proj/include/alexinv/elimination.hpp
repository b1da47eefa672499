#pragma once

#include "alexinv/cyclotomic.hpp"
#include "alexinv/rational.hpp"
#include "alexinv/sparse_matrix.hpp"

#include <optional>
#include <vector>

namespace alexinv {

/// Row echelon form: rows[k] has its leading entry in column pivot_cols[k],
/// pivot columns strictly increasing.
template <class S>
struct RowEchelon {
    std::size_t cols = 0;
    std::vector<SparseRow<S>> rows;
    std::vector<std::size_t> pivot_cols;

    std::size_t rank() const { return rows.size(); }
};

// Sparse elimination. Row updates for a pivot run in parallel under OpenMP;
// the result does not depend on the thread count.

template <class S>
RowEchelon<S> row_echelon(const SparseMatrix<S>& m);

/// Pivots normalized to 1 and cleared from every other row.
template <class S>
RowEchelon<S> reduced_row_echelon(const SparseMatrix<S>& m);

template <class S>
std::size_t rank(const SparseMatrix<S>& m);

/// Basis of the right kernel; one vector per non-pivot column of the RREF,
/// with a 1 in that column.
template <class S>
std::vector<std::vector<S>> kernel_basis(const SparseMatrix<S>& m);

/// rows - rank.
template <class S>
std::size_t cokernel_dimension(const SparseMatrix<S>& m);

/// True iff v lies in the column span of m.
template <class S>
bool solve_membership(const SparseMatrix<S>& m, const std::vector<S>& v);

/// Some x with m x = v, or nullopt.
template <class S>
std::optional<std::vector<S>> solve(const SparseMatrix<S>& m, const std::vector<S>& v);

/// Inverse of a square matrix; throws InvalidArgument when singular.
template <class S>
SparseMatrix<S> inverse(const SparseMatrix<S>& m);

/// Matrix whose columns are a reduced basis of the column space of m
/// (the RREF of the transpose, transposed back).
template <class S>
SparseMatrix<S> column_space_basis(const SparseMatrix<S>& m);

namespace reference {

// Serial dense Gaussian elimination, kept as an independent check on the
// sparse kernels above. Quadratic memory; use on small inputs only.

template <class S>
std::size_t rank(const SparseMatrix<S>& m);

template <class S>
std::vector<std::vector<S>> kernel_basis(const SparseMatrix<S>& m);

} // namespace reference

#define ALEXINV_DECLARE_ELIMINATION(S)                                                        \
    extern template RowEchelon<S> row_echelon(const SparseMatrix<S>&);                        \
    extern template RowEchelon<S> reduced_row_echelon(const SparseMatrix<S>&);                \
    extern template std::size_t rank(const SparseMatrix<S>&);                                 \
    extern template std::vector<std::vector<S>> kernel_basis(const SparseMatrix<S>&);         \
    extern template std::size_t cokernel_dimension(const SparseMatrix<S>&);                   \
    extern template bool solve_membership(const SparseMatrix<S>&, const std::vector<S>&);     \
    extern template std::optional<std::vector<S>> solve(const SparseMatrix<S>&, const std::vector<S>&); \
    extern template SparseMatrix<S> inverse(const SparseMatrix<S>&);                          \
    extern template SparseMatrix<S> column_space_basis(const SparseMatrix<S>&);               \
    namespace reference {                                                                     \
    extern template std::size_t rank(const SparseMatrix<S>&);                                 \
    extern template std::vector<std::vector<S>> kernel_basis(const SparseMatrix<S>&);         \
    }

ALEXINV_DECLARE_ELIMINATION(Rational)
ALEXINV_DECLARE_ELIMINATION(Cyclotomic)

#undef ALEXINV_DECLARE_ELIMINATION

} // namespace alexinv
