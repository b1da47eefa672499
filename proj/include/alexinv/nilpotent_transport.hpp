#pragma once

#include "alexinv/alex_module.hpp"
#include "alexinv/free_lie.hpp"
#include "alexinv/rational.hpp"
#include "alexinv/sparse_matrix.hpp"

#include <optional>
#include <vector>

namespace alexinv {

/// Commuting invertible matrices T_i, one per variable t_i.
struct FinDimLaurentModule {
    std::size_t dimension = 0;
    std::vector<SparseMatrix<Rational>> action;

    /// Checks shapes, pairwise commutation and invertibility (InvalidArgument).
    void validate() const;
};

/// Commuting matrices X_i, one per variable x_i.
struct FinDimSymModule {
    std::size_t dimension = 0;
    std::vector<SparseMatrix<Rational>> action;

    void validate() const;
};

struct NilpotenceResult {
    bool nilpotent = false;
    /// Least q with I^q M = 0; 0 for the zero module, 1 for a nonzero trivial one.
    std::optional<std::size_t> exponent;
    /// dim I^k M for k = 0, 1, ... until it stabilizes.
    std::vector<std::size_t> filtration;
};

/// I-adic filtration for I = (T_i - 1).
NilpotenceResult is_nilpotent(const FinDimLaurentModule& m);

/// m-adic filtration for m = (X_i).
NilpotenceResult annihilator_exponent(const FinDimSymModule& m);

/// X_i = log T_i, a finite sum; throws InvalidArgument unless every T_i is unipotent.
FinDimSymModule log_transport(const FinDimLaurentModule& m);

/// T_i = exp X_i; throws InvalidArgument unless every X_i is nilpotent.
FinDimLaurentModule exp_transport(const FinDimSymModule& m);

/// log(1 + N) and exp(N) for a single nilpotent N.
SparseMatrix<Rational> log_unipotent(const SparseMatrix<Rational>& t);
SparseMatrix<Rational> exp_nilpotent(const SparseMatrix<Rational>& x);

/// The direct sum of coker_q for q <= N with the action of the variables.
FinDimSymModule sym_module(const TruncatedCokernel& c);

enum class ExponentMatch { agree, disagree, vacuous };

struct ExponentComparison {
    ExponentMatch status = ExponentMatch::vacuous;
    std::optional<std::size_t> module_exponent;
    std::optional<std::size_t> vanishing_degree; // least q with dims[q] = 0
};

/// Compares the annihilator exponent of a nilpotent module with the first
/// vanishing degree of dims (first_degree 0). No vanishing in range while
/// I^q M = 0 for some q <= last degree is an InconsistencyError; no vanishing
/// on either side in range is reported as vacuous.
ExponentComparison annihilator_exponent_match(const FinDimLaurentModule& m, const GradedDims& dims);

} // namespace alexinv
