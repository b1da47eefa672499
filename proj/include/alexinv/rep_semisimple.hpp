#pragma once

#include "alexinv/alex_module.hpp"
#include "alexinv/rational.hpp"
#include "alexinv/sparse_matrix.hpp"

#include <map>
#include <string>
#include <vector>

namespace alexinv {

enum class Family { symplectic, special_linear };

/// sp(2g) (type C_g) or sl(n) (type A_{n-1}).
struct LieAlgebraSpec {
    Family family = Family::symplectic;
    std::size_t param = 1; // g or n

    static LieAlgebraSpec sp(std::size_t g);
    static LieAlgebraSpec sl(std::size_t n);

    std::size_t rank() const { return family == Family::symplectic ? param : param - 1; }
    std::size_t defining_dim() const { return family == Family::symplectic ? 2 * param : param; }
    /// Length of weight vectors in epsilon coordinates.
    std::size_t weight_length() const { return param; }
    std::string name() const;
    friend bool operator==(const LieAlgebraSpec&, const LieAlgebraSpec&) = default;
};

/// A basis of root vectors and Cartan elements in the defining representation.
///
/// sp(2g) on H = C^{2g} with a_i = e_i, b_i = e_{g+i} and form J = [[0, I], [-I, 0]]:
///   H_i = E_ii - E_{g+i,g+i},  X_ij = E_ij - E_{g+j,g+i} (i != j),
///   U_ij = E_{i,g+j} + E_{j,g+i}, V_ij = E_{g+i,j} + E_{g+j,i} (i < j), U_ii = E_{i,g+i}, V_ii = E_{g+i,i}.
/// Simple roots e_i - e_{i+1} (i < g-1) and 2e_g, raising operators
/// X_{i,i+1} and U_{g-1,g-1}.
///
/// sl(n): E_ij (i != j) and H_i = E_ii - E_{i+1,i+1}.
struct LieAlgebraBasis {
    std::vector<SparseMatrix<Rational>> matrices;
    std::vector<Weight> roots; // zero for Cartan elements
    std::vector<std::string> names;
    std::vector<std::size_t> raising;  // e_i as indices into matrices
    std::vector<std::size_t> lowering; // f_i
    /// Inverse of the trace form tr(x_a x_b) of the defining representation.
    SparseMatrix<Rational> dual_gram;
};

const LieAlgebraBasis& lie_algebra_basis(const LieAlgebraSpec& spec);

/// Dynkin labels n_i of lambda = sum n_i lambda_i.
using HighestWeight = std::vector<unsigned>;

Weight to_epsilon(const LieAlgebraSpec& spec, const HighestWeight& lambda);
/// Dynkin labels of an epsilon weight; throws InvalidArgument if not dominant.
HighestWeight to_dynkin(const LieAlgebraSpec& spec, const Weight& w);

/// prod_{alpha > 0} <lambda + rho, alpha> / <rho, alpha>.
Integer weyl_dim(const LieAlgebraSpec& spec, const HighestWeight& lambda);

/// Casimir scalar on V(lambda) for the trace form of the defining
/// representation: (lambda, lambda + 2 rho) with the dual form. On H for
/// sp(2g) this is (2g+1)/2; on C^n for sl(n) it is (n^2-1)/n.
Rational casimir_eigenvalue(const LieAlgebraSpec& spec, const HighestWeight& lambda);

/// A representation with explicit action matrices for every element of
/// lie_algebra_basis(spec), in a basis of weight vectors.
class WeightModule {
public:
    WeightModule(LieAlgebraSpec spec, std::vector<SparseMatrix<Rational>> actions, std::vector<Weight> weights);

    const LieAlgebraSpec& spec() const { return spec_; }
    std::size_t dimension() const { return weights_.size(); }
    const std::vector<Weight>& weights() const { return weights_; }
    const SparseMatrix<Rational>& action(std::size_t a) const { return actions_.at(a); }
    const std::vector<SparseMatrix<Rational>>& actions() const { return actions_; }

    const SparseMatrix<Rational>& e(std::size_t i) const;
    const SparseMatrix<Rational>& f(std::size_t i) const;
    SparseMatrix<Rational> h(std::size_t i) const; // [e_i, f_i]

    /// Basis indices grouped by weight, in ascending weight order.
    std::map<Weight, std::vector<std::size_t>> weight_blocks() const;

private:
    LieAlgebraSpec spec_;
    std::vector<SparseMatrix<Rational>> actions_;
    std::vector<Weight> weights_;
};

WeightModule defining_module(const LieAlgebraSpec& spec);
WeightModule trivial_module(const LieAlgebraSpec& spec, std::size_t dim = 1);

/// Basis: k-subsets in lexicographic order.
WeightModule exterior_power(const WeightModule& m, std::size_t k);
/// Basis: MonomialBasis(dim m, k).
WeightModule symmetric_power(const WeightModule& m, std::size_t k);
/// Basis: index a * dim B + b.
WeightModule tensor_product(const WeightModule& a, const WeightModule& b);
/// Basis of A followed by the basis of B.
WeightModule direct_sum(const WeightModule& a, const WeightModule& b);

/// M / span(columns). The columns must span a submodule that is a sum of
/// weight spaces (checked). The quotient basis is the set of ambient
/// coordinates that are not pivots of the reduced echelon form of the span.
struct Quotient {
    WeightModule module;
    SparseMatrix<Rational> projection;     // quotient coords x ambient
    std::vector<std::size_t> kept_indices; // ambient coordinates kept
};
Quotient quotient_module(const WeightModule& m, const SparseMatrix<Rational>& columns);

/// For symplectic: wedge^k H / (theta ^ wedge^{k-2} H); for special_linear: wedge^k C^n.
WeightModule fundamental_module(const LieAlgebraSpec& spec, std::size_t k);

/// sum_{a,b} dual_gram(a,b) x_a x_b.
SparseMatrix<Rational> casimir_matrix(const WeightModule& m);

struct HighestWeightVector {
    Weight weight;
    std::vector<Rational> vector;
};

/// Basis of the joint kernel of the raising operators, weight by weight.
std::vector<HighestWeightVector> highest_weight_vectors(const WeightModule& m);

/// A summand as a subspace: columns of `basis` are weight vectors spanning
/// it, and `coordinates` is the equivariant projection followed by the
/// coordinate map (coordinates * basis = identity).
struct IsotypicComponent {
    HighestWeight lambda;
    Rational casimir;
    SparseMatrix<Rational> basis;       // dim m x k
    SparseMatrix<Rational> coordinates; // k x dim m
    std::vector<Weight> weights;        // of the basis columns

    SparseMatrix<Rational> projection() const { return basis * coordinates; }
};

/// The Casimir eigenspace of casimir_eigenvalue(lambda). Requires lambda to
/// occur with multiplicity at most one and no other constituent with the
/// same Casimir value; otherwise throws AmbiguousDecomposition.
IsotypicComponent isotypic_component(const WeightModule& m, const HighestWeight& lambda);
SparseMatrix<Rational> isotypic_projection(const WeightModule& m, const HighestWeight& lambda);

/// The component as a module in its own basis.
WeightModule component_module(const WeightModule& m, const IsotypicComponent& c);

} // namespace alexinv
