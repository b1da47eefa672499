#pragma once

#include "alexinv/free_lie.hpp"
#include "alexinv/rational.hpp"
#include "alexinv/sparse_matrix.hpp"

#include <utility>
#include <vector>

namespace alexinv {

/// Position of e_i ^ e_j (i < j) in the lexicographic basis of wedge^2 V.
/// This is also the index of the Lyndon word "ij" in L_2(V).
std::size_t wedge2_index(std::size_t n, std::size_t i, std::size_t j);
std::pair<std::size_t, std::size_t> wedge2_pair(std::size_t n, std::size_t index);
inline std::size_t wedge2_dim(std::size_t n) { return n * (n - 1) / 2; }

/// Quadratic presentation L(V)/ideal(R) with R a subspace of wedge^2 V.
/// The relation basis is kept in reduced row echelon form, so two presentations
/// of the same R compare equal.
class LiePresentation {
public:
    /// relations: rows of a matrix with wedge2_dim(dim_v) columns; any spanning set.
    LiePresentation(std::size_t dim_v, const SparseMatrix<Rational>& relations);

    static LiePresentation free(std::size_t dim_v);
    static LiePresentation abelian(std::size_t dim_v);

    std::size_t dim_v() const { return dim_v_; }
    std::size_t num_relations() const { return relations_.rows(); }

    /// Rows form the canonical basis of R.
    const SparseMatrix<Rational>& relations() const { return relations_; }

    /// Pivot columns of the relation basis, ascending.
    const std::vector<std::size_t>& relation_pivots() const { return pivots_; }

    friend bool operator==(const LiePresentation& a, const LiePresentation& b) {
        return a.dim_v_ == b.dim_v_ && a.relations_ == b.relations_;
    }

private:
    std::size_t dim_v_;
    SparseMatrix<Rational> relations_;
    std::vector<std::size_t> pivots_;
};

/// Columns form a reduced basis of ideal(R)_q inside L_q(V), for q >= 2.
SparseMatrix<Rational> ideal_piece(const FreeLieAlgebra& lie, const LiePresentation& p, std::size_t q);

/// Bases of ideal(R)_q for q = 2..max_degree (index q - 2).
std::vector<SparseMatrix<Rational>> ideal_pieces(const FreeLieAlgebra& lie, const LiePresentation& p,
                                                 std::size_t max_degree);

/// dim G_q for q = 1..max_degree.
GradedDims graded_dims(const LiePresentation& p, std::size_t max_degree);

/// The bracket wedge^2 V -> G_2 = wedge^2 V / R. G_2 has the basis given by
/// the non-pivot coordinates of the relation basis.
SparseMatrix<Rational> beta_matrix(const LiePresentation& p);

/// Indices of wedge^2 V basis vectors whose classes form the basis of G_2.
std::vector<std::size_t> g2_basis_indices(const LiePresentation& p);

struct InfinitesimalPiece {
    std::size_t degree = 0;
    std::size_t dimension = 0;
    /// Lyndon basis elements of L_{q+2} whose classes form a basis of b_q.
    std::vector<LieElement> basis;
};

/// b_q = G'_{q+2} / G''_{q+2}, computed inside L_{q+2}(V) as the quotient by
/// ideal(R)_{q+2} plus all brackets of two elements of degree >= 2.
InfinitesimalPiece bb_direct(const FreeLieAlgebra& lie, const LiePresentation& p, std::size_t q);

} // namespace alexinv
