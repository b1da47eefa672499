#include "alexinv/quad_lie.hpp"

#include "alexinv/elimination.hpp"
#include "alexinv/errors.hpp"

#include <algorithm>

namespace alexinv {

namespace {

// Columns of the given Lie elements (all of degree q) as a matrix over L_q.
SparseMatrix<Rational> as_columns(const FreeLieAlgebra& lie, std::size_t q, const std::vector<LieElement>& xs) {
    std::vector<SparseRow<Rational>> rows(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        for (const auto& [w, c] : xs[k].coords)
            rows[k].emplace_back(lie.index_of(q, w), c);
        std::sort(rows[k].begin(), rows[k].end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    return SparseMatrix<Rational>::from_rows(std::move(rows), lie.dimension(q)).transpose();
}

LieElement column_as_element(const FreeLieAlgebra& lie, std::size_t q, const SparseMatrix<Rational>& colsT,
                             std::size_t k) {
    LieElement x;
    x.degree = q;
    for (const auto& [i, c] : colsT.row(k))
        x.coords.emplace(lie.basis_words(q)[i], c);
    return x;
}

} // namespace

std::size_t wedge2_index(std::size_t n, std::size_t i, std::size_t j) {
    if (!(i < j && j < n))
        throw InvalidArgument("wedge index needs i < j < n");
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

std::pair<std::size_t, std::size_t> wedge2_pair(std::size_t n, std::size_t index) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::size_t row = n - i - 1;
        if (index < row)
            return {i, i + 1 + index};
        index -= row;
    }
    throw InvalidArgument("wedge index out of range");
}

LiePresentation::LiePresentation(std::size_t dim_v, const SparseMatrix<Rational>& relations) : dim_v_(dim_v) {
    if (relations.cols() != wedge2_dim(dim_v))
        throw InvalidArgument("relation vectors must have " + std::to_string(wedge2_dim(dim_v)) + " coordinates");
    auto e = reduced_row_echelon(relations);
    pivots_ = e.pivot_cols;
    relations_ = SparseMatrix<Rational>::from_rows(std::move(e.rows), wedge2_dim(dim_v));
}

LiePresentation LiePresentation::free(std::size_t dim_v) {
    return LiePresentation(dim_v, SparseMatrix<Rational>(0, wedge2_dim(dim_v)));
}

LiePresentation LiePresentation::abelian(std::size_t dim_v) {
    return LiePresentation(dim_v, SparseMatrix<Rational>::identity(wedge2_dim(dim_v)));
}

std::vector<SparseMatrix<Rational>> ideal_pieces(const FreeLieAlgebra& lie, const LiePresentation& p,
                                                 std::size_t max_degree) {
    if (lie.num_generators() != p.dim_v())
        throw InvalidArgument("free Lie algebra and presentation disagree on dim V");
    std::vector<SparseMatrix<Rational>> out;
    if (max_degree < 2)
        return out;

    // Degree 2: R itself, since wedge2 coordinates coincide with L_2 coordinates.
    out.push_back(p.relations().transpose());

    for (std::size_t q = 3; q <= max_degree; ++q) {
        const auto prevT = out.back().transpose();
        std::vector<LieElement> gens;
        for (std::size_t k = 0; k < prevT.rows(); ++k) {
            const LieElement w = column_as_element(lie, q - 1, prevT, k);
            for (std::size_t v = 0; v < p.dim_v(); ++v) {
                LieElement b = lie.bracket_with_generator(v, w);
                if (!b.is_zero())
                    gens.push_back(std::move(b));
            }
        }
        out.push_back(column_space_basis(as_columns(lie, q, gens)));
    }
    return out;
}

SparseMatrix<Rational> ideal_piece(const FreeLieAlgebra& lie, const LiePresentation& p, std::size_t q) {
    if (q < 2)
        throw InvalidArgument("ideal(R) starts in degree 2");
    return ideal_pieces(lie, p, q).back();
}

GradedDims graded_dims(const LiePresentation& p, std::size_t max_degree) {
    GradedDims dims;
    dims.first_degree = 1;
    if (max_degree == 0)
        return dims;
    FreeLieAlgebra lie(p.dim_v());
    dims.values.push_back(p.dim_v());
    const auto pieces = ideal_pieces(lie, p, max_degree);
    for (std::size_t q = 2; q <= max_degree; ++q)
        dims.values.push_back(lie.dimension(q) - pieces[q - 2].cols());
    return dims;
}

std::vector<std::size_t> g2_basis_indices(const LiePresentation& p) {
    std::vector<char> pivot(wedge2_dim(p.dim_v()), 0);
    for (std::size_t c : p.relation_pivots())
        pivot[c] = 1;
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < pivot.size(); ++c)
        if (!pivot[c])
            out.push_back(c);
    return out;
}

SparseMatrix<Rational> beta_matrix(const LiePresentation& p) {
    const std::size_t n2 = wedge2_dim(p.dim_v());
    const auto basis = g2_basis_indices(p);
    std::vector<std::size_t> position(n2, SparseMatrix<Rational>::npos);
    for (std::size_t k = 0; k < basis.size(); ++k)
        position[basis[k]] = k;

    // e_c maps to itself if c is free; a pivot coordinate c of relation row r
    // reduces to -(rest of row r) on the free coordinates.
    SparseMatrix<Rational> beta(basis.size(), n2);
    for (std::size_t k = 0; k < basis.size(); ++k)
        beta.set(k, basis[k], Rational(1));
    const auto& rel = p.relations();
    for (std::size_t r = 0; r < rel.rows(); ++r) {
        const std::size_t pc = p.relation_pivots()[r];
        for (const auto& [c, a] : rel.row(r))
            if (c != pc)
                beta.set(position[c], pc, -a);
    }
    return beta;
}

InfinitesimalPiece bb_direct(const FreeLieAlgebra& lie, const LiePresentation& p, std::size_t q) {
    const std::size_t k = q + 2;
    const auto ideal = ideal_piece(lie, p, k);

    std::vector<LieElement> gens;
    for (std::size_t a = 2; 2 * a <= k; ++a) {
        const std::size_t b = k - a;
        for (std::size_t i = 0; i < lie.dimension(a); ++i) {
            const auto x = lie.basis_element(a, i);
            for (std::size_t j = (a == b ? i + 1 : 0); j < lie.dimension(b); ++j) {
                auto br = lie.bracket(x, lie.basis_element(b, j));
                if (!br.is_zero())
                    gens.push_back(std::move(br));
            }
        }
    }
    const auto derived2 = as_columns(lie, k, gens);
    const auto span = hstack<Rational>({&ideal, &derived2}, lie.dimension(k));
    const auto e = row_echelon(span.transpose());

    InfinitesimalPiece out;
    out.degree = q;
    out.dimension = lie.dimension(k) - e.rank();
    std::vector<char> pivot(lie.dimension(k), 0);
    for (std::size_t c : e.pivot_cols)
        pivot[c] = 1;
    for (std::size_t c = 0; c < pivot.size(); ++c)
        if (!pivot[c])
            out.basis.push_back(lie.basis_element(k, c));
    return out;
}

} // namespace alexinv
