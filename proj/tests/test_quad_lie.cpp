#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "alexinv/elimination.hpp"
#include "alexinv/quad_lie.hpp"

#include <random>

using namespace alexinv;

namespace {

SparseMatrix<Rational> relation_rows(std::size_t n, const std::vector<std::vector<int>>& rows) {
    std::vector<std::vector<Rational>> dense;
    for (const auto& r : rows) {
        std::vector<Rational> v(wedge2_dim(n), Rational(0));
        for (std::size_t k = 0; k < r.size(); ++k)
            v[k] = r[k];
        dense.push_back(v);
    }
    return SparseMatrix<Rational>::from_dense(dense, wedge2_dim(n));
}

// Binomial coefficient, small arguments only.
std::size_t binom(std::size_t n, std::size_t k) {
    if (k > n)
        return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

} // namespace

TEST_CASE("wedge indexing agrees with Lyndon order of L_2") {
    for (std::size_t n = 2; n <= 6; ++n) {
        FreeLieAlgebra L(n);
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j, ++k) {
                CHECK(wedge2_index(n, i, j) == k);
                CHECK(wedge2_pair(n, k) == std::pair{i, j});
                CHECK(L.basis_words(2)[k] == L.pack({static_cast<unsigned>(i), static_cast<unsigned>(j)}));
            }
        CHECK(k == wedge2_dim(n));
    }
    CHECK_THROWS_AS(wedge2_index(3, 1, 1), InvalidArgument);
}

TEST_CASE("relation ingestion is canonical") {
    const auto a = LiePresentation(3, relation_rows(3, {{1, 1, 0}, {0, 1, 0}}));
    const auto b = LiePresentation(3, relation_rows(3, {{2, 0, 0}, {3, -1, 0}, {1, 0, 0}}));
    CHECK(a.num_relations() == 2);
    CHECK(a == b);
    CHECK(a.relation_pivots() == std::vector<std::size_t>{0, 1});
    CHECK_THROWS_AS(LiePresentation(3, SparseMatrix<Rational>(1, 4)), InvalidArgument);
}

TEST_CASE("ideal pieces") {
    FreeLieAlgebra L(3);
    const auto free = LiePresentation::free(3);
    for (std::size_t q = 2; q <= 5; ++q)
        CHECK(ideal_piece(L, free, q).cols() == 0);

    const auto ab = LiePresentation::abelian(3);
    for (std::size_t q = 2; q <= 5; ++q)
        CHECK(ideal_piece(L, ab, q).cols() == L.dimension(q));

    const auto one = LiePresentation(3, relation_rows(3, {{1, 0, 0}}));
    CHECK(graded_dims(one, 2).at(2) == 2);
    CHECK_THROWS_AS(ideal_piece(L, one, 1), InvalidArgument);

    // Monotone under enlarging R.
    const auto two = LiePresentation(3, relation_rows(3, {{1, 0, 0}, {0, 0, 1}}));
    for (std::size_t q = 2; q <= 5; ++q)
        CHECK(ideal_piece(L, one, q).cols() <= ideal_piece(L, two, q).cols());
}

TEST_CASE("graded dimensions") {
    CHECK(graded_dims(LiePresentation::free(2), 6) == witt_dims(2, 6));
    CHECK(graded_dims(LiePresentation::free(3), 5) == witt_dims(3, 5));
    CHECK(graded_dims(LiePresentation::abelian(4), 4).values == std::vector<std::size_t>{4, 0, 0, 0});
    CHECK(graded_dims(LiePresentation::free(2), 2).values == std::vector<std::size_t>{2, 1});

    // Heisenberg-type: n = 3 with [e0,e1] = [e0,e2] = 0 leaves G_2 spanned by [e1,e2];
    // G_3 is spanned by [e0,[e1,e2]], [e1,[e1,e2]], [e2,[e1,e2]] and G_2 = 1, so at most 3.
    const auto h = LiePresentation(3, relation_rows(3, {{1, 0, 0}, {0, 1, 0}}));
    const auto dims = graded_dims(h, 3);
    CHECK(dims.at(2) == 1);
    CHECK(dims.at(3) <= 3);
}

TEST_CASE("beta matrix") {
    const auto free = beta_matrix(LiePresentation::free(4));
    CHECK(free == SparseMatrix<Rational>::identity(6));

    const auto ab = beta_matrix(LiePresentation::abelian(3));
    CHECK(ab.rows() == 0);
    CHECK(ab.cols() == 3);

    const auto p = LiePresentation(3, relation_rows(3, {{1, 0, 0}}));
    const auto b = beta_matrix(p);
    CHECK(b.rows() == 2);
    CHECK(b.cols() == 3);
    const auto ker = kernel_basis(b);
    REQUIRE(ker.size() == 1);
    CHECK(!is_zero(ker[0][0]));
    CHECK(is_zero(ker[0][1]));
    CHECK(is_zero(ker[0][2]));

    // Random R: kernel of beta equals R exactly.
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> c(-2, 2);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 3 + trial % 2;
        std::vector<std::vector<int>> rows(1 + rng() % 3, std::vector<int>(wedge2_dim(n)));
        for (auto& r : rows)
            for (auto& x : r)
                x = c(rng);
        const LiePresentation pr(n, relation_rows(n, rows));
        const auto bm = beta_matrix(pr);
        CHECK(bm.rows() == wedge2_dim(n) - pr.num_relations());
        CHECK(rank(bm) == bm.rows());
        CHECK((bm * pr.relations().transpose()).is_zero_matrix());
    }
}

TEST_CASE("bb_direct small cases") {
    FreeLieAlgebra L2(2);
    const auto free2 = LiePresentation::free(2);
    CHECK(bb_direct(L2, free2, 0).dimension == 1);
    CHECK(bb_direct(L2, free2, 1).dimension == 2);
    CHECK(bb_direct(L2, free2, 0).basis.size() == 1);

    // Chen: (q+n choose q+2)(q+1) for the free Lie algebra.
    for (std::size_t n = 2; n <= 3; ++n) {
        FreeLieAlgebra L(n);
        const auto p = LiePresentation::free(n);
        for (std::size_t q = 0; q <= 3; ++q)
            CHECK(bb_direct(L, p, q).dimension == binom(q + n, q + 2) * (q + 1));
    }

    FreeLieAlgebra L3(3);
    const auto ab = LiePresentation::abelian(3);
    for (std::size_t q = 0; q <= 3; ++q)
        CHECK(bb_direct(L3, ab, q).dimension == 0);
}
