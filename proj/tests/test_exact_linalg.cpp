#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "alexinv/cyclotomic.hpp"
#include "alexinv/elimination.hpp"

#include <random>

using namespace alexinv;
using Mat = SparseMatrix<Rational>;

namespace {

Mat random_sparse(std::mt19937& rng, std::size_t rows, std::size_t cols, double density) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    Mat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (coin(rng) < density) {
                Rational x(num(rng), den(rng));
                x.canonicalize();
                m.set(i, j, x);
            }
    return m;
}

// Low-rank product of two random factors, so that rank deficiency is common.
Mat random_low_rank(std::mt19937& rng, std::size_t rows, std::size_t cols, std::size_t inner) {
    return random_sparse(rng, rows, inner, 0.5) * random_sparse(rng, inner, cols, 0.5);
}

} // namespace

TEST_CASE("rank of small matrices") {
    CHECK(rank(Mat::identity(2)) == 2);
    CHECK(rank(Mat(3, 5)) == 0);

    // a_ij = i + j (1-indexed): rows are arithmetic progressions, rank 2.
    Mat m(4, 4);
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
            m.set(i - 1, j - 1, Rational(i + j));
    CHECK(rank(m) == 2);
    CHECK(reference::rank(m) == 2);
}

TEST_CASE("kernel basis") {
    CHECK(kernel_basis(Mat::identity(3)).empty());
    CHECK(kernel_basis(Mat(2, 2)).size() == 2);

    Mat ones(1, 2);
    ones.set(0, 0, 1);
    ones.set(0, 1, 1);
    auto k = kernel_basis(ones);
    REQUIRE(k.size() == 1);
    CHECK(k[0][0] == -k[0][1]);
    CHECK(!is_zero(k[0][0]));
}

TEST_CASE("cokernel dimension") {
    CHECK(cokernel_dimension(Mat::identity(4)) == 0);
    CHECK(cokernel_dimension(Mat(3, 7)) == 3);
    Mat m(2, 2);
    m.set(0, 0, 1);
    CHECK(cokernel_dimension(m) == 1);
}

TEST_CASE("membership in the column span") {
    std::vector<Rational> v{Rational(3), Rational(-2, 7)};
    CHECK(solve_membership(Mat::identity(2), v));
    CHECK_FALSE(solve_membership(Mat(2, 3), v));

    Mat col(2, 1);
    col.set(0, 0, 1);
    col.set(1, 0, 1);
    CHECK_FALSE(solve_membership(col, {Rational(1), Rational(2)}));
    CHECK(solve_membership(col, {Rational(5), Rational(5)}));

    CHECK_THROWS_AS(solve_membership(col, {Rational(1)}), InvalidArgument);
}

TEST_CASE("solve and inverse") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        Mat m = random_sparse(rng, 5, 5, 0.6) + Mat::identity(5);
        if (rank(m) < 5)
            continue;
        Mat inv = inverse(m);
        CHECK(inv * m == Mat::identity(5));
        std::vector<Rational> b{1, 2, 3, 4, 5};
        auto x = solve(m, b);
        REQUIRE(x.has_value());
        CHECK(m.apply(*x) == b);
    }
    Mat singular(2, 2);
    singular.set(0, 0, 1);
    CHECK_THROWS_AS(inverse(singular), InvalidArgument);
}

TEST_CASE("rank-nullity, transpose and reference agreement on random instances") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t r = 1 + rng() % 12, c = 1 + rng() % 12;
        Mat m = trial % 2 ? random_sparse(rng, r, c, 0.3) : random_low_rank(rng, r, c, 1 + rng() % 4);
        const std::size_t rk = rank(m);
        const auto ker = kernel_basis(m);
        CHECK(rk + ker.size() == c);
        CHECK(rank(m.transpose()) == rk);
        CHECK(reference::rank(m) == rk);
        CHECK(reference::kernel_basis(m).size() == ker.size());
        for (const auto& v : ker) {
            for (const auto& x : m.apply(v))
                CHECK(is_zero(x));
        }
    }
}

TEST_CASE("elimination is deterministic") {
    std::mt19937 rng(99);
    Mat m = random_low_rank(rng, 40, 40, 9);
    auto a = reduced_row_echelon(m);
    auto b = reduced_row_echelon(m);
    CHECK(a.pivot_cols == b.pivot_cols);
    CHECK(a.rows == b.rows);
}

TEST_CASE("column space basis spans the same space") {
    std::mt19937 rng(5);
    Mat m = random_low_rank(rng, 7, 9, 3);
    Mat b = column_space_basis(m);
    CHECK(b.cols() == rank(m));
    for (std::size_t j = 0; j < m.cols(); ++j)
        CHECK(solve_membership(b, m.column(j)));
}

TEST_CASE("rational parsing") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-4") == Rational(-4));
    CHECK(parse_rational(" 7/1 ") == Rational(7));
    CHECK_THROWS_AS(parse_rational("1/0"), InvalidArgument);
    CHECK_THROWS_AS(parse_rational("x"), InvalidArgument);
    CHECK_THROWS_AS(parse_rational("1/-2"), InvalidArgument);
}

TEST_CASE("cyclotomic identities") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(12) == 4);
    CHECK(euler_phi(7) == 6);

    // Phi_12 = x^4 - x^2 + 1
    auto phi12 = cyclotomic_polynomial(12);
    REQUIRE(phi12.size() == 5);
    CHECK(phi12[0] == 1);
    CHECK(phi12[1] == 0);
    CHECK(phi12[2] == -1);
    CHECK(phi12[3] == 0);
    CHECK(phi12[4] == 1);

    for (unsigned m : {1u, 2u, 3u, 4u, 5u, 6u, 8u, 9u, 12u, 15u}) {
        const Cyclotomic z = Cyclotomic::zeta(m);
        CHECK(z.pow(m) == Cyclotomic(1));
        if (m > 1)
            CHECK_FALSE(z.pow(m - 1) == Cyclotomic(1));
        // Phi_m(zeta) = 0
        Cyclotomic acc(0);
        auto phi = cyclotomic_polynomial(m);
        for (std::size_t k = 0; k < phi.size(); ++k)
            acc += Cyclotomic(Rational(phi[k])) * z.pow(static_cast<long>(k));
        CHECK(acc.is_zero());
        CHECK(z * z.inverse() == Cyclotomic(1));
    }

    // 1 + zeta_3 + zeta_3^2 = 0; mixing orders embeds into Q(zeta_6).
    const auto z3 = Cyclotomic::zeta(3);
    CHECK((Cyclotomic(1) + z3 + z3 * z3).is_zero());
    CHECK(Cyclotomic::zeta(6).pow(2) == z3);
    CHECK(Cyclotomic::zeta(2) == Cyclotomic(-1));
    CHECK((Cyclotomic::zeta(4) * Cyclotomic::zeta(4)) == Cyclotomic(-1));

    const Cyclotomic a = Cyclotomic(Rational(2, 3)) + Cyclotomic::zeta(5, 2) - Cyclotomic::zeta(5, 4);
    CHECK(a * a.inverse() == Cyclotomic(1));
    CHECK((a / a) == Cyclotomic(1));
}

TEST_CASE("rank over a cyclotomic field") {
    const auto z = Cyclotomic::zeta(3);
    SparseMatrix<Cyclotomic> m(2, 2);
    m.set(0, 0, Cyclotomic(1));
    m.set(0, 1, z);
    m.set(1, 0, z * z);
    m.set(1, 1, Cyclotomic(1));
    // det = 1 - zeta^3 = 0
    CHECK(rank(m) == 1);
    CHECK(reference::rank(m) == 1);
    m.set(1, 1, Cyclotomic(2));
    CHECK(rank(m) == 2);
}
