#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "alexinv/elimination.hpp"
#include "alexinv/errors.hpp"
#include "alexinv/fox_alex.hpp"

#include <random>

using namespace alexinv;

namespace {

GroupRingElement ring(std::initializer_list<std::pair<Word, long>> terms) {
    GroupRingElement x;
    for (const auto& [w, c] : terms)
        x[w] = Rational(c);
    return x;
}

GroupRingElement word_element(const Word& w) { return ring({{free_reduce(w), 1}}); }

// Fox derivative from the Leibniz rule alone: split in half and recurse.
GroupRingElement leibniz_fox(const Word& w, std::size_t j) {
    const int x = static_cast<int>(j) + 1;
    if (w.empty())
        return {};
    if (w.size() == 1) {
        if (w[0] == x)
            return ring({{{}, 1}});
        if (w[0] == -x)
            return ring({{{-x}, -1}});
        return {};
    }
    const std::size_t h = w.size() / 2;
    const Word u(w.begin(), w.begin() + static_cast<long>(h)), v(w.begin() + static_cast<long>(h), w.end());
    return group_ring_sum(leibniz_fox(u, j), group_ring_product(word_element(u), leibniz_fox(v, j)));
}

Word random_word(std::mt19937& rng, std::size_t n, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<int> gen(1, static_cast<int>(n));
    std::bernoulli_distribution inv(0.5);
    Word w(len(rng));
    for (int& a : w)
        a = inv(rng) ? -gen(rng) : gen(rng);
    return w;
}

LaurentPoly t_poly(std::size_t n, std::initializer_list<std::pair<std::vector<long>, long>> terms) {
    LaurentPoly p;
    for (const auto& [e, c] : terms)
        p += LaurentPoly::monomial(e, Rational(c));
    (void)n;
    return p;
}

std::size_t rank_at(const LaurentMatrix& a, const std::vector<Cyclotomic>& pt) {
    SparseMatrix<Cyclotomic> m(a.rows, a.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j)
            m.set(i, j, a.entries[i][j].evaluate(pt));
    return rank(m);
}

const GroupPresentation z2 = GroupPresentation::free_abelian(2);

} // namespace

TEST_CASE("words") {
    CHECK(free_reduce({1, 2, -2, -1, 3}) == Word{3});
    CHECK(inverse_word({1, -2, 3}) == Word{-3, 2, -1});
    CHECK(cyclic_reduce({2, 1, 3, -2}) == Word{1, 3});
    CHECK_THROWS_AS(GroupPresentation(2, {{1, 3}}), InvalidArgument);
    CHECK_THROWS_AS(free_reduce({0}), InvalidArgument);
}

TEST_CASE("fox derivatives: examples") {
    CHECK(fox_derivative({1}, 0) == ring({{{}, 1}}));
    CHECK(fox_derivative({1, 2, -1, -2}, 0) == ring({{{}, 1}, {{1, 2, -1}, -1}}));
    CHECK(fox_derivative({1, 1}, 0) == ring({{{}, 1}, {{1}, 1}}));
    CHECK(fox_derivative({-1}, 0) == ring({{{-1}, -1}}));
    CHECK(fox_derivative({2}, 0).empty());
}

TEST_CASE("fox derivatives: Leibniz oracle and fundamental identity") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + trial % 4;
        const Word w = free_reduce(random_word(rng, n, 20));
        GroupRingElement lhs;
        for (std::size_t j = 0; j < n; ++j) {
            const auto d = fox_derivative(w, j);
            CHECK(d == leibniz_fox(w, j));
            const int x = static_cast<int>(j) + 1;
            lhs = group_ring_sum(lhs, group_ring_product(d, ring({{{x}, 1}, {{}, -1}})));
        }
        GroupRingElement rhs = ring({{w, 1}});
        rhs = group_ring_sum(rhs, ring({{{}, -1}}));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("Laurent arithmetic") {
    const auto a = t_poly(2, {{{0, 0}, 1}, {{1, -1}, -2}, {{0, 2}, 3}});
    const auto b = t_poly(2, {{{-1, 0}, 1}, {{0, 1}, 1}});
    CHECK(exact_divide(a * b, b) == a);
    CHECK(exact_divide(a * b, a) == b);
    CHECK_THROWS_AS(exact_divide(a, b), InconsistencyError);
    CHECK_THROWS_AS(exact_divide(a, LaurentPoly{}), InvalidArgument);
    CHECK(t_poly(2, {{{0, 0}, 1}, {{0, 1}, -1}}).to_string() == "1 - t2");
    CHECK(b.evaluate({Cyclotomic(2), Cyclotomic(3)}) == Cyclotomic(Rational(7, 2)));
}

TEST_CASE("Alexander matrices") {
    const auto f3 = alexander_matrix(GroupPresentation::free_group(3));
    CHECK(f3.rows == 0);
    CHECK(f3.cols == 3);

    const auto a = alexander_matrix(z2);
    REQUIRE(a.rows == 1);
    CHECK(a.entries[0][0] == t_poly(2, {{{0, 0}, 1}, {{0, 1}, -1}}));
    CHECK(a.entries[0][1] == t_poly(2, {{{1, 0}, 1}, {{0, 0}, -1}}));

    for (long k = 1; k <= 5; ++k) {
        const auto c = alexander_matrix(GroupPresentation(1, {Word(static_cast<std::size_t>(k), 1)}));
        LaurentPoly expected;
        for (long i = 0; i < k; ++i)
            expected += LaurentPoly::monomial({i});
        CHECK(c.entries[0][0] == expected);
    }
}

TEST_CASE("generic rank") {
    CHECK(generic_rank(alexander_matrix(z2)) == 1);
    CHECK(generic_rank(alexander_matrix(GroupPresentation::free_group(2))) == 0);
    CHECK(generic_rank(alexander_matrix(GroupPresentation::free_abelian(3))) == 2);

    std::mt19937 rng(5);
    std::uniform_int_distribution<long> val(2, 40);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + trial % 3;
        std::vector<Word> rels;
        for (std::size_t r = 0; r < 1 + static_cast<std::size_t>(trial % 3); ++r)
            rels.push_back(random_word(rng, n, 8));
        const auto a = alexander_matrix(GroupPresentation(n, rels));
        const std::size_t g = generic_rank(a);
        std::size_t best = 0;
        for (int s = 0; s < 8; ++s) {
            std::vector<Cyclotomic> pt;
            for (std::size_t i = 0; i < n; ++i)
                pt.emplace_back(Rational(val(rng), val(rng)));
            const std::size_t r = rank_at(a, pt);
            CHECK(r <= g);
            best = std::max(best, r);
        }
        CHECK(best == g);
    }
}

TEST_CASE("characters") {
    const auto rho = parse_character("2, -1/3,zeta_4^3,zeta_5");
    REQUIRE(rho.values.size() == 4);
    CHECK(rho.values[1] == Cyclotomic(Rational(-1, 3)));
    CHECK(rho.values[2] == Cyclotomic::zeta(4, 3));
    CHECK(rho.values[3] == Cyclotomic::zeta(5, 1));
    CHECK(rho.to_string() == "2,-1/3,zeta_4^3,zeta_5");
    CHECK_THROWS_AS(parse_character("0"), InvalidArgument);
    CHECK_THROWS_AS(parse_character("zeta_x"), InvalidArgument);
    CHECK_THROWS_AS(parse_character("1,,2"), InvalidArgument);
    CHECK(parse_character("1,1").is_trivial());
}

TEST_CASE("twisted H1 and membership") {
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto f = GroupPresentation::free_group(n);
        Character rho;
        for (std::size_t i = 0; i < n; ++i)
            rho.values.emplace_back(Rational(static_cast<long>(i + 2)));
        CHECK(twisted_h1_dim(f, rho) == n - 1);
        Character one;
        one.values.assign(n, Cyclotomic(1));
        CHECK(twisted_h1_dim(f, one) == n);
    }
    CHECK(twisted_h1_dim(z2, parse_character("-1,1")) == 0);
    CHECK(twisted_h1_dim(z2, parse_character("zeta_3,zeta_7^2")) == 0);
    CHECK(twisted_h1_dim(z2, parse_character("1,1")) == 2);
    CHECK(cv_membership(GroupPresentation::free_group(2), parse_character("2,1"), 1));
    CHECK_FALSE(cv_membership(z2, parse_character("-1,1"), 1));
    CHECK(cv_membership(z2, parse_character("1,1"), 2));

    const GroupPresentation cyc(1, {{1, 1, 1}});
    CHECK_THROWS_AS(twisted_h1_dim(cyc, parse_character("2")), InvalidArgument);
    CHECK_THROWS_AS(twisted_h1_dim(z2, parse_character("2")), InvalidArgument);
    // Z/3 at zeta_3: the Alexander matrix [1 + t + t^2] vanishes and n - 1 = 0.
    CHECK(twisted_h1_dim(cyc, parse_character("zeta_3")) == 0);
    CHECK(twisted_h1_dim(cyc, parse_character("1")) == 0);
}

TEST_CASE("identity component") {
    CHECK(integer_kernel({{2, 4, 6}}, 3).size() == 2);
    for (const auto& v : integer_kernel({{2, 4, 6}}, 3))
        CHECK(2 * v[0] + 4 * v[1] + 6 * v[2] == 0);
    // Saturation: the 2x2 minors of the basis have gcd 1.
    const auto k = integer_kernel({{2, 4, 6}}, 3);
    Integer g = 0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) {
            const Integer minor = k[0][i] * k[1][j] - k[0][j] * k[1][i];
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), minor.get_mpz_t());
        }
    CHECK(g == 1);

    const GroupPresentation p(2, {{1, 1}}); // Z/2 * Z
    const auto lat = torsion_lattice(p);
    REQUIRE(lat.size() == 1);
    CHECK(abs(lat[0][0]) == 1);
    CHECK(lat[0][1] == 0);
    CHECK_FALSE(in_identity_component(p, parse_character("-1,1")));
    CHECK(in_identity_component(p, parse_character("1,5")));
    CHECK(in_identity_component(z2, parse_character("3,1/2")));
    // <x, y | x^2>: free product Z/2 * Z; the character (-1, 1) is in V^1_1 but not in T^0.
    CHECK(cv_membership(p, parse_character("-1,1"), 1));
    CHECK_FALSE(cv_membership_restricted(p, parse_character("-1,1"), 1));
}

TEST_CASE("torsion sweeps") {
    for (unsigned m = 2; m <= 4; ++m) {
        const auto hits = torsion_sweep(z2, m, 1);
        REQUIRE(hits.size() == 1);
        CHECK(hits[0].is_trivial());
    }
    const auto f2 = torsion_sweep(GroupPresentation::free_group(2), 2, 1);
    REQUIRE(f2.size() == 4);
    CHECK(f2[0].to_string() == "1,1");
    CHECK(f2[1].to_string() == "1,zeta_2^1");
    CHECK(f2[3].to_string() == "zeta_2^1,zeta_2^1");
    CHECK(torsion_sweep(GroupPresentation::free_group(3), 1, 1).size() == 1);
    CHECK(torsion_sweep(z2, 1, 3).empty());
    CHECK_THROWS_AS(torsion_sweep(GroupPresentation::free_group(10), 5, 1), BudgetExceeded);
    CHECK_THROWS_AS(torsion_sweep(z2, 0, 1), InvalidArgument);

    // Only characters of the group are reported: for Z/2 * Z at m = 4 the first
    // coordinate must be +-1.
    const GroupPresentation p(2, {{1, 1}});
    for (const auto& rho : torsion_sweep(p, 4, 1))
        CHECK(rho.values[0] * rho.values[0] == Cyclotomic(1));
    const auto restricted = torsion_sweep(p, 4, 1, {.max_points = 100, .restricted = true});
    for (const auto& rho : restricted)
        CHECK(rho.values[0] == Cyclotomic(1));
}

TEST_CASE("Tietze invariance") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 2 + trial % 2;
        std::vector<Word> rels;
        for (std::size_t r = 0; r < 1 + static_cast<std::size_t>(trial % 2); ++r)
            rels.push_back(random_word(rng, n, 6));
        const GroupPresentation p(n, rels);

        // Conjugate, invert and pad each relator with cancelling pairs.
        std::vector<Word> moved;
        for (const auto& r : rels) {
            const Word u = random_word(rng, n, 4);
            Word w = u;
            w.insert(w.end(), r.begin(), r.end());
            const Word ui = inverse_word(u);
            w.insert(w.end(), ui.begin(), ui.end());
            w.insert(w.begin(), {1, -1});
            if (trial % 3 == 0)
                w = inverse_word(w);
            moved.push_back(w);
        }
        std::shuffle(moved.begin(), moved.end(), rng);
        const GroupPresentation q(n, moved);
        CHECK(normalize(p).relators == normalize(q).relators);

        for (unsigned m = 2; m <= 3; ++m) {
            const auto a = torsion_sweep(p, m, 1), b = torsion_sweep(q, m, 1);
            REQUIRE(a.size() == b.size());
            for (std::size_t i = 0; i < a.size(); ++i) {
                CHECK(a[i].to_string() == b[i].to_string());
                CHECK(twisted_h1_dim(p, a[i]) == twisted_h1_dim(q, b[i]));
                CHECK(twisted_h1_dim(normalize(p), a[i]) == twisted_h1_dim(p, a[i]));
            }
        }
    }
}
