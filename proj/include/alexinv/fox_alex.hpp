#pragma once

#include "alexinv/cyclotomic.hpp"
#include "alexinv/rational.hpp"
#include "alexinv/sparse_matrix.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace alexinv {

/// Letters are +-(i+1) for x_i^{+-1}.
using Word = std::vector<int>;

Word free_reduce(const Word& w);
Word inverse_word(const Word& w);
/// Free reduction followed by removal of inverse pairs at the ends.
Word cyclic_reduce(const Word& w);

struct GroupPresentation {
    std::size_t num_generators = 0;
    std::vector<Word> relators; // freely reduced

    GroupPresentation() = default;
    /// Checks letters and freely reduces every relator.
    GroupPresentation(std::size_t n, std::vector<Word> rels);

    static GroupPresentation free_group(std::size_t n);
    /// <x_1..x_n | [x_i, x_j] for i < j>.
    static GroupPresentation free_abelian(std::size_t n);
};

/// Cyclically reduces relators, drops trivial ones, replaces each by the
/// least rotation of it or its inverse, and sorts and deduplicates.
GroupPresentation normalize(const GroupPresentation& p);

/// Element of the rational group ring of the free group: reduced word -> coefficient.
using GroupRingElement = std::map<Word, Rational>;

GroupRingElement group_ring_product(const GroupRingElement& a, const GroupRingElement& b);
GroupRingElement group_ring_sum(const GroupRingElement& a, const GroupRingElement& b);

/// d w / d x_j.
GroupRingElement fox_derivative(const Word& w, std::size_t j);

/// Laurent polynomial over Q in n variables: exponent vector -> coefficient.
struct LaurentPoly {
    std::map<std::vector<long>, Rational> terms;

    bool is_zero() const { return terms.empty(); }
    static LaurentPoly constant(std::size_t n, const Rational& c);
    static LaurentPoly monomial(const std::vector<long>& e, const Rational& c = Rational(1));

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

    Cyclotomic evaluate(const std::vector<Cyclotomic>& point) const;
    /// Like "1 - t2", "t1^-1 + 2*t1*t3"; variables are named t1..tn.
    std::string to_string() const;
};

/// Exact quotient a / b in the Laurent ring; throws InvalidArgument if b = 0
/// and InconsistencyError if b does not divide a.
LaurentPoly exact_divide(const LaurentPoly& a, const LaurentPoly& b);

/// Image of a group ring element under abelianization x_i -> t_i.
LaurentPoly abelianize(const GroupRingElement& x, std::size_t n);

/// Exponent-sum vector of a word.
std::vector<long> exponent_sums(const Word& w, std::size_t n);

struct LaurentMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<LaurentPoly>> entries;
};

/// Fox Jacobian (d r_i / d x_j) pushed to the abelianization.
LaurentMatrix alexander_matrix(const GroupPresentation& p);

/// Rank over the fraction field Q(t_1..t_n), by fraction-free (Bareiss) elimination.
std::size_t generic_rank(const LaurentMatrix& a);

/// A point of the character torus; rational or cyclotomic coordinates.
struct Character {
    std::vector<Cyclotomic> values;
    std::vector<std::string> tokens; // display form, one per value, when known

    bool is_trivial() const;
    std::string to_string() const;
};

/// Comma-separated tokens: rationals ("2", "-1/3") or "zeta_m^j" / "zeta_m".
Character parse_character(std::string_view text);

/// True iff every relator's exponent vector evaluates to 1.
bool is_group_character(const GroupPresentation& p, const Character& rho);

/// dim H_1(G, C_rho) from the presentation 2-complex. Throws InvalidArgument
/// if rho has the wrong length, a zero value, or is not a character of G.
std::size_t twisted_h1_dim(const GroupPresentation& p, const Character& rho);

bool cv_membership(const GroupPresentation& p, const Character& rho, std::size_t k);

/// Z-basis of {v in Z^n : k . v = 0 for all rational kernel vectors k of the
/// relator exponent matrix}: the lattice whose quotient is the free part of G_ab.
std::vector<std::vector<Integer>> torsion_lattice(const GroupPresentation& p);

/// rho lies in the identity component Hom(G_abf, C*) of the character torus.
bool in_identity_component(const GroupPresentation& p, const Character& rho);

/// Membership in V^1_k(G) intersected with the identity component.
bool cv_membership_restricted(const GroupPresentation& p, const Character& rho, std::size_t k);

/// Z-basis of the integer kernel of an integer matrix (given by rows).
std::vector<std::vector<Integer>> integer_kernel(const std::vector<std::vector<Integer>>& rows, std::size_t cols);

struct SweepOptions {
    std::size_t max_points = std::size_t(1) << 20;
    bool restricted = false;
};

/// All characters of G with values in the m-th roots of unity and
/// dim H_1 >= k, in lexicographic order of the exponent tuples. Throws
/// BudgetExceeded when m^n exceeds max_points.
std::vector<Character> torsion_sweep(const GroupPresentation& p, unsigned m, std::size_t k,
                                     const SweepOptions& opts = {});

} // namespace alexinv
