#pragma once

#include "alexinv/rational.hpp"
#include "alexinv/sparse_matrix.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

namespace alexinv {

/// Dimensions of a graded vector space in degrees first_degree, first_degree+1, ...
struct GradedDims {
    std::size_t first_degree = 0;
    std::vector<std::size_t> values;

    std::size_t at(std::size_t degree) const { return values.at(degree - first_degree); }
    std::size_t last_degree() const { return first_degree + values.size() - 1; }
    friend bool operator==(const GradedDims&, const GradedDims&) = default;
};

/// A word on the letters 0..n-1 that is strictly smaller than each of its
/// proper rotations.
struct LyndonWord {
    std::vector<unsigned> letters;
    friend auto operator<=>(const LyndonWord&, const LyndonWord&) = default;
};

bool is_lyndon(const std::vector<unsigned>& letters);

/// All Lyndon words of length q on n letters, in lexicographic order.
std::vector<LyndonWord> lyndon_basis(std::size_t n, std::size_t q);

/// dims[q] = (1/q) sum_{d | q} mu(d) n^{q/d} for q = 1..max_degree.
GradedDims witt_dims(std::size_t n, std::size_t max_degree);

/// Homogeneous element of the free Lie algebra, in Lyndon-basis coordinates.
/// Words are packed base n, first letter most significant, so that numeric
/// order is lexicographic order.
struct LieElement {
    std::size_t degree = 0;
    std::map<std::uint64_t, Rational> coords;

    bool is_zero() const { return coords.empty(); }
    LieElement& operator+=(const LieElement& o);
    LieElement& operator-=(const LieElement& o);
    LieElement& operator*=(const Rational& c);
    friend bool operator==(const LieElement&, const LieElement&) = default;
};

/// Associative polynomial in the tensor algebra, homogeneous of one degree.
using TensorPoly = std::map<std::uint64_t, Rational>;

/// The free graded Lie algebra L(V) on dim V = n generators, realized in the
/// Lyndon basis. The basis element of w = uv (standard factorization, v the
/// longest proper Lyndon suffix) is [b(u), b(v)].
///
/// Per-degree tables are built lazily and shared; the object is safe to use
/// from several threads.
class FreeLieAlgebra {
public:
    explicit FreeLieAlgebra(std::size_t n);

    std::size_t num_generators() const { return n_; }
    std::size_t dimension(std::size_t q) const;

    /// Packed Lyndon words of length q, ascending.
    const std::vector<std::uint64_t>& basis_words(std::size_t q) const;
    std::size_t index_of(std::size_t q, std::uint64_t word) const;
    std::vector<unsigned> unpack(std::size_t q, std::uint64_t word) const;
    std::uint64_t pack(const std::vector<unsigned>& letters) const;

    LieElement generator(std::size_t i) const;
    LieElement basis_element(std::size_t q, std::size_t index) const;

    LieElement bracket(const LieElement& x, const LieElement& y) const;

    /// [e_i, x] without expanding e_i separately.
    LieElement bracket_with_generator(std::size_t i, const LieElement& x) const;

    /// Matrix of ad_v : L_q -> L_{q+1} in Lyndon bases; v has length n.
    SparseMatrix<Rational> ad_matrix(const std::vector<Rational>& v, std::size_t q) const;

    TensorPoly expand(const LieElement& x) const;

    /// Inverse of expand on Lie polynomials; throws InconsistencyError if p
    /// is not a Lie element.
    LieElement rewrite(std::size_t q, TensorPoly p) const;

    /// Coordinates of x as a dense column over basis_words(x.degree).
    std::vector<Rational> to_vector(const LieElement& x) const;
    LieElement from_vector(std::size_t q, const std::vector<Rational>& v) const;

private:
    struct Degree {
        std::vector<std::uint64_t> words;
        std::unordered_map<std::uint64_t, std::size_t> index;
        std::vector<std::size_t> left_length; // |u| in the standard factorization
        std::vector<std::vector<std::pair<std::uint64_t, std::int64_t>>> expansion; // sorted by word
    };

    const Degree& degree(std::size_t q) const;
    std::uint64_t power(std::size_t k) const;

    std::size_t n_;
    mutable std::mutex mutex_;
    mutable std::map<std::size_t, std::unique_ptr<Degree>> degrees_;
};

} // namespace alexinv
