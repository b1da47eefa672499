#pragma once

#include "alexinv/free_lie.hpp"
#include "alexinv/quad_lie.hpp"
#include "alexinv/rational.hpp"
#include "alexinv/sparse_matrix.hpp"

#include <array>
#include <map>
#include <optional>
#include <vector>

namespace alexinv {

using Weight = std::vector<int>;

/// dim Sym_q(C^n).
std::size_t sym_dim(std::size_t n, std::size_t q);

/// Monomials of degree q in n variables as exponent vectors, in descending
/// lexicographic order (x_0^q first).
class MonomialBasis {
public:
    MonomialBasis(std::size_t n, std::size_t q);

    std::size_t num_vars() const { return n_; }
    std::size_t degree() const { return q_; }
    std::size_t size() const { return exps_.size(); }
    const std::vector<unsigned>& exponents(std::size_t i) const { return exps_[i]; }

    /// Throws InvalidArgument for a vector that is not a degree-q monomial.
    std::size_t index(const std::vector<unsigned>& e) const;

    /// Index of x_k * m_i inside `next`, a basis of degree q + 1.
    std::size_t times_variable(const MonomialBasis& next, std::size_t i, std::size_t k) const;

private:
    std::size_t n_, q_;
    std::vector<std::vector<unsigned>> exps_;
    std::map<std::vector<unsigned>, std::size_t> index_;
};

/// One summand of a generator's image: coeff * (x_variable or 1) (x) target_t.
struct SymbolTerm {
    static constexpr std::size_t constant = static_cast<std::size_t>(-1);
    std::size_t variable = constant;
    std::size_t target = 0;
    Rational coeff;
};

/// Image of one source generator. shift 0 means the image has Sym-degree 0
/// (all terms constant), shift 1 means every term carries one variable.
struct GeneratorSymbol {
    std::size_t shift = 0;
    std::vector<SymbolTerm> terms;
};

/// Optional torus weights making the map homogeneous; every instantiated
/// matrix then splits into weight blocks.
struct GradingWeights {
    std::vector<Weight> variables;
    std::vector<Weight> sources;
    std::vector<Weight> targets;
};

struct WeightBlock {
    Weight weight;
    std::vector<std::size_t> rows; // global row indices, ascending
    std::vector<std::size_t> cols; // global column indices, ascending
    SparseMatrix<Rational> matrix;
};

/// A Sym(V)-linear map  (+)_s Sym(V)[-shift_s] (x) C  ->  Sym(V) (x) W,
/// stored by its symbol. All generators of both modules sit in degree 0,
/// and the degree-q piece of the source in generator s is Sym_{q - shift_s}.
///
/// Layout in degree q: target index = monomial * dim W + t. Source columns
/// are grouped by shift (ascending), then monomial-major within a group.
class GradedMap {
public:
    GradedMap(std::size_t base_dim, std::size_t target_dim, std::vector<GeneratorSymbol> sources,
              std::optional<GradingWeights> weights = std::nullopt);

    std::size_t base_dim() const { return n_; }
    std::size_t target_dim() const { return target_dim_; }
    std::size_t source_dim() const { return sources_.size(); }
    const std::vector<GeneratorSymbol>& sources() const { return sources_; }
    const std::optional<GradingWeights>& weights() const { return weights_; }

    std::size_t target_size(std::size_t q) const;
    std::size_t source_size(std::size_t q) const;
    std::size_t target_index(std::size_t monomial, std::size_t t) const { return monomial * target_dim_ + t; }
    /// Column of (generator s, monomial of degree q - shift_s).
    std::size_t source_index(std::size_t q, std::size_t s, std::size_t monomial) const;

    /// The exact degree-q matrix (target_size(q) x source_size(q)).
    SparseMatrix<Rational> instantiate(std::size_t q) const;

    /// Degree-q matrix split into weight blocks; needs weights. Throws
    /// InconsistencyError if the map is not weight-homogeneous.
    std::vector<WeightBlock> instantiate_blocks(std::size_t q) const;

    /// Multiplication by x_k from degree q to degree q + 1, on the source or
    /// the target module.
    SparseMatrix<Rational> source_multiplication(std::size_t q, std::size_t k) const;
    SparseMatrix<Rational> target_multiplication(std::size_t q, std::size_t k) const;

    /// (id (x) B) o this, for B : W -> W'. New target weights may be supplied.
    GradedMap compose_target(const SparseMatrix<Rational>& b,
                             std::optional<std::vector<Weight>> new_target_weights = std::nullopt) const;

    /// Rough memory estimate for instantiating and eliminating degree q.
    std::size_t estimated_bytes(std::size_t q) const;

private:
    std::size_t n_, target_dim_;
    std::vector<GeneratorSymbol> sources_;
    std::optional<GradingWeights> weights_;
    std::vector<std::size_t> rank_in_group_;
    std::map<std::size_t, std::size_t> group_size_; // shift -> number of generators
};

/// dim wedge^3 C^n, and its basis triples i < j < k in lexicographic order.
std::size_t wedge3_dim(std::size_t n);
std::vector<std::array<std::size_t, 3>> wedge3_triples(std::size_t n);

/// delta_3(a^b^c) = a (x) b^c + b (x) c^a + c (x) a^b on Sym (x) wedge^3 V.
/// Variable weights, when given, induce weights on wedge^3 and wedge^2.
GradedMap delta3(std::size_t n, std::optional<std::vector<Weight>> variable_weights = std::nullopt);

/// nabla = id (x) iota + delta_3 on Sym (x) (R (+) wedge^3 V); R generators come first.
GradedMap nabla(const LiePresentation& p);

/// (id (x) beta) o delta_3 into Sym (x) G_2.
GradedMap nabla_bar(const LiePresentation& p);

/// Cokernel dimensions in degrees 0..max_degree. Weight blocks are used when
/// the map carries weights; the blocks of one degree are ranked in parallel.
GradedDims coker_dims(const GradedMap& m, std::size_t max_degree);

/// Least q <= max_degree with vanishing cokernel; checks that all later
/// computed degrees vanish too (InconsistencyError otherwise).
std::optional<std::size_t> nilpotence_order(const GradedMap& m, std::size_t max_degree);
std::optional<std::size_t> nilpotence_order(const GradedDims& dims);

/// The truncation (+)_{q <= N} coker_q of a map, as a finite-dimensional
/// Sym(V)-module: one matrix per variable acting on the direct sum.
/// Each coker_q has the basis of target coordinates that are not pivots of
/// the image's reduced echelon form.
struct TruncatedCokernel {
    GradedDims dims;
    std::vector<std::size_t> offsets; // start of degree q in the direct sum
    std::vector<SparseMatrix<Rational>> action;
    /// Degree-q coordinates of the class of target basis vector (monomial, t).
    std::vector<Rational> class_of(std::size_t q, std::size_t target_index) const;

    std::vector<std::vector<SparseRow<Rational>>> reducers; // per degree: RREF rows of the image
    std::vector<std::vector<std::size_t>> pivots;           // per degree: pivot columns
    std::vector<std::vector<std::size_t>> free_cols;        // per degree: basis coordinates
};

TruncatedCokernel truncated_cokernel(const GradedMap& m, std::size_t max_degree);

} // namespace alexinv
