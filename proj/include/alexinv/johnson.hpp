#pragma once

#include "alexinv/alex_module.hpp"
#include "alexinv/quad_lie.hpp"
#include "alexinv/rep_semisimple.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace alexinv {

/// H = C^{2g} with symplectic basis a_1..a_g, b_1..b_g and intersection form
/// theta(a_i, b_j) = delta_ij.
struct SymplecticSpace {
    std::size_t g = 0;
    LieAlgebraSpec spec;
    SparseMatrix<Rational> form; // [[0, I], [-I, 0]]
    std::vector<std::string> labels;

    explicit SymplecticSpace(std::size_t genus);
};

/// All the pieces of the Johnson module for one genus.
struct JohnsonData {
    std::size_t g = 0;
    WeightModule v;             // V(lambda_3) = wedge^3 H / theta ^ H
    WeightModule wedge2_v;      // basis: pairs i < j of V basis vectors
    IsotypicComponent q_part;   // V(2 lambda_2) inside wedge^2 V
    IsotypicComponent trivial;  // V(0) = C z
    SparseMatrix<Rational> r;   // columns: weight-vector basis of the complement R
    std::vector<Weight> r_weights;
    std::vector<HighestWeight> r_constituents; // highest weights occurring in R
    GradedMap q;                // Sym (x) wedge^3 V -> Sym (x) Q
};

/// Refuses g >= 5 unless allow_large is set (BudgetExceeded), and g < 3 (InvalidArgument).
JohnsonData build_johnson(std::size_t g, bool allow_large = false);

GradedMap build_q(std::size_t g, bool allow_large = false);

struct Wedge2Summand {
    std::string label;                  // "R", "V(2l2)", "V(0)"
    std::optional<HighestWeight> lambda;
    std::size_t dimension = 0;
    std::optional<Rational> casimir;
};

struct Wedge2Decomposition {
    std::size_t genus = 0;
    std::size_t dim_v = 0;
    std::vector<Wedge2Summand> summands; // R, V(2 lambda_2), V(0)
    std::vector<HighestWeight> r_constituents;
    std::size_t total = 0;
};

Wedge2Decomposition decompose_wedge2_v(const JohnsonData& d);
Wedge2Decomposition decompose_wedge2_v(std::size_t g, bool allow_large = false);

struct JohnsonModuleReport {
    std::size_t genus = 0;
    std::size_t dim_v = 0;
    std::size_t dim_q = 0;
    Wedge2Decomposition wedge2;
    GradedDims coker_q; // degrees 0..N
    GradedDims m;       // C (+) coker(q)
    bool theorem_hypothesis = false; // g >= 6
};

JohnsonModuleReport johnson_module_dims(const JohnsonData& d, std::size_t max_degree);
JohnsonModuleReport johnson_module_dims(std::size_t g, std::size_t max_degree, bool allow_large = false);

/// (id (x) beta) o delta_3 for K = L(V)/ideal(R + C z), with weights, so its
/// cokernel can be compared with coker(q) degree by degree.
GradedMap kernel_nabla_bar(const JohnsonData& d);
LiePresentation kernel_presentation(const JohnsonData& d);

struct EquivarianceResult {
    std::size_t pairs = 0;
    std::size_t failures = 0;
};

/// x . q(v) = q(x . v) for random Lie algebra basis elements x and random
/// sparse v in source degree `degree`.
EquivarianceResult q_equivariance_check(const JohnsonData& d, std::size_t degree, std::size_t pairs,
                                        std::uint32_t seed);

struct CentralZResult {
    bool central = false;
    std::size_t checked = 0;
    std::vector<std::size_t> failing; // V basis indices v with [z, v] outside ideal(R)_3
};

/// Tests [z, v] in ideal(R)_3 for the given V basis vectors (all when empty),
/// inside L(V)/ideal(R) with R from the decomposition.
CentralZResult central_z_check(const JohnsonData& d, const std::vector<std::size_t>& which = {});

} // namespace alexinv
