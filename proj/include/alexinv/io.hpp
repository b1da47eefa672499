#pragma once

#include "alexinv/fox_alex.hpp"
#include "alexinv/nilpotent_transport.hpp"
#include "alexinv/quad_lie.hpp"

#include <string>
#include <string_view>

namespace alexinv {

/// { "dim_v": n, "relations": [ [ {"i": 0, "j": 1, "c": "p/q"}, ... ], ... ] },
/// i < j indexing e_i ^ e_j; "c" may also be an integer. Throws InvalidArgument.
LiePresentation parse_lie_presentation(std::string_view json_text);

/// { "generators": n, "relators": [[1, 2, -1, -2], ...] } with +-(i+1) for x_i^{+-1}.
GroupPresentation parse_group_presentation(std::string_view json_text);

/// A commuting matrix family:
///   { "kind": "laurent" | "sym", "dimension": d, "matrices": [ [[row], ...], ... ] }
/// Entries are integers or "p/q" strings. kind defaults to "laurent".
struct MatrixFamily {
    bool laurent = true;
    std::size_t dimension = 0;
    std::vector<SparseMatrix<Rational>> matrices;
};
MatrixFamily parse_matrix_family(std::string_view json_text);

std::string read_file(const std::string& path);

} // namespace alexinv
