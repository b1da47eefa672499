#include "alexinv/nilpotent_transport.hpp"

#include "alexinv/elimination.hpp"
#include "alexinv/errors.hpp"

namespace alexinv {

namespace {

using Matrix = SparseMatrix<Rational>;

void check_family(std::size_t dim, const std::vector<Matrix>& action) {
    for (const auto& a : action)
        if (a.rows() != dim || a.cols() != dim)
            throw InvalidArgument("action matrix is not " + std::to_string(dim) + "x" + std::to_string(dim));
    for (std::size_t i = 0; i < action.size(); ++i)
        for (std::size_t j = i + 1; j < action.size(); ++j)
            if (!(action[i] * action[j] == action[j] * action[i]))
                throw InvalidArgument("action matrices " + std::to_string(i) + " and " + std::to_string(j) +
                                      " do not commute");
}

// Dimensions of J^k M where J is generated by the given commuting operators.
NilpotenceResult filtration(std::size_t dim, const std::vector<Matrix>& ops) {
    NilpotenceResult res;
    Matrix span = Matrix::identity(dim);
    res.filtration.push_back(dim);
    while (true) {
        if (span.cols() == 0) {
            res.nilpotent = true;
            res.exponent = res.filtration.size() - 1;
            return res;
        }
        std::vector<const Matrix*> parts;
        std::vector<Matrix> images;
        images.reserve(ops.size());
        for (const auto& op : ops)
            images.push_back(op * span);
        for (const auto& im : images)
            parts.push_back(&im);
        const Matrix next = ops.empty() ? Matrix(dim, 0) : column_space_basis(hstack(parts, dim));
        if (next.cols() == span.cols()) {
            res.nilpotent = false;
            return res;
        }
        span = next;
        res.filtration.push_back(span.cols());
    }
}

bool is_nilpotent_matrix(const Matrix& n) {
    Matrix p = n;
    for (std::size_t k = 0; k < n.rows() && !p.is_zero_matrix(); ++k)
        p = p * n;
    return p.is_zero_matrix();
}

} // namespace

void FinDimLaurentModule::validate() const {
    check_family(dimension, action);
    for (const auto& t : action)
        if (rank(t) != dimension)
            throw InvalidArgument("Laurent module action must be invertible");
}

void FinDimSymModule::validate() const { check_family(dimension, action); }

NilpotenceResult is_nilpotent(const FinDimLaurentModule& m) {
    m.validate();
    std::vector<Matrix> ops;
    for (const auto& t : m.action)
        ops.push_back(t - Matrix::identity(m.dimension));
    return filtration(m.dimension, ops);
}

NilpotenceResult annihilator_exponent(const FinDimSymModule& m) {
    m.validate();
    return filtration(m.dimension, m.action);
}

Matrix log_unipotent(const Matrix& t) {
    const Matrix n = t - Matrix::identity(t.rows());
    if (!is_nilpotent_matrix(n))
        throw InvalidArgument("log needs a unipotent matrix");
    Matrix out(t.rows(), t.cols());
    Matrix power = n;
    for (long k = 1; !power.is_zero_matrix(); ++k) {
        Matrix term = power;
        term *= Rational(k % 2 == 1 ? 1 : -1, k);
        out = out + term;
        power = power * n;
    }
    return out;
}

Matrix exp_nilpotent(const Matrix& x) {
    if (!is_nilpotent_matrix(x))
        throw InvalidArgument("exp needs a nilpotent matrix");
    Matrix out = Matrix::identity(x.rows());
    Matrix power = x;
    Rational fact(1);
    for (long k = 1; !power.is_zero_matrix(); ++k) {
        fact *= k;
        Matrix term = power;
        term *= Rational(1) / fact;
        out = out + term;
        power = power * x;
    }
    return out;
}

FinDimSymModule log_transport(const FinDimLaurentModule& m) {
    m.validate();
    FinDimSymModule out;
    out.dimension = m.dimension;
    for (const auto& t : m.action)
        out.action.push_back(log_unipotent(t));
    return out;
}

FinDimLaurentModule exp_transport(const FinDimSymModule& m) {
    m.validate();
    FinDimLaurentModule out;
    out.dimension = m.dimension;
    for (const auto& x : m.action)
        out.action.push_back(exp_nilpotent(x));
    return out;
}

FinDimSymModule sym_module(const TruncatedCokernel& c) {
    FinDimSymModule out;
    out.dimension = c.offsets.empty() ? 0 : c.offsets.back() + c.dims.values.back();
    out.action = c.action;
    return out;
}

ExponentComparison annihilator_exponent_match(const FinDimLaurentModule& m, const GradedDims& dims) {
    if (dims.first_degree != 0)
        throw InvalidArgument("dims must start in degree 0");
    const auto nil = is_nilpotent(m);
    if (!nil.nilpotent)
        throw InvalidArgument("module is not nilpotent");
    ExponentComparison out;
    out.module_exponent = nil.exponent;
    for (std::size_t q = 0; q < dims.values.size(); ++q)
        if (dims.values[q] == 0) {
            out.vanishing_degree = q;
            break;
        }
    const std::size_t last = dims.values.size() - 1;
    if (out.vanishing_degree) {
        out.status = *out.vanishing_degree == *out.module_exponent ? ExponentMatch::agree : ExponentMatch::disagree;
    } else if (*out.module_exponent <= last) {
        throw InconsistencyError("module is annihilated by I^" + std::to_string(*out.module_exponent) +
                                 " but the dimensions do not vanish up to degree " + std::to_string(last));
    } else {
        out.status = ExponentMatch::vacuous;
    }
    return out;
}

} // namespace alexinv
