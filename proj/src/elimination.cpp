#include "alexinv/elimination.hpp"

#include <map>

namespace alexinv {

namespace {

constexpr std::size_t kParallelThreshold = 16;

// target - factor * pivot, where both rows are sorted.
template <class S>
SparseRow<S> axpy(const SparseRow<S>& target, const S& factor, const SparseRow<S>& pivot) {
    SparseRow<S> out;
    out.reserve(target.size() + pivot.size());
    std::size_t p = 0, q = 0;
    while (p < target.size() || q < pivot.size()) {
        if (q == pivot.size() || (p < target.size() && target[p].first < pivot[q].first)) {
            out.push_back(target[p++]);
        } else if (p == target.size() || pivot[q].first < target[p].first) {
            out.emplace_back(pivot[q].first, S(-(factor * pivot[q].second)));
            ++q;
        } else {
            S v = target[p].second - factor * pivot[q].second;
            if (!is_zero(v))
                out.emplace_back(target[p].first, std::move(v));
            ++p;
            ++q;
        }
    }
    return out;
}

template <class S>
const S* entry_at(const SparseRow<S>& row, std::size_t col) {
    auto it = std::lower_bound(row.begin(), row.end(), col, [](const auto& e, std::size_t c) { return e.first < c; });
    if (it != row.end() && it->first == col)
        return &it->second;
    return nullptr;
}

// Eliminates the leading column of every row sharing it with the pivot row.
template <class S>
void eliminate_leading(std::vector<SparseRow<S>>& rows, const std::vector<std::size_t>& targets,
                       const SparseRow<S>& pivot) {
    const S pivot_inv = S(1) / pivot.front().second;
    const long n = static_cast<long>(targets.size());
#pragma omp parallel for schedule(dynamic, 4) if (targets.size() > kParallelThreshold)
    for (long k = 0; k < n; ++k) {
        auto& r = rows[targets[static_cast<std::size_t>(k)]];
        const S factor = r.front().second * pivot_inv;
        r = axpy(r, factor, pivot);
    }
}

} // namespace

template <class S>
RowEchelon<S> row_echelon(const SparseMatrix<S>& m) {
    RowEchelon<S> out;
    out.cols = m.cols();

    std::vector<SparseRow<S>> rows(m.rows());
    std::map<std::size_t, std::vector<std::size_t>> buckets; // leading column -> row ids
    for (std::size_t i = 0; i < m.rows(); ++i) {
        rows[i] = m.row(i);
        if (!rows[i].empty())
            buckets[rows[i].front().first].push_back(i);
    }

    while (!buckets.empty()) {
        auto node = buckets.extract(buckets.begin());
        auto& ids = node.mapped();

        // Sparsest row is the pivot; ties go to the lowest row id.
        std::size_t best = 0;
        for (std::size_t k = 1; k < ids.size(); ++k) {
            const auto& a = rows[ids[k]];
            const auto& b = rows[ids[best]];
            if (a.size() < b.size() || (a.size() == b.size() && ids[k] < ids[best]))
                best = k;
        }
        const std::size_t pivot_id = ids[best];
        ids.erase(ids.begin() + static_cast<long>(best));

        eliminate_leading(rows, ids, rows[pivot_id]);

        for (std::size_t id : ids)
            if (!rows[id].empty())
                buckets[rows[id].front().first].push_back(id);

        out.pivot_cols.push_back(node.key());
        out.rows.push_back(std::move(rows[pivot_id]));
    }
    return out;
}

template <class S>
RowEchelon<S> reduced_row_echelon(const SparseMatrix<S>& m) {
    RowEchelon<S> e = row_echelon(m);
    const long r = static_cast<long>(e.rows.size());

#pragma omp parallel for schedule(dynamic, 4) if (e.rows.size() > kParallelThreshold)
    for (long k = 0; k < r; ++k) {
        auto& row = e.rows[static_cast<std::size_t>(k)];
        const S inv = S(1) / row.front().second;
        for (auto& entry : row)
            entry.second *= inv;
    }

    // Clear pivot columns upward, last pivot first, so each pivot row is final
    // before it is used.
    for (long j = r - 1; j >= 0; --j) {
        const auto& pivot = e.rows[static_cast<std::size_t>(j)];
        const std::size_t col = e.pivot_cols[static_cast<std::size_t>(j)];
        std::vector<std::size_t> targets;
        for (long i = 0; i < j; ++i)
            if (entry_at(e.rows[static_cast<std::size_t>(i)], col))
                targets.push_back(static_cast<std::size_t>(i));
        const long n = static_cast<long>(targets.size());
#pragma omp parallel for schedule(dynamic, 4) if (targets.size() > kParallelThreshold)
        for (long k = 0; k < n; ++k) {
            auto& row = e.rows[targets[static_cast<std::size_t>(k)]];
            const S factor = *entry_at(row, col);
            row = axpy(row, factor, pivot);
        }
    }
    return e;
}

template <class S>
std::size_t rank(const SparseMatrix<S>& m) {
    return row_echelon(m).rank();
}

template <class S>
std::vector<std::vector<S>> kernel_basis(const SparseMatrix<S>& m) {
    const RowEchelon<S> e = reduced_row_echelon(m);
    std::vector<char> is_pivot(m.cols(), 0);
    for (std::size_t c : e.pivot_cols)
        is_pivot[c] = 1;

    std::vector<std::vector<S>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        std::vector<S> v(m.cols(), S(0));
        v[f] = S(1);
        for (std::size_t k = 0; k < e.rows.size(); ++k)
            if (const S* a = entry_at(e.rows[k], f))
                v[e.pivot_cols[k]] = -*a;
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class S>
std::size_t cokernel_dimension(const SparseMatrix<S>& m) {
    return m.rows() - rank(m);
}

template <class S>
std::optional<std::vector<S>> solve(const SparseMatrix<S>& m, const std::vector<S>& v) {
    if (v.size() != m.rows())
        throw InvalidArgument("solve: right-hand side has length " + std::to_string(v.size()) + ", expected " +
                              std::to_string(m.rows()));
    std::vector<SparseRow<S>> rows(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        rows[i] = m.row(i);
        if (!is_zero(v[i]))
            rows[i].emplace_back(m.cols(), v[i]);
    }
    const auto aug = SparseMatrix<S>::from_rows(std::move(rows), m.cols() + 1);
    const RowEchelon<S> e = reduced_row_echelon(aug);
    if (!e.pivot_cols.empty() && e.pivot_cols.back() == m.cols())
        return std::nullopt;
    std::vector<S> x(m.cols(), S(0));
    for (std::size_t k = 0; k < e.rows.size(); ++k)
        if (const S* a = entry_at(e.rows[k], m.cols()))
            x[e.pivot_cols[k]] = *a;
    return x;
}

template <class S>
bool solve_membership(const SparseMatrix<S>& m, const std::vector<S>& v) {
    return solve(m, v).has_value();
}

template <class S>
SparseMatrix<S> inverse(const SparseMatrix<S>& m) {
    const std::size_t n = m.rows();
    if (m.cols() != n)
        throw InvalidArgument("inverse of a non-square matrix");
    std::vector<SparseRow<S>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        rows[i] = m.row(i);
        rows[i].emplace_back(n + i, S(1));
    }
    const RowEchelon<S> e = reduced_row_echelon(SparseMatrix<S>::from_rows(std::move(rows), 2 * n));
    if (e.rank() != n || (n > 0 && e.pivot_cols.back() != n - 1))
        throw InvalidArgument("inverse of a singular matrix");
    std::vector<SparseRow<S>> inv(n);
    for (std::size_t k = 0; k < n; ++k)
        for (const auto& [c, a] : e.rows[k])
            if (c >= n)
                inv[k].emplace_back(c - n, a);
    return SparseMatrix<S>::from_rows(std::move(inv), n);
}

template <class S>
SparseMatrix<S> column_space_basis(const SparseMatrix<S>& m) {
    RowEchelon<S> e = reduced_row_echelon(m.transpose());
    return SparseMatrix<S>::from_rows(std::move(e.rows), m.rows()).transpose();
}

namespace reference {

namespace {

// Plain Gauss-Jordan on a dense copy; returns pivot columns.
template <class S>
std::vector<std::size_t> dense_rref(std::vector<std::vector<S>>& a, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && is_zero(a[p][c]))
            ++p;
        if (p == a.size())
            continue;
        std::swap(a[p], a[r]);
        const S inv = S(1) / a[r][c];
        for (std::size_t j = c; j < cols; ++j)
            a[r][j] *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || is_zero(a[i][c]))
                continue;
            const S f = a[i][c];
            for (std::size_t j = c; j < cols; ++j)
                a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

template <class S>
std::size_t rank(const SparseMatrix<S>& m) {
    auto a = m.to_dense();
    return dense_rref(a, m.cols()).size();
}

template <class S>
std::vector<std::vector<S>> kernel_basis(const SparseMatrix<S>& m) {
    auto a = m.to_dense();
    const auto pivots = dense_rref(a, m.cols());
    std::vector<char> is_pivot(m.cols(), 0);
    for (std::size_t c : pivots)
        is_pivot[c] = 1;
    std::vector<std::vector<S>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        std::vector<S> v(m.cols(), S(0));
        v[f] = S(1);
        for (std::size_t k = 0; k < pivots.size(); ++k)
            v[pivots[k]] = -a[k][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace reference

#define ALEXINV_INSTANTIATE_ELIMINATION(S)                                              \
    template RowEchelon<S> row_echelon(const SparseMatrix<S>&);                         \
    template RowEchelon<S> reduced_row_echelon(const SparseMatrix<S>&);                 \
    template std::size_t rank(const SparseMatrix<S>&);                                  \
    template std::vector<std::vector<S>> kernel_basis(const SparseMatrix<S>&);          \
    template std::size_t cokernel_dimension(const SparseMatrix<S>&);                    \
    template bool solve_membership(const SparseMatrix<S>&, const std::vector<S>&);      \
    template std::optional<std::vector<S>> solve(const SparseMatrix<S>&, const std::vector<S>&); \
    template SparseMatrix<S> inverse(const SparseMatrix<S>&);                           \
    template SparseMatrix<S> column_space_basis(const SparseMatrix<S>&);                \
    namespace reference {                                                               \
    template std::size_t rank(const SparseMatrix<S>&);                                  \
    template std::vector<std::vector<S>> kernel_basis(const SparseMatrix<S>&);          \
    }

ALEXINV_INSTANTIATE_ELIMINATION(Rational)
ALEXINV_INSTANTIATE_ELIMINATION(Cyclotomic)

} // namespace alexinv
