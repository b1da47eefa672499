#pragma once

#include "alexinv/errors.hpp"
#include "alexinv/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace alexinv {

template <class S>
using SparseRow = std::vector<std::pair<std::size_t, S>>;

/// Row-major sparse matrix over an exact field. Each row is sorted by column and
/// never stores a zero, so iteration order is deterministic.
template <class S>
class SparseMatrix {
public:
    using Scalar = S;
    using Row = SparseRow<S>;

    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows) {}

    static SparseMatrix identity(std::size_t n) {
        SparseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m.data_[i].emplace_back(i, S(1));
        return m;
    }

    static SparseMatrix from_dense(const std::vector<std::vector<S>>& dense, std::size_t cols) {
        SparseMatrix m(dense.size(), cols);
        for (std::size_t i = 0; i < dense.size(); ++i) {
            if (dense[i].size() != cols)
                throw InvalidArgument("ragged dense matrix");
            for (std::size_t j = 0; j < cols; ++j)
                if (!is_zero(dense[i][j]))
                    m.data_[i].emplace_back(j, dense[i][j]);
        }
        return m;
    }

    /// Rows must be sorted by column; zeros are dropped.
    static SparseMatrix from_rows(std::vector<Row> rows, std::size_t cols) {
        SparseMatrix m;
        m.cols_ = cols;
        for (auto& r : rows) {
            std::erase_if(r, [](const auto& e) { return is_zero(e.second); });
            for (std::size_t k = 0; k < r.size(); ++k) {
                if (r[k].first >= cols || (k > 0 && r[k - 1].first >= r[k].first))
                    throw InvalidArgument("sparse row not sorted or out of range");
            }
        }
        m.data_ = std::move(rows);
        return m;
    }

    /// Matrix whose columns are the given dense vectors (all of length rows).
    static SparseMatrix from_columns(const std::vector<std::vector<S>>& columns, std::size_t rows) {
        SparseMatrix m(rows, columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (columns[j].size() != rows)
                throw InvalidArgument("column length mismatch");
            for (std::size_t i = 0; i < rows; ++i)
                if (!is_zero(columns[j][i]))
                    m.data_[i].emplace_back(j, columns[j][i]);
        }
        return m;
    }

    /// Entries (row, col, value) in any order; repeated positions are summed.
    static SparseMatrix from_triplets(std::size_t rows, std::size_t cols,
                                      std::vector<std::tuple<std::size_t, std::size_t, S>> t) {
        std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
            return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
        });
        std::vector<Row> data(rows);
        for (auto& [r, c, v] : t) {
            if (r >= rows || c >= cols)
                throw InvalidArgument("triplet out of range");
            auto& row = data[r];
            if (!row.empty() && row.back().first == c)
                row.back().second += v;
            else
                row.emplace_back(c, std::move(v));
        }
        return from_rows(std::move(data), cols);
    }

    std::size_t rows() const { return data_.size(); }
    std::size_t cols() const { return cols_; }

    std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto& r : data_)
            n += r.size();
        return n;
    }

    const Row& row(std::size_t i) const { return data_.at(i); }

    S at(std::size_t i, std::size_t j) const {
        const auto& r = data_.at(i);
        auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& e, std::size_t c) { return e.first < c; });
        if (it != r.end() && it->first == j)
            return it->second;
        return S(0);
    }

    void set(std::size_t i, std::size_t j, const S& value) {
        check_index(i, j);
        auto& r = data_[i];
        auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& e, std::size_t c) { return e.first < c; });
        const bool present = it != r.end() && it->first == j;
        if (is_zero(value)) {
            if (present)
                r.erase(it);
        } else if (present) {
            it->second = value;
        } else {
            r.insert(it, {j, value});
        }
    }

    void add(std::size_t i, std::size_t j, const S& value) {
        if (is_zero(value))
            return;
        check_index(i, j);
        auto& r = data_[i];
        auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& e, std::size_t c) { return e.first < c; });
        if (it != r.end() && it->first == j) {
            it->second += value;
            if (is_zero(it->second))
                r.erase(it);
        } else {
            r.insert(it, {j, value});
        }
    }

    SparseMatrix transpose() const {
        SparseMatrix t(cols_, rows());
        for (std::size_t i = 0; i < rows(); ++i)
            for (const auto& [j, v] : data_[i])
                t.data_[j].emplace_back(i, v);
        return t;
    }

    std::vector<S> apply(const std::vector<S>& v) const {
        if (v.size() != cols_)
            throw InvalidArgument("matrix-vector dimension mismatch");
        std::vector<S> out(rows(), S(0));
        for (std::size_t i = 0; i < rows(); ++i)
            for (const auto& [j, a] : data_[i])
                if (!is_zero(v[j]))
                    out[i] += a * v[j];
        return out;
    }

    std::vector<S> column(std::size_t j) const {
        std::vector<S> out(rows(), S(0));
        for (std::size_t i = 0; i < rows(); ++i)
            out[i] = at(i, j);
        return out;
    }

    std::vector<std::vector<S>> to_dense() const {
        std::vector<std::vector<S>> d(rows(), std::vector<S>(cols_, S(0)));
        for (std::size_t i = 0; i < rows(); ++i)
            for (const auto& [j, v] : data_[i])
                d[i][j] = v;
        return d;
    }

    /// Submatrix on the given row and column index lists (in the given order).
    SparseMatrix select(const std::vector<std::size_t>& row_ids, const std::vector<std::size_t>& col_ids) const {
        std::vector<std::size_t> col_pos(cols_, npos);
        for (std::size_t k = 0; k < col_ids.size(); ++k)
            col_pos.at(col_ids[k]) = k;
        SparseMatrix out(row_ids.size(), col_ids.size());
        for (std::size_t r = 0; r < row_ids.size(); ++r) {
            for (const auto& [j, v] : data_.at(row_ids[r]))
                if (col_pos[j] != npos)
                    out.data_[r].emplace_back(col_pos[j], v);
            std::sort(out.data_[r].begin(), out.data_[r].end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
        }
        return out;
    }

    SparseMatrix& operator*=(const S& c) {
        if (is_zero(c)) {
            for (auto& r : data_)
                r.clear();
            return *this;
        }
        for (auto& r : data_)
            for (auto& e : r)
                e.second *= c;
        return *this;
    }

    friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, S(1)); }
    friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, S(-1)); }

    friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
        if (a.cols_ != b.rows())
            throw InvalidArgument("matrix product dimension mismatch");
        SparseMatrix out(a.rows(), b.cols_);
        std::vector<S> acc(b.cols_, S(0));
        std::vector<char> touched(b.cols_, 0);
        std::vector<std::size_t> cols;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            cols.clear();
            for (const auto& [k, av] : a.data_[i]) {
                for (const auto& [j, bv] : b.data_[k]) {
                    if (!touched[j]) {
                        touched[j] = 1;
                        cols.push_back(j);
                    }
                    acc[j] += av * bv;
                }
            }
            std::sort(cols.begin(), cols.end());
            for (std::size_t j : cols) {
                if (!is_zero(acc[j]))
                    out.data_[i].emplace_back(j, acc[j]);
                acc[j] = S(0);
                touched[j] = 0;
            }
        }
        return out;
    }

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
        if (a.rows() != b.rows() || a.cols_ != b.cols_)
            return false;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            const auto& x = a.data_[i];
            const auto& y = b.data_[i];
            if (x.size() != y.size())
                return false;
            for (std::size_t k = 0; k < x.size(); ++k)
                if (x[k].first != y[k].first || !(x[k].second == y[k].second))
                    return false;
        }
        return true;
    }

    bool is_zero_matrix() const {
        for (const auto& r : data_)
            if (!r.empty())
                return false;
        return true;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    void check_index(std::size_t i, std::size_t j) const {
        if (i >= rows() || j >= cols_)
            throw InvalidArgument("matrix index (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
    }

    static SparseMatrix combine(const SparseMatrix& a, const SparseMatrix& b, const S& sign) {
        if (a.rows() != b.rows() || a.cols_ != b.cols_)
            throw InvalidArgument("matrix sum dimension mismatch");
        SparseMatrix out(a.rows(), a.cols_);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            const auto& x = a.data_[i];
            const auto& y = b.data_[i];
            auto& o = out.data_[i];
            std::size_t p = 0, q = 0;
            while (p < x.size() || q < y.size()) {
                if (q == y.size() || (p < x.size() && x[p].first < y[q].first)) {
                    o.push_back(x[p++]);
                } else if (p == x.size() || y[q].first < x[p].first) {
                    o.emplace_back(y[q].first, sign * y[q].second);
                    ++q;
                } else {
                    S v = x[p].second + sign * y[q].second;
                    if (!is_zero(v))
                        o.emplace_back(x[p].first, v);
                    ++p;
                    ++q;
                }
            }
        }
        return out;
    }

    std::size_t cols_ = 0;
    std::vector<Row> data_;
};

/// Stacks matrices with equal column counts vertically.
template <class S>
SparseMatrix<S> vstack(const std::vector<const SparseMatrix<S>*>& parts, std::size_t cols) {
    std::vector<SparseRow<S>> rows;
    for (const auto* p : parts) {
        if (p->cols() != cols)
            throw InvalidArgument("vstack column mismatch");
        for (std::size_t i = 0; i < p->rows(); ++i)
            rows.push_back(p->row(i));
    }
    return SparseMatrix<S>::from_rows(std::move(rows), cols);
}

/// Places matrices side by side; all must have the same number of rows.
template <class S>
SparseMatrix<S> hstack(const std::vector<const SparseMatrix<S>*>& parts, std::size_t rows) {
    std::size_t cols = 0;
    for (const auto* p : parts) {
        if (p->rows() != rows)
            throw InvalidArgument("hstack row mismatch");
        cols += p->cols();
    }
    std::vector<SparseRow<S>> out(rows);
    std::size_t offset = 0;
    for (const auto* p : parts) {
        for (std::size_t i = 0; i < rows; ++i)
            for (const auto& [j, v] : p->row(i))
                out[i].emplace_back(offset + j, v);
        offset += p->cols();
    }
    return SparseMatrix<S>::from_rows(std::move(out), cols);
}

} // namespace alexinv
