#include "alexinv/rep_semisimple.hpp"

#include "alexinv/elimination.hpp"
#include "alexinv/errors.hpp"

#include <algorithm>
#include <exception>
#include <memory>
#include <mutex>
#include <tuple>

namespace alexinv {

namespace {

using Triplet = std::tuple<std::size_t, std::size_t, Rational>;

SparseMatrix<Rational> unit_matrix(std::size_t n, std::vector<std::tuple<std::size_t, std::size_t, int>> entries) {
    std::vector<Triplet> t;
    for (auto [r, c, v] : entries)
        t.emplace_back(r, c, Rational(v));
    return SparseMatrix<Rational>::from_triplets(n, n, std::move(t));
}

Weight unit_weight(std::size_t len, std::vector<std::pair<std::size_t, int>> parts) {
    Weight w(len, 0);
    for (auto [i, v] : parts)
        w[i] += v;
    return w;
}

Weight sum_weights(const Weight& a, const Weight& b) {
    Weight w(a);
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] += b[i];
    return w;
}

LieAlgebraBasis build_sp(std::size_t g) {
    const std::size_t n = 2 * g;
    LieAlgebraBasis b;
    auto add = [&](SparseMatrix<Rational> m, Weight root, std::string name) {
        b.matrices.push_back(std::move(m));
        b.roots.push_back(std::move(root));
        b.names.push_back(std::move(name));
    };
    for (std::size_t i = 0; i < g; ++i)
        add(unit_matrix(n, {{i, i, 1}, {g + i, g + i, -1}}), Weight(g, 0), "H" + std::to_string(i));
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> xi;
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j)
            if (i != j) {
                xi[{i, j}] = b.matrices.size();
                add(unit_matrix(n, {{i, j, 1}, {g + j, g + i, -1}}), unit_weight(g, {{i, 1}, {j, -1}}),
                    "X" + std::to_string(i) + std::to_string(j));
            }
    std::size_t u_last = 0, v_last = 0;
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = i; j < g; ++j) {
            if (i == j && i == g - 1)
                u_last = b.matrices.size();
            if (i == j)
                add(unit_matrix(n, {{i, g + i, 1}}), unit_weight(g, {{i, 2}}), "U" + std::to_string(i) + std::to_string(j));
            else
                add(unit_matrix(n, {{i, g + j, 1}, {j, g + i, 1}}), unit_weight(g, {{i, 1}, {j, 1}}),
                    "U" + std::to_string(i) + std::to_string(j));
        }
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = i; j < g; ++j) {
            if (i == j && i == g - 1)
                v_last = b.matrices.size();
            if (i == j)
                add(unit_matrix(n, {{g + i, i, 1}}), unit_weight(g, {{i, -2}}), "V" + std::to_string(i) + std::to_string(j));
            else
                add(unit_matrix(n, {{g + i, j, 1}, {g + j, i, 1}}), unit_weight(g, {{i, -1}, {j, -1}}),
                    "V" + std::to_string(i) + std::to_string(j));
        }
    for (std::size_t i = 0; i + 1 < g; ++i) {
        b.raising.push_back(xi.at({i, i + 1}));
        b.lowering.push_back(xi.at({i + 1, i}));
    }
    b.raising.push_back(u_last);
    b.lowering.push_back(v_last);
    return b;
}

LieAlgebraBasis build_sl(std::size_t n) {
    LieAlgebraBasis b;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> ei;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        b.matrices.push_back(unit_matrix(n, {{i, i, 1}, {i + 1, i + 1, -1}}));
        b.roots.push_back(Weight(n, 0));
        b.names.push_back("H" + std::to_string(i));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) {
                ei[{i, j}] = b.matrices.size();
                b.matrices.push_back(unit_matrix(n, {{i, j, 1}}));
                b.roots.push_back(unit_weight(n, {{i, 1}, {j, -1}}));
                b.names.push_back("E" + std::to_string(i) + std::to_string(j));
            }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        b.raising.push_back(ei.at({i, i + 1}));
        b.lowering.push_back(ei.at({i + 1, i}));
    }
    return b;
}

Rational trace(const SparseMatrix<Rational>& m) {
    Rational t = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        t += m.at(i, i);
    return t;
}

// Sort a small index list in place; returns the sign of the permutation, or 0
// if two entries coincide.
int sort_with_sign(std::vector<std::size_t>& v) {
    int sign = 1;
    for (std::size_t i = 1; i < v.size(); ++i)
        for (std::size_t j = i; j > 0 && v[j - 1] >= v[j]; --j) {
            if (v[j - 1] == v[j])
                return 0;
            std::swap(v[j - 1], v[j]);
            sign = -sign;
        }
    return sign;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > n)
        return out;
    std::vector<std::size_t> cur(k);
    for (std::size_t i = 0; i < k; ++i)
        cur[i] = i;
    while (true) {
        out.push_back(cur);
        std::size_t i = k;
        while (i > 0 && cur[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            break;
        ++cur[i - 1];
        for (std::size_t j = i; j < k; ++j)
            cur[j] = cur[j - 1] + 1;
    }
    return out;
}

// (x, y) on epsilon weights for the dual of the trace form.
Rational weight_pairing(const LieAlgebraSpec& spec, const Weight& x, const Weight& y) {
    Rational dot = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        dot += x[i] * y[i];
    if (spec.family == Family::symplectic)
        return dot / 2;
    long sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    Rational corr(sx * sy, static_cast<long>(spec.param));
    corr.canonicalize();
    return dot - corr;
}

Weight rho(const LieAlgebraSpec& spec) {
    Weight r(spec.weight_length());
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = static_cast<int>(spec.family == Family::symplectic ? spec.param - i : spec.param - 1 - i);
    return r;
}

std::vector<Weight> positive_roots(const LieAlgebraSpec& spec) {
    const std::size_t len = spec.weight_length();
    std::vector<Weight> out;
    for (std::size_t i = 0; i < len; ++i)
        for (std::size_t j = i + 1; j < len; ++j) {
            out.push_back(unit_weight(len, {{i, 1}, {j, -1}}));
            if (spec.family == Family::symplectic)
                out.push_back(unit_weight(len, {{i, 1}, {j, 1}}));
        }
    if (spec.family == Family::symplectic)
        for (std::size_t i = 0; i < len; ++i)
            out.push_back(unit_weight(len, {{i, 2}}));
    return out;
}

Rational casimir_of_weight(const LieAlgebraSpec& spec, const Weight& w) {
    Weight w2r = w;
    const Weight r = rho(spec);
    for (std::size_t i = 0; i < w.size(); ++i)
        w2r[i] += 2 * r[i];
    return weight_pairing(spec, w, w2r);
}

// Coordinates of the quotient by the row space of an RREF: kept coordinates
// map to themselves, a pivot coordinate maps to minus the rest of its row.
SparseMatrix<Rational> quotient_projection(std::size_t dim, const RowEchelon<Rational>& e,
                                           const std::vector<std::size_t>& kept) {
    std::vector<std::size_t> pos(dim, SparseMatrix<Rational>::npos);
    for (std::size_t k = 0; k < kept.size(); ++k)
        pos[kept[k]] = k;
    std::vector<Triplet> t;
    for (std::size_t k = 0; k < kept.size(); ++k)
        t.emplace_back(k, kept[k], Rational(1));
    for (std::size_t r = 0; r < e.rows.size(); ++r)
        for (const auto& [c, a] : e.rows[r])
            if (c != e.pivot_cols[r])
                t.emplace_back(pos[c], e.pivot_cols[r], -a);
    return SparseMatrix<Rational>::from_triplets(kept.size(), dim, std::move(t));
}

std::vector<std::size_t> all_indices(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = i;
    return v;
}

} // namespace

LieAlgebraSpec LieAlgebraSpec::sp(std::size_t g) {
    if (g < 1)
        throw InvalidArgument("sp(2g) needs g >= 1");
    return {Family::symplectic, g};
}

LieAlgebraSpec LieAlgebraSpec::sl(std::size_t n) {
    if (n < 2)
        throw InvalidArgument("sl(n) needs n >= 2");
    return {Family::special_linear, n};
}

std::string LieAlgebraSpec::name() const {
    return family == Family::symplectic ? "sp" + std::to_string(2 * param) : "sl" + std::to_string(param);
}

const LieAlgebraBasis& lie_algebra_basis(const LieAlgebraSpec& spec) {
    static std::mutex mutex;
    static std::map<std::pair<int, std::size_t>, std::unique_ptr<LieAlgebraBasis>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{static_cast<int>(spec.family), spec.param}];
    if (!slot) {
        auto b = std::make_unique<LieAlgebraBasis>(spec.family == Family::symplectic ? build_sp(spec.param)
                                                                                      : build_sl(spec.param));
        const std::size_t d = b->matrices.size();
        SparseMatrix<Rational> gram(d, d);
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t c = 0; c < d; ++c) {
                const Rational t = trace(b->matrices[a] * b->matrices[c]);
                if (!is_zero(t))
                    gram.set(a, c, t);
            }
        b->dual_gram = inverse(gram);
        slot = std::move(b);
    }
    return *slot;
}

Weight to_epsilon(const LieAlgebraSpec& spec, const HighestWeight& lambda) {
    if (lambda.size() != spec.rank())
        throw InvalidArgument("highest weight needs " + std::to_string(spec.rank()) + " Dynkin labels");
    Weight w(spec.weight_length(), 0);
    for (std::size_t i = 0; i < lambda.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
            w[j] += static_cast<int>(lambda[i]);
    return w;
}

HighestWeight to_dynkin(const LieAlgebraSpec& spec, const Weight& w) {
    if (w.size() != spec.weight_length())
        throw InvalidArgument("weight has the wrong length");
    HighestWeight out;
    for (std::size_t i = 0; i < spec.rank(); ++i) {
        const int next = (i + 1 < w.size()) ? w[i + 1] : 0;
        const int label = w[i] - next;
        if (label < 0)
            throw InvalidArgument("weight is not dominant");
        out.push_back(static_cast<unsigned>(label));
    }
    return out;
}

Integer weyl_dim(const LieAlgebraSpec& spec, const HighestWeight& lambda) {
    const Weight l = to_epsilon(spec, lambda);
    const Weight r = rho(spec);
    Rational prod = 1;
    for (const auto& alpha : positive_roots(spec)) {
        long num = 0, den = 0;
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            num += static_cast<long>(l[i] + r[i]) * alpha[i];
            den += static_cast<long>(r[i]) * alpha[i];
        }
        Rational f(num, den);
        f.canonicalize();
        prod *= f;
    }
    if (prod.get_den() != 1)
        throw InconsistencyError("Weyl dimension is not an integer");
    return prod.get_num();
}

Rational casimir_eigenvalue(const LieAlgebraSpec& spec, const HighestWeight& lambda) {
    return casimir_of_weight(spec, to_epsilon(spec, lambda));
}

WeightModule::WeightModule(LieAlgebraSpec spec, std::vector<SparseMatrix<Rational>> actions,
                           std::vector<Weight> weights)
    : spec_(spec), actions_(std::move(actions)), weights_(std::move(weights)) {
    const auto& basis = lie_algebra_basis(spec_);
    if (actions_.size() != basis.matrices.size())
        throw InvalidArgument("module needs one action matrix per Lie algebra basis element");
    for (const auto& a : actions_)
        if (a.rows() != weights_.size() || a.cols() != weights_.size())
            throw InvalidArgument("action matrix has the wrong size");
    for (const auto& w : weights_)
        if (w.size() != spec_.weight_length())
            throw InvalidArgument("weight has the wrong length");
}

const SparseMatrix<Rational>& WeightModule::e(std::size_t i) const {
    return actions_.at(lie_algebra_basis(spec_).raising.at(i));
}

const SparseMatrix<Rational>& WeightModule::f(std::size_t i) const {
    return actions_.at(lie_algebra_basis(spec_).lowering.at(i));
}

SparseMatrix<Rational> WeightModule::h(std::size_t i) const { return e(i) * f(i) - f(i) * e(i); }

std::map<Weight, std::vector<std::size_t>> WeightModule::weight_blocks() const {
    std::map<Weight, std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < weights_.size(); ++i)
        out[weights_[i]].push_back(i);
    return out;
}

WeightModule defining_module(const LieAlgebraSpec& spec) {
    const auto& b = lie_algebra_basis(spec);
    std::vector<Weight> w;
    const std::size_t len = spec.weight_length();
    if (spec.family == Family::symplectic) {
        for (std::size_t i = 0; i < spec.param; ++i)
            w.push_back(unit_weight(len, {{i, 1}}));
        for (std::size_t i = 0; i < spec.param; ++i)
            w.push_back(unit_weight(len, {{i, -1}}));
    } else {
        for (std::size_t i = 0; i < spec.param; ++i)
            w.push_back(unit_weight(len, {{i, 1}}));
    }
    return WeightModule(spec, b.matrices, std::move(w));
}

WeightModule trivial_module(const LieAlgebraSpec& spec, std::size_t dim) {
    const auto& b = lie_algebra_basis(spec);
    return WeightModule(spec, std::vector<SparseMatrix<Rational>>(b.matrices.size(), SparseMatrix<Rational>(dim, dim)),
                        std::vector<Weight>(dim, Weight(spec.weight_length(), 0)));
}

WeightModule exterior_power(const WeightModule& m, std::size_t k) {
    const auto basis = subsets(m.dimension(), k);
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i)
        index.emplace(basis[i], i);

    std::vector<Weight> weights;
    for (const auto& s : basis) {
        Weight w(m.spec().weight_length(), 0);
        for (std::size_t i : s)
            w = sum_weights(w, m.weights()[i]);
        weights.push_back(std::move(w));
    }

    std::vector<SparseMatrix<Rational>> actions;
    for (const auto& x : m.actions()) {
        const auto xt = x.transpose();
        std::vector<Triplet> t;
        for (std::size_t col = 0; col < basis.size(); ++col) {
            const auto& s = basis[col];
            for (std::size_t p = 0; p < k; ++p)
                for (const auto& [j, c] : xt.row(s[p])) {
                    auto img = s;
                    img[p] = j;
                    const int sign = sort_with_sign(img);
                    if (sign != 0)
                        t.emplace_back(index.at(img), col, sign * c);
                }
        }
        actions.push_back(SparseMatrix<Rational>::from_triplets(basis.size(), basis.size(), std::move(t)));
    }
    return WeightModule(m.spec(), std::move(actions), std::move(weights));
}

WeightModule symmetric_power(const WeightModule& m, std::size_t k) {
    const MonomialBasis basis(m.dimension(), k);
    std::vector<Weight> weights;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        Weight w(m.spec().weight_length(), 0);
        const auto& e = basis.exponents(i);
        for (std::size_t v = 0; v < e.size(); ++v)
            for (unsigned r = 0; r < e[v]; ++r)
                w = sum_weights(w, m.weights()[v]);
        weights.push_back(std::move(w));
    }
    std::vector<SparseMatrix<Rational>> actions;
    for (const auto& x : m.actions()) {
        const auto xt = x.transpose();
        std::vector<Triplet> t;
        for (std::size_t col = 0; col < basis.size(); ++col) {
            const auto& e = basis.exponents(col);
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0)
                    continue;
                for (const auto& [j, c] : xt.row(i)) {
                    auto img = e;
                    --img[i];
                    ++img[j];
                    t.emplace_back(basis.index(img), col, c * e[i]);
                }
            }
        }
        actions.push_back(SparseMatrix<Rational>::from_triplets(basis.size(), basis.size(), std::move(t)));
    }
    return WeightModule(m.spec(), std::move(actions), std::move(weights));
}

WeightModule tensor_product(const WeightModule& a, const WeightModule& b) {
    if (!(a.spec() == b.spec()))
        throw InvalidArgument("tensor product of modules over different Lie algebras");
    const std::size_t da = a.dimension(), db = b.dimension();
    std::vector<Weight> weights;
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < db; ++j)
            weights.push_back(sum_weights(a.weights()[i], b.weights()[j]));
    std::vector<SparseMatrix<Rational>> actions;
    for (std::size_t x = 0; x < a.actions().size(); ++x) {
        std::vector<Triplet> t;
        const auto& xa = a.action(x);
        const auto& xb = b.action(x);
        for (std::size_t i = 0; i < da; ++i)
            for (const auto& [k, c] : xa.row(i))
                for (std::size_t j = 0; j < db; ++j)
                    t.emplace_back(i * db + j, k * db + j, c);
        for (std::size_t i = 0; i < da; ++i)
            for (std::size_t j = 0; j < db; ++j)
                for (const auto& [k, c] : xb.row(j))
                    t.emplace_back(i * db + j, i * db + k, c);
        actions.push_back(SparseMatrix<Rational>::from_triplets(da * db, da * db, std::move(t)));
    }
    return WeightModule(a.spec(), std::move(actions), std::move(weights));
}

WeightModule direct_sum(const WeightModule& a, const WeightModule& b) {
    if (!(a.spec() == b.spec()))
        throw InvalidArgument("direct sum of modules over different Lie algebras");
    const std::size_t da = a.dimension(), d = da + b.dimension();
    std::vector<SparseMatrix<Rational>> actions;
    for (std::size_t x = 0; x < a.actions().size(); ++x) {
        std::vector<Triplet> t;
        for (std::size_t i = 0; i < da; ++i)
            for (const auto& [k, c] : a.action(x).row(i))
                t.emplace_back(i, k, c);
        for (std::size_t i = 0; i < b.dimension(); ++i)
            for (const auto& [k, c] : b.action(x).row(i))
                t.emplace_back(da + i, da + k, c);
        actions.push_back(SparseMatrix<Rational>::from_triplets(d, d, std::move(t)));
    }
    auto weights = a.weights();
    weights.insert(weights.end(), b.weights().begin(), b.weights().end());
    return WeightModule(a.spec(), std::move(actions), std::move(weights));
}

Quotient quotient_module(const WeightModule& m, const SparseMatrix<Rational>& columns) {
    const std::size_t dim = m.dimension();
    if (columns.rows() != dim)
        throw InvalidArgument("quotient: spanning vectors have the wrong length");
    const auto e = reduced_row_echelon(columns.transpose());
    for (const auto& row : e.rows)
        for (const auto& [c, a] : row)
            if (m.weights()[c] != m.weights()[row.front().first])
                throw InvalidArgument("quotient: span is not a sum of weight spaces");

    std::vector<char> pivot(dim, 0);
    for (std::size_t c : e.pivot_cols)
        pivot[c] = 1;
    std::vector<std::size_t> kept;
    for (std::size_t c = 0; c < dim; ++c)
        if (!pivot[c])
            kept.push_back(c);
    auto proj = quotient_projection(dim, e, kept);

    const auto span = SparseMatrix<Rational>::from_rows(e.rows, dim).transpose();
    const auto rows = all_indices(dim);
    std::vector<SparseMatrix<Rational>> actions;
    for (const auto& x : m.actions()) {
        if (!(proj * (x * span)).is_zero_matrix())
            throw InvalidArgument("quotient: span is not a submodule");
        actions.push_back(proj * x.select(rows, kept));
    }
    std::vector<Weight> weights;
    for (std::size_t c : kept)
        weights.push_back(m.weights()[c]);
    return Quotient{WeightModule(m.spec(), std::move(actions), std::move(weights)), std::move(proj), std::move(kept)};
}

WeightModule fundamental_module(const LieAlgebraSpec& spec, std::size_t k) {
    const auto def = defining_module(spec);
    if (spec.family == Family::special_linear) {
        if (k < 1 || k >= spec.param)
            throw InvalidArgument("sl(n) fundamental modules need 1 <= k <= n-1");
        return exterior_power(def, k);
    }
    const std::size_t g = spec.param;
    if (k < 1 || k > g)
        throw InvalidArgument("sp(2g) fundamental modules need 1 <= k <= g");
    if (k == 1)
        return def;
    const auto top = exterior_power(def, k);
    const auto lower = subsets(2 * g, k - 2);
    const auto upper = subsets(2 * g, k);
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t i = 0; i < upper.size(); ++i)
        index.emplace(upper[i], i);
    // Columns theta ^ e_J with theta = sum_i a_i ^ b_i.
    std::vector<Triplet> t;
    for (std::size_t col = 0; col < lower.size(); ++col)
        for (std::size_t i = 0; i < g; ++i) {
            std::vector<std::size_t> s{i, g + i};
            s.insert(s.end(), lower[col].begin(), lower[col].end());
            const int sign = sort_with_sign(s);
            if (sign != 0)
                t.emplace_back(index.at(s), col, Rational(sign));
        }
    const auto theta = SparseMatrix<Rational>::from_triplets(upper.size(), lower.size(), std::move(t));
    return quotient_module(top, theta).module;
}

SparseMatrix<Rational> casimir_matrix(const WeightModule& m) {
    const auto& dg = lie_algebra_basis(m.spec()).dual_gram;
    SparseMatrix<Rational> c(m.dimension(), m.dimension());
    for (std::size_t a = 0; a < dg.rows(); ++a)
        for (const auto& [b, g] : dg.row(a)) {
            auto term = m.action(a) * m.action(b);
            term *= g;
            c = c + term;
        }
    return c;
}

std::vector<HighestWeightVector> highest_weight_vectors(const WeightModule& m) {
    const std::size_t dim = m.dimension();
    const std::size_t r = m.spec().rank();
    std::vector<SparseMatrix<Rational>> et;
    for (std::size_t i = 0; i < r; ++i)
        et.push_back(m.e(i).transpose());
    std::vector<HighestWeightVector> out;
    for (const auto& [w, cols] : m.weight_blocks()) {
        std::vector<SparseRow<Rational>> rows;
        for (std::size_t c : cols) {
            SparseRow<Rational> row;
            for (std::size_t i = 0; i < r; ++i)
                for (const auto& [j, v] : et[i].row(c))
                    row.emplace_back(i * dim + j, v);
            rows.push_back(std::move(row));
        }
        const auto a = SparseMatrix<Rational>::from_rows(std::move(rows), r * dim).transpose();
        for (const auto& k : kernel_basis(a)) {
            std::vector<Rational> v(dim, Rational(0));
            for (std::size_t i = 0; i < cols.size(); ++i)
                v[cols[i]] = k[i];
            out.push_back({w, std::move(v)});
        }
    }
    return out;
}

IsotypicComponent isotypic_component(const WeightModule& m, const HighestWeight& lambda) {
    const auto& spec = m.spec();
    IsotypicComponent out;
    out.lambda = lambda;
    out.casimir = casimir_eigenvalue(spec, lambda);

    std::size_t multiplicity = 0;
    for (const auto& hw : highest_weight_vectors(m)) {
        const auto d = to_dynkin(spec, hw.weight);
        if (d == lambda) {
            ++multiplicity;
        } else if (casimir_eigenvalue(spec, d) == out.casimir) {
            throw AmbiguousDecomposition("Casimir value " + to_string(out.casimir) +
                                         " is shared with another constituent; a finer invariant is needed");
        }
    }
    if (multiplicity > 1)
        throw AmbiguousDecomposition("constituent occurs with multiplicity " + std::to_string(multiplicity));

    const auto cas = casimir_matrix(m);
    std::vector<std::pair<Weight, std::vector<std::size_t>>> blocks;
    for (auto& [w, cols] : m.weight_blocks())
        blocks.emplace_back(w, cols);

    struct Piece {
        std::vector<std::vector<Rational>> eig;
        SparseMatrix<Rational> coords;
    };
    std::vector<Piece> pieces(blocks.size());
    std::vector<std::exception_ptr> errors(blocks.size());
    // The Casimir preserves weight spaces; each block is diagonalized on its own.
#pragma omp parallel for schedule(dynamic)
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        try {
        const auto& cols = blocks[b].second;
        auto shifted = SparseMatrix<Rational>::identity(cols.size());
        shifted *= out.casimir;
        shifted = cas.select(cols, cols) - shifted;
        auto eig = kernel_basis(shifted);
        if (eig.empty())
            continue;
        const auto image = column_space_basis(shifted);
        auto all = eig;
        for (std::size_t j = 0; j < image.cols(); ++j)
            all.push_back(image.column(j));
        if (all.size() != cols.size())
            throw InconsistencyError("Casimir is not diagonalizable on a weight space");
        const auto inv = inverse(SparseMatrix<Rational>::from_columns(all, cols.size()));
        std::vector<std::size_t> first(eig.size());
        for (std::size_t i = 0; i < eig.size(); ++i)
            first[i] = i;
        pieces[b].coords = inv.select(first, all_indices(cols.size()));
        pieces[b].eig = std::move(eig);
        } catch (...) {
            errors[b] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    std::vector<Triplet> bt, ct;
    std::size_t k = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const auto& cols = blocks[b].second;
        for (std::size_t i = 0; i < pieces[b].eig.size(); ++i, ++k) {
            for (std::size_t j = 0; j < cols.size(); ++j)
                if (!is_zero(pieces[b].eig[i][j]))
                    bt.emplace_back(cols[j], k, pieces[b].eig[i][j]);
            for (const auto& [j, v] : pieces[b].coords.row(i))
                ct.emplace_back(k, cols[j], v);
            out.weights.push_back(blocks[b].first);
        }
    }
    out.basis = SparseMatrix<Rational>::from_triplets(m.dimension(), k, std::move(bt));
    out.coordinates = SparseMatrix<Rational>::from_triplets(k, m.dimension(), std::move(ct));

    const Integer expected = multiplicity == 0 ? Integer(0) : weyl_dim(spec, lambda);
    if (expected != static_cast<unsigned long>(k))
        throw InconsistencyError("Casimir eigenspace has dimension " + std::to_string(k) +
                                 " but the Weyl formula gives " + expected.get_str());
    return out;
}

SparseMatrix<Rational> isotypic_projection(const WeightModule& m, const HighestWeight& lambda) {
    return isotypic_component(m, lambda).projection();
}

WeightModule component_module(const WeightModule& m, const IsotypicComponent& c) {
    std::vector<SparseMatrix<Rational>> actions;
    for (const auto& x : m.actions())
        actions.push_back(c.coordinates * (x * c.basis));
    return WeightModule(m.spec(), std::move(actions), c.weights);
}

} // namespace alexinv
