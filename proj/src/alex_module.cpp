#include "alexinv/alex_module.hpp"

#include "alexinv/budget.hpp"
#include "alexinv/elimination.hpp"
#include "alexinv/errors.hpp"

#include <algorithm>
#include <tuple>

namespace alexinv {

namespace {

using Triplet = std::tuple<std::size_t, std::size_t, Rational>;

SparseMatrix<Rational> from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> t) {
    return SparseMatrix<Rational>::from_triplets(rows, cols, std::move(t));
}

void fill_monomials(std::size_t n, std::size_t q, std::size_t var, std::vector<unsigned>& cur,
                    std::vector<std::vector<unsigned>>& out) {
    if (var + 1 == n) {
        cur[var] = static_cast<unsigned>(q);
        out.push_back(cur);
        return;
    }
    for (std::size_t e = q + 1; e-- > 0;) {
        cur[var] = static_cast<unsigned>(e);
        fill_monomials(n, q - e, var + 1, cur, out);
    }
    cur[var] = 0;
}

Weight add_weights(const Weight& a, const Weight& b) {
    if (a.size() != b.size())
        throw InvalidArgument("weights of different lengths");
    Weight w(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        w[i] = a[i] + b[i];
    return w;
}

std::vector<Weight> monomial_weights(const MonomialBasis& basis, const std::vector<Weight>& variables,
                                     std::size_t len) {
    std::vector<Weight> out;
    out.reserve(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        Weight w(len, 0);
        const auto& e = basis.exponents(i);
        for (std::size_t v = 0; v < e.size(); ++v)
            for (std::size_t k = 0; k < len; ++k)
                w[k] += static_cast<int>(e[v]) * variables[v][k];
        out.push_back(std::move(w));
    }
    return out;
}

} // namespace

std::size_t sym_dim(std::size_t n, std::size_t q) {
    if (n == 0)
        return q == 0 ? 1 : 0;
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), n + q - 1, q);
    if (!b.fits_ulong_p())
        throw BudgetExceeded("Sym_q dimension does not fit in a machine word");
    return b.get_ui();
}

MonomialBasis::MonomialBasis(std::size_t n, std::size_t q) : n_(n), q_(q) {
    require_budget(sym_dim(n, q) * (n * sizeof(unsigned) + 96), "monomial basis");
    if (n == 0) {
        if (q == 0)
            exps_.emplace_back();
    } else {
        std::vector<unsigned> cur(n, 0);
        fill_monomials(n, q, 0, cur, exps_);
    }
    for (std::size_t i = 0; i < exps_.size(); ++i)
        index_.emplace(exps_[i], i);
}

std::size_t MonomialBasis::index(const std::vector<unsigned>& e) const {
    auto it = index_.find(e);
    if (it == index_.end())
        throw InvalidArgument("not a monomial of degree " + std::to_string(q_));
    return it->second;
}

std::size_t MonomialBasis::times_variable(const MonomialBasis& next, std::size_t i, std::size_t k) const {
    if (k >= n_)
        throw InvalidArgument("variable index out of range");
    auto e = exps_.at(i);
    ++e[k];
    return next.index(e);
}

GradedMap::GradedMap(std::size_t base_dim, std::size_t target_dim, std::vector<GeneratorSymbol> sources,
                     std::optional<GradingWeights> weights)
    : n_(base_dim), target_dim_(target_dim), sources_(std::move(sources)), weights_(std::move(weights)) {
    for (const auto& s : sources_) {
        if (s.shift > 1)
            throw InvalidArgument("generator shift must be 0 or 1");
        for (const auto& t : s.terms) {
            if (t.target >= target_dim_)
                throw InvalidArgument("symbol term target out of range");
            const bool constant = t.variable == SymbolTerm::constant;
            if (constant != (s.shift == 0))
                throw InvalidArgument("symbol term degree disagrees with generator shift");
            if (!constant && t.variable >= n_)
                throw InvalidArgument("symbol term variable out of range");
        }
    }
    if (weights_) {
        if (weights_->variables.size() != n_ || weights_->sources.size() != sources_.size() ||
            weights_->targets.size() != target_dim_)
            throw InvalidArgument("grading weights have the wrong counts");
    }
    rank_in_group_.resize(sources_.size());
    for (std::size_t s = 0; s < sources_.size(); ++s)
        rank_in_group_[s] = group_size_[sources_[s].shift]++;
}

std::size_t GradedMap::target_size(std::size_t q) const { return sym_dim(n_, q) * target_dim_; }

std::size_t GradedMap::source_size(std::size_t q) const {
    std::size_t total = 0;
    for (const auto& [shift, count] : group_size_)
        if (shift <= q)
            total += sym_dim(n_, q - shift) * count;
    return total;
}

std::size_t GradedMap::source_index(std::size_t q, std::size_t s, std::size_t monomial) const {
    const std::size_t shift = sources_.at(s).shift;
    if (shift > q)
        throw InvalidArgument("generator has no component in this degree");
    std::size_t offset = 0;
    for (const auto& [d, count] : group_size_) {
        if (d == shift)
            break;
        if (d <= q)
            offset += sym_dim(n_, q - d) * count;
    }
    return offset + monomial * group_size_.at(shift) + rank_in_group_[s];
}

SparseMatrix<Rational> GradedMap::instantiate(std::size_t q) const {
    const MonomialBasis top(n_, q);
    std::optional<MonomialBasis> below;
    if (q > 0)
        below.emplace(n_, q - 1);
    std::vector<Triplet> t;
    for (std::size_t s = 0; s < sources_.size(); ++s) {
        const auto& gen = sources_[s];
        if (gen.shift > q)
            continue;
        const MonomialBasis& src = gen.shift == 0 ? top : *below;
        for (std::size_t m = 0; m < src.size(); ++m) {
            const std::size_t col = source_index(q, s, m);
            for (const auto& term : gen.terms) {
                const std::size_t mono = gen.shift == 0 ? m : src.times_variable(top, m, term.variable);
                t.emplace_back(target_index(mono, term.target), col, term.coeff);
            }
        }
    }
    return from_triplets(target_size(q), source_size(q), std::move(t));
}

std::vector<WeightBlock> GradedMap::instantiate_blocks(std::size_t q) const {
    if (!weights_)
        throw InvalidArgument("instantiate_blocks needs grading weights");
    const std::size_t len = weights_->variables.empty() ? (weights_->targets.empty() ? 0 : weights_->targets[0].size())
                                                        : weights_->variables[0].size();
    const MonomialBasis top(n_, q);
    std::optional<MonomialBasis> below;
    if (q > 0)
        below.emplace(n_, q - 1);
    const auto top_w = monomial_weights(top, weights_->variables, len);
    std::vector<Weight> below_w;
    if (below)
        below_w = monomial_weights(*below, weights_->variables, len);

    std::map<Weight, std::size_t> block_of;
    std::vector<WeightBlock> blocks;
    auto block_id = [&](const Weight& w) {
        auto [it, inserted] = block_of.try_emplace(w, blocks.size());
        if (inserted) {
            blocks.emplace_back();
            blocks.back().weight = w;
        }
        return it->second;
    };

    const std::size_t nrows = target_size(q);
    std::vector<std::size_t> row_block(nrows), row_local(nrows);
    for (std::size_t m = 0; m < top.size(); ++m)
        for (std::size_t t = 0; t < target_dim_; ++t) {
            const std::size_t r = target_index(m, t);
            const std::size_t b = block_id(add_weights(top_w[m], weights_->targets[t]));
            row_block[r] = b;
            row_local[r] = blocks[b].rows.size();
            blocks[b].rows.push_back(r);
        }

    // Columns in ascending global order so each block's column list is sorted.
    const std::size_t ncols = source_size(q);
    std::vector<std::pair<std::size_t, std::size_t>> col_source(ncols); // (generator, monomial)
    for (std::size_t s = 0; s < sources_.size(); ++s) {
        if (sources_[s].shift > q)
            continue;
        const std::size_t count = sources_[s].shift == 0 ? top.size() : below->size();
        for (std::size_t m = 0; m < count; ++m)
            col_source[source_index(q, s, m)] = {s, m};
    }

    std::vector<std::vector<Triplet>> trips;
    for (std::size_t c = 0; c < ncols; ++c) {
        const auto [s, m] = col_source[c];
        const auto& gen = sources_[s];
        const Weight& mw = gen.shift == 0 ? top_w[m] : below_w[m];
        const std::size_t b = block_id(add_weights(mw, weights_->sources[s]));
        if (trips.size() < blocks.size())
            trips.resize(blocks.size());
        const std::size_t local_col = blocks[b].cols.size();
        blocks[b].cols.push_back(c);
        for (const auto& term : gen.terms) {
            const std::size_t mono = gen.shift == 0 ? m : below->times_variable(top, m, term.variable);
            const std::size_t r = target_index(mono, term.target);
            if (row_block[r] != b)
                throw InconsistencyError("graded map is not homogeneous for the given weights");
            trips[b].emplace_back(row_local[r], local_col, term.coeff);
        }
    }
    trips.resize(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b)
        blocks[b].matrix = from_triplets(blocks[b].rows.size(), blocks[b].cols.size(), std::move(trips[b]));
    return blocks;
}

SparseMatrix<Rational> GradedMap::source_multiplication(std::size_t q, std::size_t k) const {
    const MonomialBasis next(n_, q + 1);
    std::vector<Triplet> t;
    for (std::size_t s = 0; s < sources_.size(); ++s) {
        const std::size_t d = sources_[s].shift;
        if (d > q)
            continue;
        const MonomialBasis src(n_, q - d), dst(n_, q + 1 - d);
        for (std::size_t m = 0; m < src.size(); ++m)
            t.emplace_back(source_index(q + 1, s, src.times_variable(dst, m, k)), source_index(q, s, m), Rational(1));
    }
    return from_triplets(source_size(q + 1), source_size(q), std::move(t));
}

SparseMatrix<Rational> GradedMap::target_multiplication(std::size_t q, std::size_t k) const {
    const MonomialBasis src(n_, q), dst(n_, q + 1);
    std::vector<Triplet> t;
    for (std::size_t m = 0; m < src.size(); ++m)
        for (std::size_t w = 0; w < target_dim_; ++w)
            t.emplace_back(target_index(src.times_variable(dst, m, k), w), target_index(m, w), Rational(1));
    return from_triplets(target_size(q + 1), target_size(q), std::move(t));
}

GradedMap GradedMap::compose_target(const SparseMatrix<Rational>& b,
                                    std::optional<std::vector<Weight>> new_target_weights) const {
    if (b.cols() != target_dim_)
        throw InvalidArgument("compose_target: matrix has the wrong number of columns");
    const auto bt = b.transpose();
    std::vector<GeneratorSymbol> out;
    out.reserve(sources_.size());
    for (const auto& gen : sources_) {
        std::map<std::pair<std::size_t, std::size_t>, Rational> acc;
        for (const auto& term : gen.terms)
            for (const auto& [t2, c] : bt.row(term.target))
                acc[{term.variable, t2}] += term.coeff * c;
        GeneratorSymbol g;
        g.shift = gen.shift;
        for (auto& [key, c] : acc)
            if (!is_zero(c))
                g.terms.push_back({key.first, key.second, c});
        out.push_back(std::move(g));
    }
    std::optional<GradingWeights> w;
    if (weights_ && new_target_weights)
        w = GradingWeights{weights_->variables, weights_->sources, std::move(*new_target_weights)};
    return GradedMap(n_, b.rows(), std::move(out), std::move(w));
}

std::size_t GradedMap::estimated_bytes(std::size_t q) const {
    std::size_t nnz = 0;
    for (const auto& gen : sources_)
        if (gen.shift <= q)
            nnz += sym_dim(n_, q - gen.shift) * gen.terms.size();
    // Entries are stored once for the matrix and about twice more during
    // elimination; one rational entry with its index is about 64 bytes.
    return 3 * 64 * nnz + 48 * (target_size(q) + source_size(q));
}

std::size_t wedge3_dim(std::size_t n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }

std::vector<std::array<std::size_t, 3>> wedge3_triples(std::size_t n) {
    std::vector<std::array<std::size_t, 3>> out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                out.push_back({i, j, k});
    return out;
}

GradedMap delta3(std::size_t n, std::optional<std::vector<Weight>> variable_weights) {
    std::vector<GeneratorSymbol> gens;
    const auto triples = wedge3_triples(n);
    gens.reserve(triples.size());
    for (const auto& [i, j, k] : triples) {
        GeneratorSymbol g;
        g.shift = 1;
        g.terms.push_back({i, wedge2_index(n, j, k), Rational(1)});
        g.terms.push_back({j, wedge2_index(n, i, k), Rational(-1)});
        g.terms.push_back({k, wedge2_index(n, i, j), Rational(1)});
        gens.push_back(std::move(g));
    }
    std::optional<GradingWeights> w;
    if (variable_weights) {
        if (variable_weights->size() != n)
            throw InvalidArgument("delta3: need one weight per variable");
        const auto& vw = *variable_weights;
        GradingWeights gw;
        gw.variables = vw;
        for (const auto& [i, j, k] : triples)
            gw.sources.push_back(add_weights(add_weights(vw[i], vw[j]), vw[k]));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                gw.targets.push_back(add_weights(vw[i], vw[j]));
        w = std::move(gw);
    }
    return GradedMap(n, wedge2_dim(n), std::move(gens), std::move(w));
}

GradedMap nabla(const LiePresentation& p) {
    const std::size_t n = p.dim_v();
    std::vector<GeneratorSymbol> gens;
    const auto& rel = p.relations();
    for (std::size_t r = 0; r < rel.rows(); ++r) {
        GeneratorSymbol g;
        g.shift = 0;
        for (const auto& [c, a] : rel.row(r))
            g.terms.push_back({SymbolTerm::constant, c, a});
        gens.push_back(std::move(g));
    }
    auto d = delta3(n);
    gens.insert(gens.end(), d.sources().begin(), d.sources().end());
    return GradedMap(n, wedge2_dim(n), std::move(gens));
}

GradedMap nabla_bar(const LiePresentation& p) { return delta3(p.dim_v()).compose_target(beta_matrix(p)); }

GradedDims coker_dims(const GradedMap& m, std::size_t max_degree) {
    GradedDims dims;
    dims.first_degree = 0;
    for (std::size_t q = 0; q <= max_degree; ++q) {
        require_budget(m.estimated_bytes(q), "degree " + std::to_string(q) + " instantiation");
        std::size_t r = 0;
        if (m.weights()) {
            const auto blocks = m.instantiate_blocks(q);
            std::vector<std::size_t> ranks(blocks.size(), 0);
            // Blocks are independent; the sum does not depend on scheduling.
#pragma omp parallel for schedule(dynamic)
            for (std::size_t b = 0; b < blocks.size(); ++b)
                ranks[b] = rank(blocks[b].matrix);
            for (std::size_t x : ranks)
                r += x;
        } else {
            r = rank(m.instantiate(q));
        }
        dims.values.push_back(m.target_size(q) - r);
    }
    return dims;
}

std::optional<std::size_t> nilpotence_order(const GradedDims& dims) {
    std::optional<std::size_t> first;
    for (std::size_t i = 0; i < dims.values.size(); ++i) {
        if (dims.values[i] == 0 && !first)
            first = dims.first_degree + i;
        else if (dims.values[i] != 0 && first)
            throw InconsistencyError("cokernel vanishes in degree " + std::to_string(*first) +
                                     " but not in degree " + std::to_string(dims.first_degree + i));
    }
    return first;
}

std::optional<std::size_t> nilpotence_order(const GradedMap& m, std::size_t max_degree) {
    return nilpotence_order(coker_dims(m, max_degree));
}

std::vector<Rational> TruncatedCokernel::class_of(std::size_t q, std::size_t target_index) const {
    const auto& fc = free_cols.at(q);
    std::vector<Rational> out(fc.size(), Rational(0));
    auto fit = std::lower_bound(fc.begin(), fc.end(), target_index);
    if (fit != fc.end() && *fit == target_index) {
        out[static_cast<std::size_t>(fit - fc.begin())] = 1;
        return out;
    }
    const auto& pv = pivots[q];
    auto pit = std::lower_bound(pv.begin(), pv.end(), target_index);
    if (pit == pv.end() || *pit != target_index)
        throw InvalidArgument("target index out of range");
    // e_c = e_c - row, which lives on free coordinates only (reduced form).
    for (const auto& [c, a] : reducers[q][static_cast<std::size_t>(pit - pv.begin())]) {
        if (c == target_index)
            continue;
        const auto pos = std::lower_bound(fc.begin(), fc.end(), c) - fc.begin();
        out[static_cast<std::size_t>(pos)] = -a;
    }
    return out;
}

TruncatedCokernel truncated_cokernel(const GradedMap& m, std::size_t max_degree) {
    TruncatedCokernel tc;
    tc.dims.first_degree = 0;
    std::size_t total = 0;
    for (std::size_t q = 0; q <= max_degree; ++q) {
        require_budget(m.estimated_bytes(q), "degree " + std::to_string(q) + " instantiation");
        auto e = reduced_row_echelon(m.instantiate(q).transpose());
        std::vector<char> pivot(m.target_size(q), 0);
        for (std::size_t c : e.pivot_cols)
            pivot[c] = 1;
        std::vector<std::size_t> fc;
        for (std::size_t c = 0; c < pivot.size(); ++c)
            if (!pivot[c])
                fc.push_back(c);
        tc.offsets.push_back(total);
        total += fc.size();
        tc.dims.values.push_back(fc.size());
        tc.free_cols.push_back(std::move(fc));
        tc.pivots.push_back(std::move(e.pivot_cols));
        tc.reducers.push_back(std::move(e.rows));
    }

    for (std::size_t k = 0; k < m.base_dim(); ++k) {
        std::vector<Triplet> t;
        for (std::size_t q = 0; q < max_degree; ++q) {
            const auto mult = m.target_multiplication(q, k).transpose();
            const auto& fc = tc.free_cols[q];
            for (std::size_t j = 0; j < fc.size(); ++j)
                for (const auto& [r, one] : mult.row(fc[j])) {
                    const auto cls = tc.class_of(q + 1, r);
                    for (std::size_t i = 0; i < cls.size(); ++i)
                        if (!is_zero(cls[i]))
                            t.emplace_back(tc.offsets[q + 1] + i, tc.offsets[q] + j, one * cls[i]);
                }
        }
        tc.action.push_back(from_triplets(total, total, std::move(t)));
    }
    return tc;
}

} // namespace alexinv
