#include "alexinv/johnson.hpp"

#include "alexinv/budget.hpp"
#include "alexinv/elimination.hpp"
#include "alexinv/errors.hpp"
#include "alexinv/free_lie.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <random>
#include <tuple>

namespace alexinv {

namespace {

using Triplet = std::tuple<std::size_t, std::size_t, Rational>;
using SparseVec = std::map<std::size_t, Rational>;

Weight plus(const Weight& a, const Weight& b) {
    Weight w(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        w[i] = a[i] + b[i];
    return w;
}

HighestWeight two_lambda2(std::size_t g) {
    HighestWeight l(g, 0);
    l[1] = 2;
    return l;
}

void add_to(SparseVec& v, std::size_t i, const Rational& c) {
    if (is_zero(c))
        return;
    auto [it, fresh] = v.emplace(i, c);
    if (!fresh) {
        it->second += c;
        if (is_zero(it->second))
            v.erase(it);
    }
}

} // namespace

SymplecticSpace::SymplecticSpace(std::size_t genus) : g(genus), spec(LieAlgebraSpec::sp(genus)) {
    if (genus == 0)
        throw InvalidArgument("genus must be positive");
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < g; ++i) {
        t.emplace_back(i, g + i, Rational(1));
        t.emplace_back(g + i, i, Rational(-1));
    }
    form = SparseMatrix<Rational>::from_triplets(2 * g, 2 * g, std::move(t));
    for (std::size_t i = 0; i < g; ++i)
        labels.push_back("a" + std::to_string(i + 1));
    for (std::size_t i = 0; i < g; ++i)
        labels.push_back("b" + std::to_string(i + 1));
}

JohnsonData build_johnson(std::size_t g, bool allow_large) {
    if (g < 3)
        throw InvalidArgument("V(lambda_3) needs genus at least 3");
    if (g >= 5 && !allow_large)
        throw BudgetExceeded("genus " + std::to_string(g) + " is beyond the default limit; set allow_large (--allow-large)");

    const SymplecticSpace h(g);
    JohnsonData d{.g = g,
                  .v = fundamental_module(h.spec, 3),
                  .wedge2_v = trivial_module(h.spec),
                  .q_part = {},
                  .trivial = {},
                  .r = {},
                  .r_weights = {},
                  .r_constituents = {},
                  .q = GradedMap(1, 0, {})};
    const std::size_t n = d.v.dimension();
    const std::size_t w2 = wedge2_dim(n);
    // wedge^2 V as a module: one action per basis element, each with a few
    // entries per column, plus the Casimir.
    require_budget((h.spec.rank() + 2) * (2 * h.spec.rank() + 1) * w2 * 8 * 96, "wedge^2 V module");
    require_budget(wedge3_dim(n) * 3 * 64 * 96, "symbol of q");

    d.wedge2_v = exterior_power(d.v, 2);
    d.q_part = isotypic_component(d.wedge2_v, two_lambda2(g));
    d.trivial = isotypic_component(d.wedge2_v, HighestWeight(g, 0));

    // R is the sum of the other Casimir eigenspaces: the image of
    // (C - c_Q)(C - 0) on each weight space.
    const auto cas = casimir_matrix(d.wedge2_v);
    std::vector<std::pair<Weight, std::vector<std::size_t>>> blocks;
    for (auto& [w, cols] : d.wedge2_v.weight_blocks())
        blocks.emplace_back(w, cols);
    std::vector<SparseMatrix<Rational>> images(blocks.size());
    std::vector<std::exception_ptr> errors(blocks.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        try {
            const auto& cols = blocks[b].second;
            const auto c = cas.select(cols, cols);
            auto shift = SparseMatrix<Rational>::identity(cols.size());
            shift *= d.q_part.casimir;
            images[b] = column_space_basis((c - shift) * c);
        } catch (...) {
            errors[b] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    std::vector<Triplet> rt;
    std::size_t k = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const auto& cols = blocks[b].second;
        const auto by_col = images[b].transpose();
        for (std::size_t j = 0; j < by_col.rows(); ++j, ++k) {
            for (const auto& [i, v] : by_col.row(j))
                rt.emplace_back(cols[i], k, v);
            d.r_weights.push_back(blocks[b].first);
        }
    }
    d.r = SparseMatrix<Rational>::from_triplets(w2, k, std::move(rt));
    if (k + d.q_part.basis.cols() + d.trivial.basis.cols() != w2)
        throw InconsistencyError("R, V(2 lambda_2) and V(0) do not add up to wedge^2 V");

    // Constituents of R, with an independent dimension count through the Weyl formula.
    Integer weyl_total = 0;
    for (const auto& hw : highest_weight_vectors(d.wedge2_v)) {
        const auto lam = to_dynkin(h.spec, hw.weight);
        weyl_total += weyl_dim(h.spec, lam);
        if (lam != two_lambda2(g) && lam != HighestWeight(g, 0))
            d.r_constituents.push_back(lam);
    }
    if (weyl_total != static_cast<unsigned long>(w2))
        throw InconsistencyError("Weyl dimensions of the highest weights of wedge^2 V sum to " +
                                 weyl_total.get_str() + ", not " + std::to_string(w2));
    Integer r_total = 0;
    for (const auto& lam : d.r_constituents)
        r_total += weyl_dim(h.spec, lam);
    if (r_total != static_cast<unsigned long>(k))
        throw InconsistencyError("Weyl dimension of R disagrees with the Casimir complement");

    d.q = delta3(n, d.v.weights()).compose_target(d.q_part.coordinates, d.q_part.weights);
    return d;
}

GradedMap build_q(std::size_t g, bool allow_large) { return build_johnson(g, allow_large).q; }

Wedge2Decomposition decompose_wedge2_v(const JohnsonData& d) {
    Wedge2Decomposition out;
    out.genus = d.g;
    out.dim_v = d.v.dimension();
    out.total = d.wedge2_v.dimension();
    out.summands.push_back({"R", std::nullopt, d.r.cols(), std::nullopt});
    out.summands.push_back({"V(2l2)", d.q_part.lambda, d.q_part.basis.cols(), d.q_part.casimir});
    out.summands.push_back({"V(0)", d.trivial.lambda, d.trivial.basis.cols(), d.trivial.casimir});
    out.r_constituents = d.r_constituents;
    return out;
}

Wedge2Decomposition decompose_wedge2_v(std::size_t g, bool allow_large) {
    return decompose_wedge2_v(build_johnson(g, allow_large));
}

JohnsonModuleReport johnson_module_dims(const JohnsonData& d, std::size_t max_degree) {
    JohnsonModuleReport rep;
    rep.genus = d.g;
    rep.dim_v = d.v.dimension();
    rep.dim_q = d.q_part.basis.cols();
    rep.wedge2 = decompose_wedge2_v(d);
    rep.coker_q = coker_dims(d.q, max_degree);
    rep.m = rep.coker_q;
    rep.m.values.at(0) += 1;
    rep.theorem_hypothesis = d.g >= 6;
    return rep;
}

JohnsonModuleReport johnson_module_dims(std::size_t g, std::size_t max_degree, bool allow_large) {
    return johnson_module_dims(build_johnson(g, allow_large), max_degree);
}

LiePresentation kernel_presentation(const JohnsonData& d) {
    const std::size_t n = d.v.dimension();
    auto rows = d.r.transpose();
    const auto z = d.trivial.basis.transpose();
    return LiePresentation(n, vstack<Rational>({&rows, &z}, wedge2_dim(n)));
}

GradedMap kernel_nabla_bar(const JohnsonData& d) {
    const auto k = kernel_presentation(d);
    std::vector<Weight> g2_weights;
    const auto& w2 = d.wedge2_v.weights();
    for (std::size_t c : g2_basis_indices(k))
        g2_weights.push_back(w2.at(c));
    return delta3(k.dim_v(), d.v.weights()).compose_target(beta_matrix(k), std::move(g2_weights));
}

EquivarianceResult q_equivariance_check(const JohnsonData& d, std::size_t degree, std::size_t pairs,
                                        std::uint32_t seed) {
    if (degree == 0)
        throw InvalidArgument("the source of q vanishes in degree 0");
    const std::size_t n = d.v.dimension();
    const auto triples = wedge3_triples(n);
    std::map<std::array<std::size_t, 3>, std::size_t> triple_index;
    for (std::size_t i = 0; i < triples.size(); ++i)
        triple_index.emplace(triples[i], i);

    const MonomialBasis src_mono(n, degree - 1), tgt_mono(n, degree);
    const auto qmat = d.q.instantiate(degree);
    const auto qmod = component_module(d.wedge2_v, d.q_part);
    const std::size_t dq = qmod.dimension();

    // Column -> (generator, monomial).
    std::vector<std::pair<std::size_t, std::size_t>> col_of(d.q.source_size(degree));
    for (std::size_t s = 0; s < triples.size(); ++s)
        for (std::size_t m = 0; m < src_mono.size(); ++m)
            col_of[d.q.source_index(degree, s, m)] = {s, m};

    // x acting on a monomial by the derivation extending x on V.
    auto act_monomial = [](const MonomialBasis& mb, const SparseMatrix<Rational>& xt, std::size_t m) {
        std::vector<std::pair<std::size_t, Rational>> out;
        const auto& e = mb.exponents(m);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0)
                continue;
            for (const auto& [k, c] : xt.row(i)) {
                auto f = e;
                --f[i];
                ++f[k];
                out.emplace_back(mb.index(f), Rational(e[i]) * c);
            }
        }
        return out;
    };

    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> pick_x(0, d.v.actions().size() - 1);
    std::uniform_int_distribution<std::size_t> pick_col(0, col_of.size() - 1);
    std::uniform_int_distribution<int> pick_c(-3, 3);

    EquivarianceResult res;
    for (std::size_t p = 0; p < pairs; ++p) {
        const std::size_t a = pick_x(rng);
        const auto xt = d.v.action(a).transpose();
        const auto xq = qmod.action(a).transpose();

        SparseVec v;
        for (int t = 0; t < 3; ++t) {
            int c = pick_c(rng);
            add_to(v, pick_col(rng), Rational(c == 0 ? 1 : c));
        }

        // x . v in Sym_{degree-1} (x) wedge^3 V.
        SparseVec xv;
        for (const auto& [col, c] : v) {
            const auto [s, m] = col_of[col];
            for (const auto& [m2, c2] : act_monomial(src_mono, xt, m))
                add_to(xv, d.q.source_index(degree, s, m2), c * c2);
            const auto& tr = triples[s];
            for (std::size_t slot = 0; slot < 3; ++slot) {
                for (const auto& [j, c2] : xt.row(tr[slot])) {
                    std::array<std::size_t, 3> img = tr;
                    img[slot] = j;
                    int sign = 1;
                    for (int pass = 0; pass < 2; ++pass)
                        for (std::size_t u = 0; u + 1 < 3; ++u)
                            if (img[u] > img[u + 1]) {
                                std::swap(img[u], img[u + 1]);
                                sign = -sign;
                            }
                    if (img[0] == img[1] || img[1] == img[2])
                        continue;
                    add_to(xv, d.q.source_index(degree, triple_index.at(img), m), Rational(sign) * c * c2);
                }
            }
        }

        auto dense = [](const SparseVec& s, std::size_t size) {
            std::vector<Rational> out(size, Rational(0));
            for (const auto& [i, c] : s)
                out[i] = c;
            return out;
        };
        const auto lhs = qmat.apply(dense(xv, qmat.cols()));
        const auto qv = qmat.apply(dense(v, qmat.cols()));

        // x . q(v) in Sym_degree (x) Q.
        std::vector<Rational> rhs(qmat.rows(), Rational(0));
        for (std::size_t idx = 0; idx < qv.size(); ++idx) {
            if (is_zero(qv[idx]))
                continue;
            const std::size_t m = idx / dq, t = idx % dq;
            for (const auto& [m2, c2] : act_monomial(tgt_mono, xt, m))
                rhs[m2 * dq + t] += qv[idx] * c2;
            for (const auto& [t2, c2] : xq.row(t))
                rhs[m * dq + t2] += qv[idx] * c2;
        }
        ++res.pairs;
        if (lhs != rhs)
            ++res.failures;
    }
    return res;
}

CentralZResult central_z_check(const JohnsonData& d, const std::vector<std::size_t>& which) {
    const std::size_t n = d.v.dimension();
    FreeLieAlgebra lie(n);

    auto from_wedge2 = [&](const SparseMatrix<Rational>& cols, std::size_t j) {
        LieElement e;
        e.degree = 2;
        for (std::size_t i = 0; i < cols.rows(); ++i) {
            const auto v = cols.at(i, j);
            if (is_zero(v))
                continue;
            const auto [a, b] = wedge2_pair(n, i);
            e.coords.emplace(lie.pack({static_cast<unsigned>(a), static_cast<unsigned>(b)}), v);
        }
        return e;
    };

    const auto z = from_wedge2(d.trivial.basis, 0);
    const auto r_cols = d.r.transpose();
    std::vector<LieElement> rels(d.r.cols());
    for (std::size_t j = 0; j < d.r.cols(); ++j) {
        LieElement e;
        e.degree = 2;
        for (const auto& [i, v] : r_cols.row(j)) {
            const auto [a, b] = wedge2_pair(n, i);
            e.coords.emplace(lie.pack({static_cast<unsigned>(a), static_cast<unsigned>(b)}), v);
        }
        rels[j] = std::move(e);
    }

    std::vector<std::size_t> targets = which;
    if (targets.empty())
        for (std::size_t v = 0; v < n; ++v)
            targets.push_back(v);
    for (std::size_t v : targets)
        if (v >= n)
            throw InvalidArgument("V basis index out of range");

    const auto& vw = d.v.weights();
    std::vector<char> inside(targets.size(), 0);
    std::vector<std::exception_ptr> errors(targets.size());
    // [e_u, r] has weight wt(u) + wt(r); only those matching wt(v) can contribute.
#pragma omp parallel for schedule(dynamic)
    for (std::size_t t = 0; t < targets.size(); ++t) {
        try {
            const std::size_t v = targets[t];
            auto target = lie.bracket_with_generator(v, z);
            target *= Rational(-1);
            std::vector<LieElement> gens;
            for (std::size_t u = 0; u < n; ++u)
                for (std::size_t j = 0; j < rels.size(); ++j)
                    if (plus(vw[u], d.r_weights[j]) == vw[v])
                        if (auto b = lie.bracket_with_generator(u, rels[j]); !b.is_zero())
                            gens.push_back(std::move(b));
            if (target.is_zero()) {
                inside[t] = 1;
                continue;
            }
            std::map<std::uint64_t, std::size_t> row_of;
            auto row = [&](std::uint64_t w) { return row_of.emplace(w, row_of.size()).first->second; };
            std::vector<Triplet> trip;
            for (std::size_t c = 0; c < gens.size(); ++c)
                for (const auto& [w, val] : gens[c].coords)
                    trip.emplace_back(row(w), c, val);
            std::vector<std::pair<std::size_t, Rational>> tv;
            for (const auto& [w, val] : target.coords)
                tv.emplace_back(row(w), val);
            std::vector<Rational> rhs(row_of.size(), Rational(0));
            for (const auto& [i, val] : tv)
                rhs[i] = val;
            const auto m = SparseMatrix<Rational>::from_triplets(row_of.size(), gens.size(), std::move(trip));
            inside[t] = solve_membership(m, rhs) ? 1 : 0;
        } catch (...) {
            errors[t] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    CentralZResult res;
    res.checked = targets.size();
    for (std::size_t t = 0; t < targets.size(); ++t)
        if (!inside[t])
            res.failing.push_back(targets[t]);
    res.central = res.failing.empty();
    return res;
}

} // namespace alexinv
