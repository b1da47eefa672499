#include "oracle_check.hpp"

#include "alexinv/alex_module.hpp"
#include "alexinv/fox_alex.hpp"
#include "alexinv/free_lie.hpp"
#include "alexinv/johnson.hpp"
#include "alexinv/nilpotent_transport.hpp"
#include "alexinv/quad_lie.hpp"
#include "alexinv/rep_semisimple.hpp"

#include <random>
#include <string>

namespace alexinv::cli {

namespace {

using nlohmann::ordered_json;

struct Tally {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;

    void check(bool ok) {
        ++cases;
        if (!ok)
            ++failures;
    }
    ordered_json json() const { return {{"name", name}, {"cases", cases}, {"failures", failures}}; }
};

Integer binomial(unsigned long n, unsigned long k) {
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

std::vector<Weight> unit_weights(std::size_t n) {
    std::vector<Weight> w(n, Weight(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        w[i][i] = 1;
    return w;
}

LiePresentation random_presentation(std::mt19937& rng, std::size_t n, std::size_t r) {
    std::uniform_int_distribution<int> c(-2, 2);
    std::vector<std::vector<Rational>> rows(r, std::vector<Rational>(wedge2_dim(n)));
    for (auto& row : rows)
        for (auto& x : row)
            x = (rng() % 3 == 0) ? c(rng) : 0;
    return LiePresentation(n, SparseMatrix<Rational>::from_dense(rows, wedge2_dim(n)));
}

} // namespace

ordered_json run_oracle_check(std::uint32_t seed, std::size_t presentations) {
    std::mt19937 rng(seed);
    std::vector<Tally> tallies;

    Tally chen{"chen_closed_form_vs_coker_vs_weyl"};
    for (std::size_t n = 2; n <= 4; ++n) {
        const auto dims = coker_dims(delta3(n, unit_weights(n)), 4);
        for (std::size_t q = 0; q <= 4; ++q) {
            const Integer closed = binomial(q + n, q + 2) * static_cast<unsigned long>(q + 1);
            Weight w(n, 0);
            w[0] = static_cast<int>(q) + 1;
            w[1] = 1;
            const auto spec = LieAlgebraSpec::sl(n);
            const Integer weyl = weyl_dim(spec, to_dynkin(spec, w));
            chen.check(closed == static_cast<unsigned long>(dims.at(q)) && weyl == closed);
        }
    }
    tallies.push_back(chen);

    Tally pres{"nabla_vs_nabla_bar_vs_direct"};
    for (std::size_t t = 0; t < presentations; ++t) {
        const std::size_t n = 2 + t % 3;
        const auto p = random_presentation(rng, n, 1 + rng() % std::min<std::size_t>(4, wedge2_dim(n)));
        const std::size_t N = n == 4 ? 2 : 3;
        const auto a = coker_dims(nabla(p), N);
        const auto b = coker_dims(nabla_bar(p), N);
        FreeLieAlgebra lie(n);
        bool ok = a == b;
        for (std::size_t q = 0; q <= N; ++q)
            ok = ok && bb_direct(lie, p, q).dimension == a.at(q);
        pres.check(ok);
    }
    tallies.push_back(pres);

    Tally fox{"fox_fundamental_identity"};
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 1 + static_cast<std::size_t>(t) % 4;
        std::uniform_int_distribution<int> gen(1, static_cast<int>(n));
        Word w(rng() % 21);
        for (int& a : w)
            a = (rng() % 2 ? 1 : -1) * gen(rng);
        w = free_reduce(w);
        GroupRingElement lhs;
        for (std::size_t j = 0; j < n; ++j) {
            GroupRingElement xm1;
            xm1[{static_cast<int>(j) + 1}] = 1;
            xm1[{}] = -1;
            lhs = group_ring_sum(lhs, group_ring_product(fox_derivative(w, j), xm1));
        }
        GroupRingElement rhs;
        rhs[w] += 1;
        rhs[{}] -= 1;
        std::erase_if(rhs, [](const auto& e) { return is_zero(e.second); });
        fox.check(lhs == rhs);
    }
    tallies.push_back(fox);

    Tally johnson{"johnson_genus3"};
    {
        const auto d = build_johnson(3);
        const auto dec = decompose_wedge2_v(d);
        johnson.check(d.v.dimension() == 14);
        johnson.check(dec.summands[0].dimension == 0 && dec.summands[1].dimension == 90 &&
                      dec.summands[2].dimension == 1);
        HighestWeight l(3, 0);
        l[1] = 2;
        johnson.check(weyl_dim(LieAlgebraSpec::sp(3), l) == 90);
        johnson.check(coker_dims(d.q, 1) == coker_dims(kernel_nabla_bar(d), 1));
        johnson.check(q_equivariance_check(d, 1, 20, seed).failures == 0);
    }
    tallies.push_back(johnson);

    Tally nil{"exp_log_transport_and_exponents"};
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t) % 2;
        const auto p = random_presentation(rng, n, 1 + rng() % wedge2_dim(n));
        const std::size_t N = 1 + static_cast<std::size_t>(t) % 3;
        const auto tc = truncated_cokernel(nabla(p), N);
        const auto sym = sym_module(tc);
        const auto laur = exp_transport(sym);
        const auto back = log_transport(laur);
        bool ok = true;
        for (std::size_t i = 0; i < sym.action.size(); ++i)
            ok = ok && back.action[i] == sym.action[i];
        auto dims = tc.dims;
        dims.values.push_back(0);
        ok = ok && annihilator_exponent_match(laur, dims).status == ExponentMatch::agree;
        nil.check(ok);
    }
    tallies.push_back(nil);

    ordered_json out;
    out["seed"] = seed;
    out["checks"] = ordered_json::array();
    bool ok = true;
    for (const auto& t : tallies) {
        out["checks"].push_back(t.json());
        ok = ok && t.failures == 0;
    }
    out["ok"] = ok;
    return out;
}

} // namespace alexinv::cli
