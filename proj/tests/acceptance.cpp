// One PASS/FAIL line per acceptance criterion. Every criterion compares the
// library against something computed independently here or in another module.

#include "alexinv/alex_module.hpp"
#include "alexinv/elimination.hpp"
#include "alexinv/errors.hpp"
#include "alexinv/fox_alex.hpp"
#include "alexinv/free_lie.hpp"
#include "alexinv/johnson.hpp"
#include "alexinv/nilpotent_transport.hpp"
#include "alexinv/quad_lie.hpp"
#include "alexinv/rep_semisimple.hpp"

#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace alexinv;

namespace {

using Matrix = SparseMatrix<Rational>;

Integer binomial(unsigned long n, unsigned long k) {
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

Rational frac(long a, long b) {
    Rational r(a, b);
    r.canonicalize();
    return r;
}

// Weyl dimension formula for sl(n), epsilon coordinates:
// prod_{i<j} (l_i - l_j + j - i) / (j - i).
Rational sl_weyl(const std::vector<long>& l) {
    Rational out(1);
    for (std::size_t i = 0; i < l.size(); ++i)
        for (std::size_t j = i + 1; j < l.size(); ++j)
            out *= frac(l[i] - l[j] + static_cast<long>(j - i), static_cast<long>(j - i));
    return out;
}

// Same for sp(2g): long roots 2 e_i, short roots e_i +- e_j.
Rational sp_weyl(const std::vector<long>& l) {
    const std::size_t g = l.size();
    Rational out(1);
    for (std::size_t i = 0; i < g; ++i) {
        const long ri = static_cast<long>(g - i), li = l[i] + ri;
        out *= frac(li, ri);
        for (std::size_t j = i + 1; j < g; ++j) {
            const long rj = static_cast<long>(g - j), lj = l[j] + rj;
            out *= frac((li - lj) * (li + lj), (ri - rj) * (ri + rj));
        }
    }
    return out;
}

std::vector<long> eps_from_dynkin(const HighestWeight& d) {
    // sp(2g): lambda_k = e_1 + ... + e_k
    std::vector<long> e(d.size(), 0);
    for (std::size_t k = 0; k < d.size(); ++k)
        for (std::size_t i = 0; i <= k; ++i)
            e[i] += d[k];
    return e;
}

std::vector<Weight> unit_weights(std::size_t n) {
    std::vector<Weight> w(n, Weight(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        w[i][i] = 1;
    return w;
}

LiePresentation random_presentation(std::mt19937& rng, std::size_t n, std::size_t r) {
    std::uniform_int_distribution<int> c(-3, 3);
    std::vector<std::vector<Rational>> rows(r, std::vector<Rational>(wedge2_dim(n)));
    for (auto& row : rows)
        for (auto& x : row)
            x = rng() % 2 ? c(rng) : 0;
    return LiePresentation(n, Matrix::from_dense(rows, wedge2_dim(n)));
}

Word random_word(std::mt19937& rng, std::size_t n, std::size_t max_len) {
    std::uniform_int_distribution<int> gen(1, static_cast<int>(n));
    Word w(rng() % (max_len + 1));
    for (int& a : w)
        a = (rng() % 2 ? 1 : -1) * gen(rng);
    return w;
}

// Abelianized Fox derivative straight from the definition
// d(uv) = du + u dv, evaluated letter by letter on t-monomials.
LaurentPoly abelian_fox(const Word& w, std::size_t j, std::size_t n) {
    LaurentPoly out;
    std::vector<long> prefix(n, 0);
    for (int a : w) {
        const std::size_t i = static_cast<std::size_t>(std::abs(a)) - 1;
        if (a > 0) {
            if (i == j)
                out = out + LaurentPoly::monomial(prefix, Rational(1));
            ++prefix[i];
        } else {
            --prefix[i];
            if (i == j)
                out = out - LaurentPoly::monomial(prefix, Rational(1));
        }
    }
    return out;
}

// Least k with every product of k operators (A_i) zero, up to `limit`.
std::optional<std::size_t> product_exponent(const std::vector<Matrix>& ops, std::size_t dim, std::size_t limit) {
    std::vector<Matrix> layer{Matrix::identity(dim)};
    for (std::size_t k = 0; k <= limit; ++k) {
        bool all_zero = true;
        for (const auto& m : layer)
            all_zero = all_zero && m.is_zero_matrix();
        if (all_zero)
            return k;
        std::vector<Matrix> next;
        for (const auto& m : layer)
            if (!m.is_zero_matrix())
                for (const auto& a : ops)
                    next.push_back(a * m);
        layer = std::move(next);
    }
    return std::nullopt;
}

std::string run_command(const std::string& cmd) {
    FILE* p = popen(cmd.c_str(), "r");
    if (!p)
        return "<popen failed>";
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0)
        out.append(buf, got);
    const int status = pclose(p);
    return out + "\n<status " + std::to_string(status) + ">";
}

// ------------------------------------------------------------ criteria

bool chen_ranks(std::ostream& log) {
    std::size_t cases = 0, bad = 0;
    for (std::size_t n = 2; n <= 4; ++n) {
        const auto computed = coker_dims(delta3(n, unit_weights(n)), 5);
        const auto free_nabla = coker_dims(nabla(LiePresentation::free(n)), 5);
        FreeLieAlgebra lie(n);
        for (std::size_t q = 0; q <= 5; ++q) {
            const Integer closed = binomial(q + n, q + 2) * static_cast<unsigned long>(q + 1);
            const bool ok = closed == static_cast<unsigned long>(computed.at(q)) &&
                            free_nabla.at(q) == computed.at(q) &&
                            bb_direct(lie, LiePresentation::free(n), q).dimension == computed.at(q);
            ++cases;
            if (!ok) {
                ++bad;
                log << "  n=" << n << " q=" << q << " closed=" << closed << " coker=" << computed.at(q) << '\n';
            }
        }
    }
    log << "  " << cases << " (n, q) pairs\n";
    return bad == 0;
}

bool chen_weyl(std::ostream& log) {
    bool ok = true;
    for (std::size_t n = 2; n <= 4; ++n) {
        const auto tc = truncated_cokernel(delta3(n, unit_weights(n)), 4);
        const auto spec = LieAlgebraSpec::sl(n);
        for (std::size_t q = 0; q <= 4; ++q) {
            std::vector<long> eps(n, 0);
            eps[0] = static_cast<long>(q) + 1;
            eps[1] = 1;
            Weight w(eps.begin(), eps.end());
            const Integer lib = weyl_dim(spec, to_dynkin(spec, w));
            const bool dims = sl_weyl(eps) == Rational(lib) && lib == static_cast<unsigned long>(tc.dims.at(q));

            // e_1^q (x) (e_1 ^ e_2) is not in the image of delta_3.
            std::vector<unsigned> e(n, 0);
            e[0] = static_cast<unsigned>(q);
            const std::size_t mono = MonomialBasis(n, q).index(e);
            const auto m = delta3(n);
            const std::size_t target = m.target_index(mono, wedge2_index(n, 0, 1));
            const auto cls = tc.class_of(q, target);
            bool nonzero = false;
            for (const auto& c : cls)
                nonzero = nonzero || !is_zero(c);
            bool outside = true;
            if (q <= 3) {
                const Matrix img = m.instantiate(q);
                const Matrix vec = Matrix::from_triplets(img.rows(), 1, {{target, 0, Rational(1)}});
                const std::vector<const Matrix*> parts{&img, &vec};
                outside = reference::rank(hstack<Rational>(parts, img.rows())) == reference::rank(img) + 1;
            }
            if (!(dims && nonzero && outside)) {
                ok = false;
                log << "  n=" << n << " q=" << q << " weyl=" << lib << " coker=" << tc.dims.at(q)
                    << " nonzero=" << nonzero << " outside=" << outside << '\n';
            }
        }
    }
    return ok;
}

bool three_routes(std::ostream& log) {
    std::mt19937 rng(20240601);
    std::size_t cases = 0, bad = 0;
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t) % 3;
        const std::size_t r = 1 + rng() % std::min<std::size_t>(4, wedge2_dim(n));
        const auto p = random_presentation(rng, n, r);
        const std::size_t N = 4;
        const auto a = coker_dims(nabla(p), N);
        const auto b = coker_dims(nabla_bar(p), N);
        FreeLieAlgebra lie(n);
        bool ok = a == b;
        for (std::size_t q = 0; q <= N; ++q)
            ok = ok && bb_direct(lie, p, q).dimension == a.at(q);
        ++cases;
        if (!ok) {
            ++bad;
            log << "  presentation " << t << " disagrees\n";
        }
    }
    log << "  " << cases << " random presentations\n";
    return bad == 0 && cases >= 50;
}

bool johnson_decomposition(std::ostream& log) {
    bool ok = true;
    for (std::size_t g : {3u, 4u}) {
        const auto d = build_johnson(g);
        const auto dec = decompose_wedge2_v(d);
        const std::size_t dim_v = binomial(2 * g, 3).get_ui() - 2 * g;
        const std::size_t w2 = dim_v * (dim_v - 1) / 2;
        std::vector<long> two_l2(g, 0);
        two_l2[0] = two_l2[1] = 2;
        const Rational q_weyl = sp_weyl(two_l2);
        Rational r_weyl(0);
        for (const auto& l : dec.r_constituents)
            r_weyl += sp_weyl(eps_from_dynkin(l));
        const bool good = dec.dim_v == dim_v && dec.total == w2 &&
                          dec.summands[0].dimension + dec.summands[1].dimension + dec.summands[2].dimension == w2 &&
                          Rational(static_cast<long>(dec.summands[1].dimension)) == q_weyl &&
                          dec.summands[2].dimension == 1 &&
                          r_weyl == Rational(static_cast<long>(dec.summands[0].dimension));
        log << "  g=" << g << " V=" << dim_v << " wedge2=" << dec.summands[0].dimension << "+"
            << dec.summands[1].dimension << "+" << dec.summands[2].dimension << " weyl(2l2)=" << q_weyl << '\n';
        ok = ok && good;
    }
    return ok;
}

bool johnson_module(std::ostream& log) {
    bool ok = true;
    for (std::size_t g : {3u, 4u}) {
        const auto d = build_johnson(g);
        const auto rep = johnson_module_dims(d, 0);
        std::vector<long> two_l2(g, 0);
        two_l2[0] = two_l2[1] = 2;
        const bool m0 = Rational(static_cast<long>(rep.m.at(0))) == sp_weyl(two_l2) + 1;
        const auto eq = q_equivariance_check(d, 1, 20, 7 + g);
        log << "  g=" << g << " M_0=" << rep.m.at(0) << " equivariance " << eq.pairs - eq.failures << "/" << eq.pairs
            << '\n';
        ok = ok && m0 && eq.pairs >= 20 && eq.failures == 0;
    }
    return ok;
}

bool nilpotence_exponents(std::ostream& log) {
    std::mt19937 rng(77);
    std::size_t pairs = 0, bad = 0;
    for (int t = 0; t < 24; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t) % 2;
        const auto p = random_presentation(rng, n, 1 + rng() % wedge2_dim(n));
        const std::size_t N = 1 + static_cast<std::size_t>(t) % 3;
        const auto tc = truncated_cokernel(nabla(p), N);
        const auto sym = sym_module(tc);
        const auto laur = exp_transport(sym);
        const auto back = log_transport(laur);
        bool ok = true;
        for (std::size_t i = 0; i < sym.action.size(); ++i)
            ok = ok && back.action[i] == sym.action[i] && exp_nilpotent(back.action[i]) == laur.action[i];

        // The truncation is a graded module that vanishes past N.
        auto dims = tc.dims;
        dims.values.push_back(0);
        const auto cmp = annihilator_exponent_match(laur, dims);
        std::vector<Matrix> minus_one;
        for (const auto& a : laur.action)
            minus_one.push_back(a - Matrix::identity(laur.dimension));
        const auto direct = product_exponent(minus_one, laur.dimension, N + 2);
        std::size_t first_zero = 0;
        while (dims.values[first_zero] != 0)
            ++first_zero;
        ok = ok && cmp.status == ExponentMatch::agree && direct && cmp.module_exponent == direct &&
             *direct == first_zero;
        ++pairs;
        if (!ok) {
            ++bad;
            log << "  module " << t << " fails\n";
        }
    }
    log << "  " << pairs << " (module, dims) pairs\n";
    return bad == 0 && pairs >= 20;
}

bool characteristic_varieties(std::ostream& log) {
    std::mt19937 rng(31337);
    std::size_t checked = 0, bad = 0;
    while (checked < 100) {
        const std::size_t n = 2 + checked % 3;
        std::ostringstream text;
        for (std::size_t i = 0; i < n; ++i) {
            if (i)
                text << ',';
            if (rng() % 2) {
                const unsigned m = 2 + rng() % 5;
                const unsigned j = rng() % m;
                text << "zeta_" << m << '^' << j;
            } else {
                const long num = static_cast<long>(rng() % 7) + 1, den = static_cast<long>(rng() % 4) + 1;
                text << (rng() % 2 ? "-" : "") << num << '/' << den;
            }
        }
        const auto rho = parse_character(text.str());
        if (rho.is_trivial())
            continue;
        const auto free = GroupPresentation::free_group(n);
        const bool f_ok = twisted_h1_dim(free, rho) == n - 1 && cv_membership(free, rho, 1) &&
                          cv_membership(free, rho, n - 1) && !cv_membership(free, rho, n);
        bool z_ok = true;
        if (n == 2)
            z_ok = !cv_membership(GroupPresentation::free_abelian(2), rho, 1);
        ++checked;
        if (!(f_ok && z_ok)) {
            ++bad;
            log << "  character " << rho.to_string() << " fails\n";
        }
    }
    bool sweep_ok = true;
    for (unsigned m = 2; m <= 4; ++m) {
        const auto hits = torsion_sweep(GroupPresentation::free_abelian(2), m, 1);
        sweep_ok = sweep_ok && hits.size() == 1 && hits[0].is_trivial();
    }
    log << "  " << checked << " nontrivial characters\n";
    return bad == 0 && sweep_ok;
}

bool fox_identity(std::ostream& log) {
    std::mt19937 rng(4242);
    std::size_t bad = 0;
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 1 + static_cast<std::size_t>(t) % 4;
        const Word w = random_word(rng, n, 20);
        const Word red = free_reduce(w);
        GroupRingElement lhs;
        bool abelian_ok = true;
        for (std::size_t j = 0; j < n; ++j) {
            GroupRingElement xm1;
            xm1[{static_cast<int>(j) + 1}] = 1;
            xm1[{}] = -1;
            const auto dj = fox_derivative(w, j);
            lhs = group_ring_sum(lhs, group_ring_product(dj, xm1));
            abelian_ok = abelian_ok && abelianize(dj, n) == abelian_fox(w, j, n);
        }
        GroupRingElement rhs;
        rhs[red] += 1;
        rhs[{}] -= 1;
        std::erase_if(rhs, [](const auto& e) { return is_zero(e.second); });
        if (!(lhs == rhs && abelian_ok))
            ++bad;
    }
    log << "  200 words, " << bad << " failures\n";
    return bad == 0;
}

bool cli_deterministic(std::ostream& log) {
    const std::string cli = ALEXINV_CLI_PATH;
    const std::string data = ALEXINV_DATA_DIR;
    const std::vector<std::string> cmds = {
        cli + " witt -n 3 -q 6",
        cli + " chen -n 3 -q 2",
        cli + " decompose --genus 3",
        cli + " nilpotence --module " + data + "/unipotent.json",
        cli + " nilpotence --presentation " + data + "/heisenberg.json --max-degree 2 --csv",
        cli + " bb --presentation " + data + "/free3.json --max-degree 2 --method direct",
        cli + " bb --presentation " + data + "/one_relator3.json --max-degree 3 --method nabla-bar",
        cli + " johnson --genus 3 --max-degree 1 --central-z",
        cli + " cv --presentation " + data + "/z2.json --torsion 4 --depth 1",
        cli + " fox --presentation " + data + "/trefoil.json --csv",
        cli + " oracle-check --seed 5 --presentations 12",
    };
    bool ok = true;
    for (const auto& c : cmds) {
        const std::string a = run_command(c + " 2>&1"), b = run_command(c + " 2>&1");
        const bool same = a == b && a.find("<status 0>") != std::string::npos;
        if (!same)
            log << "  differs or failed: " << c << '\n';
        ok = ok && same;
    }
    return ok;
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<bool(std::ostream&)>>> criteria = {
        {"chen ranks of free groups, n = 2..4, q = 0..5", chen_ranks},
        {"coker delta_3 is V(q lambda_1 + lambda_2) with e_1^q (x) e_1^e_2 nonzero", chen_weyl},
        {"nabla, nabla-bar and direct quotient agree on random presentations", three_routes},
        {"wedge^2 V = R + V(2 lambda_2) + C for g = 3, 4 with Weyl checks", johnson_decomposition},
        {"M_0 = 1 + dim V(2 lambda_2) and q is equivariant", johnson_module},
        {"annihilator exponent matches vanishing degree; exp/log round trips", nilpotence_exponents},
        {"characteristic varieties of free and free abelian groups", characteristic_varieties},
        {"Fox fundamental identity", fox_identity},
        {"CLI output is byte-identical across runs", cli_deterministic},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::ostringstream log;
        bool ok = false;
        try {
            ok = criteria[i].second(log);
        } catch (const std::exception& e) {
            log << "  exception: " << e.what() << '\n';
        }
        std::cout << (ok ? "PASS" : "FAIL") << ' ' << i + 1 << ": " << criteria[i].first << '\n' << log.str();
        failures += ok ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
