#include "alexinv/fox_alex.hpp"

#include "alexinv/elimination.hpp"
#include "alexinv/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <numeric>
#include <sstream>

namespace alexinv {

namespace {

void add_term(std::map<std::vector<long>, Rational>& terms, const std::vector<long>& e, const Rational& c) {
    if (is_zero(c))
        return;
    auto [it, fresh] = terms.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (is_zero(it->second))
            terms.erase(it);
    }
}

void add_term(GroupRingElement& x, const Word& w, const Rational& c) {
    if (is_zero(c))
        return;
    auto [it, fresh] = x.emplace(w, c);
    if (!fresh) {
        it->second += c;
        if (is_zero(it->second))
            x.erase(it);
    }
}

std::size_t num_vars(const LaurentPoly& p) { return p.terms.empty() ? 0 : p.terms.begin()->first.size(); }

std::vector<std::pair<long, long>> exponent_box(const LaurentPoly& p) {
    const std::size_t n = num_vars(p);
    std::vector<std::pair<long, long>> box(n, {0, 0});
    bool first = true;
    for (const auto& [e, c] : p.terms) {
        for (std::size_t i = 0; i < n; ++i) {
            if (first) {
                box[i] = {e[i], e[i]};
            } else {
                box[i].first = std::min(box[i].first, e[i]);
                box[i].second = std::max(box[i].second, e[i]);
            }
        }
        first = false;
    }
    return box;
}

// dim H_1 from an already computed Alexander matrix.
std::size_t h1_dim(const GroupPresentation& p, const LaurentMatrix& a, const Character& rho) {
    SparseMatrix<Cyclotomic> m(a.rows, a.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j)
            if (!a.entries[i][j].is_zero())
                m.set(i, j, a.entries[i][j].evaluate(rho.values));
    const std::size_t r = rank(m);
    const std::size_t n = p.num_generators;
    if (rho.is_trivial())
        return n - r;
    return n == 0 ? 0 : n - 1 - r;
}

void check_character(const GroupPresentation& p, const Character& rho) {
    if (rho.values.size() != p.num_generators)
        throw InvalidArgument("character has " + std::to_string(rho.values.size()) + " values for " +
                              std::to_string(p.num_generators) + " generators");
    for (const auto& v : rho.values)
        if (v.is_zero())
            throw InvalidArgument("character values must be nonzero");
    if (!is_group_character(p, rho))
        throw InvalidArgument("not a character of the group: some relator does not evaluate to 1");
}

Cyclotomic evaluate_exponents(const std::vector<Cyclotomic>& point, const std::vector<long>& e) {
    Cyclotomic out(1);
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0)
            out *= point[i].pow(e[i]);
    return out;
}

} // namespace

Word free_reduce(const Word& w) {
    Word out;
    for (int a : w) {
        if (a == 0)
            throw InvalidArgument("letter 0 is not allowed");
        if (!out.empty() && out.back() == -a)
            out.pop_back();
        else
            out.push_back(a);
    }
    return out;
}

Word inverse_word(const Word& w) {
    Word out(w.rbegin(), w.rend());
    for (int& a : out)
        a = -a;
    return out;
}

Word cyclic_reduce(const Word& w) {
    Word r = free_reduce(w);
    std::size_t lo = 0, hi = r.size();
    while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
        ++lo;
        --hi;
    }
    return Word(r.begin() + static_cast<long>(lo), r.begin() + static_cast<long>(hi));
}

GroupPresentation::GroupPresentation(std::size_t n, std::vector<Word> rels) : num_generators(n) {
    for (auto& r : rels) {
        for (int a : r)
            if (a == 0 || static_cast<std::size_t>(std::abs(a)) > n)
                throw InvalidArgument("relator letter " + std::to_string(a) + " out of range for " +
                                      std::to_string(n) + " generators");
        relators.push_back(free_reduce(r));
    }
}

GroupPresentation GroupPresentation::free_group(std::size_t n) { return GroupPresentation(n, {}); }

GroupPresentation GroupPresentation::free_abelian(std::size_t n) {
    std::vector<Word> rels;
    for (int i = 1; i <= static_cast<int>(n); ++i)
        for (int j = i + 1; j <= static_cast<int>(n); ++j)
            rels.push_back({i, j, -i, -j});
    return GroupPresentation(n, std::move(rels));
}

GroupPresentation normalize(const GroupPresentation& p) {
    std::vector<Word> out;
    for (const auto& r : p.relators) {
        const Word c = cyclic_reduce(r);
        if (c.empty())
            continue;
        Word best;
        for (const Word& base : {c, inverse_word(c)}) {
            for (std::size_t s = 0; s < base.size(); ++s) {
                Word rot(base.begin() + static_cast<long>(s), base.end());
                rot.insert(rot.end(), base.begin(), base.begin() + static_cast<long>(s));
                if (best.empty() || rot < best)
                    best = std::move(rot);
            }
        }
        out.push_back(std::move(best));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    GroupPresentation q;
    q.num_generators = p.num_generators;
    q.relators = std::move(out);
    return q;
}

GroupRingElement group_ring_product(const GroupRingElement& a, const GroupRingElement& b) {
    GroupRingElement out;
    for (const auto& [u, x] : a)
        for (const auto& [v, y] : b) {
            Word w = u;
            w.insert(w.end(), v.begin(), v.end());
            add_term(out, free_reduce(w), x * y);
        }
    return out;
}

GroupRingElement group_ring_sum(const GroupRingElement& a, const GroupRingElement& b) {
    GroupRingElement out = a;
    for (const auto& [w, c] : b)
        add_term(out, w, c);
    return out;
}

GroupRingElement fox_derivative(const Word& w, std::size_t j) {
    const Word r = free_reduce(w);
    const int x = static_cast<int>(j) + 1;
    GroupRingElement out;
    for (std::size_t p = 0; p < r.size(); ++p) {
        if (r[p] == x)
            add_term(out, Word(r.begin(), r.begin() + static_cast<long>(p)), Rational(1));
        else if (r[p] == -x)
            add_term(out, Word(r.begin(), r.begin() + static_cast<long>(p) + 1), Rational(-1));
    }
    return out;
}

LaurentPoly LaurentPoly::constant(std::size_t n, const Rational& c) {
    return monomial(std::vector<long>(n, 0), c);
}

LaurentPoly LaurentPoly::monomial(const std::vector<long>& e, const Rational& c) {
    LaurentPoly p;
    add_term(p.terms, e, c);
    return p;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms)
        add_term(terms, e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms)
        add_term(terms, e, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    for (const auto& [e, x] : a.terms)
        for (const auto& [f, y] : b.terms) {
            std::vector<long> s(e.size());
            for (std::size_t i = 0; i < e.size(); ++i)
                s[i] = e[i] + f[i];
            add_term(out.terms, s, x * y);
        }
    return out;
}

Cyclotomic LaurentPoly::evaluate(const std::vector<Cyclotomic>& point) const {
    Cyclotomic out(0);
    for (const auto& [e, c] : terms) {
        if (e.size() != point.size())
            throw InvalidArgument("evaluation point has the wrong number of coordinates");
        out += evaluate_exponents(point, e) * Cyclotomic(c);
    }
    return out;
}

std::string LaurentPoly::to_string() const {
    if (terms.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms) {
        const bool unit = std::all_of(e.begin(), e.end(), [](long x) { return x == 0; });
        Rational a = abs(c);
        if (first)
            os << (sgn(c) < 0 ? "-" : "");
        else
            os << (sgn(c) < 0 ? " - " : " + ");
        first = false;
        bool need_star = false;
        if (unit || a != 1) {
            os << alexinv::to_string(a);
            need_star = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0)
                continue;
            os << (need_star ? "*" : "") << 't' << i + 1;
            if (e[i] != 1)
                os << '^' << e[i];
            need_star = true;
        }
    }
    return os.str();
}

LaurentPoly exact_divide(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero())
        throw InvalidArgument("division by the zero Laurent polynomial");
    if (a.is_zero())
        return a;
    const std::size_t n = num_vars(a);
    if (num_vars(b) != n)
        throw InvalidArgument("Laurent polynomials in different numbers of variables");
    // Per variable, the extreme exponents of a product add up, which confines
    // every exponent of the quotient to a finite box.
    const auto ba = exponent_box(a), bb = exponent_box(b);
    const auto& [lb, lc] = *b.terms.rbegin();
    LaurentPoly q, rem = a;
    while (!rem.is_zero()) {
        const auto& [le, c] = *rem.terms.rbegin();
        std::vector<long> e(n);
        for (std::size_t i = 0; i < n; ++i) {
            e[i] = le[i] - lb[i];
            if (e[i] < ba[i].first - bb[i].first || e[i] > ba[i].second - bb[i].second)
                throw InconsistencyError("Laurent division is not exact");
        }
        const auto t = LaurentPoly::monomial(e, c / lc);
        q += t;
        rem -= t * b;
    }
    return q;
}

std::vector<long> exponent_sums(const Word& w, std::size_t n) {
    std::vector<long> e(n, 0);
    for (int a : w) {
        const std::size_t i = static_cast<std::size_t>(std::abs(a)) - 1;
        if (a == 0 || i >= n)
            throw InvalidArgument("letter out of range");
        e[i] += a > 0 ? 1 : -1;
    }
    return e;
}

LaurentPoly abelianize(const GroupRingElement& x, std::size_t n) {
    LaurentPoly out;
    for (const auto& [w, c] : x)
        add_term(out.terms, exponent_sums(w, n), c);
    return out;
}

LaurentMatrix alexander_matrix(const GroupPresentation& p) {
    LaurentMatrix a;
    a.rows = p.relators.size();
    a.cols = p.num_generators;
    a.entries.assign(a.rows, std::vector<LaurentPoly>(a.cols));
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j)
            a.entries[i][j] = abelianize(fox_derivative(p.relators[i], j), a.cols);
    return a;
}

std::size_t generic_rank(const LaurentMatrix& a) {
    auto m = a.entries;
    if (a.rows == 0 || a.cols == 0)
        return 0;
    const std::size_t n = [&] {
        for (const auto& row : m)
            for (const auto& x : row)
                if (!x.is_zero())
                    return num_vars(x);
        return std::size_t(0);
    }();
    LaurentPoly prev = LaurentPoly::constant(n, Rational(1));
    std::size_t r = 0;
    for (std::size_t col = 0; col < a.cols && r < a.rows; ++col) {
        std::size_t piv = r;
        while (piv < a.rows && m[piv][col].is_zero())
            ++piv;
        if (piv == a.rows)
            continue;
        std::swap(m[piv], m[r]);
        for (std::size_t i = r + 1; i < a.rows; ++i) {
            for (std::size_t j = col + 1; j < a.cols; ++j)
                m[i][j] = exact_divide(m[r][col] * m[i][j] - m[i][col] * m[r][j], prev);
            m[i][col] = LaurentPoly{};
        }
        prev = m[r][col];
        ++r;
    }
    return r;
}

bool Character::is_trivial() const {
    return std::all_of(values.begin(), values.end(), [](const Cyclotomic& v) { return v == Cyclotomic(1); });
}

std::string Character::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0)
            out += ',';
        out += tokens.size() == values.size() ? tokens[i] : values[i].to_string();
    }
    return out;
}

Character parse_character(std::string_view text) {
    Character rho;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string_view::npos)
            end = text.size();
        std::string tok(text.substr(start, end - start));
        tok.erase(0, tok.find_first_not_of(" \t"));
        tok.erase(tok.find_last_not_of(" \t") + 1);
        if (tok.empty())
            throw InvalidArgument("empty character value");
        if (tok.rfind("zeta_", 0) == 0) {
            const std::string body = tok.substr(5);
            const auto caret = body.find('^');
            const std::string ms = body.substr(0, caret);
            const std::string js = caret == std::string::npos ? "1" : body.substr(caret + 1);
            char* stop = nullptr;
            const long m = std::strtol(ms.c_str(), &stop, 10);
            if (ms.empty() || *stop != '\0' || m < 1 || m > 100000)
                throw InvalidArgument("bad root of unity order in '" + tok + "'");
            const long j = std::strtol(js.c_str(), &stop, 10);
            if (js.empty() || *stop != '\0')
                throw InvalidArgument("bad exponent in '" + tok + "'");
            rho.values.push_back(Cyclotomic::zeta(static_cast<unsigned>(m), j));
        } else {
            const Rational r = parse_rational(tok);
            if (is_zero(r))
                throw InvalidArgument("character values must be nonzero");
            rho.values.emplace_back(r);
        }
        rho.tokens.push_back(tok);
        if (end == text.size())
            break;
        start = end + 1;
    }
    return rho;
}

bool is_group_character(const GroupPresentation& p, const Character& rho) {
    if (rho.values.size() != p.num_generators)
        return false;
    for (const auto& r : p.relators)
        if (!(evaluate_exponents(rho.values, exponent_sums(r, p.num_generators)) == Cyclotomic(1)))
            return false;
    return true;
}

std::size_t twisted_h1_dim(const GroupPresentation& p, const Character& rho) {
    check_character(p, rho);
    return h1_dim(p, alexander_matrix(p), rho);
}

bool cv_membership(const GroupPresentation& p, const Character& rho, std::size_t k) {
    return twisted_h1_dim(p, rho) >= k;
}

std::vector<std::vector<Integer>> integer_kernel(const std::vector<std::vector<Integer>>& rows, std::size_t cols) {
    // Column operations on A, mirrored on U = identity; once A is in column
    // echelon form, the columns of U above the zero columns of A span ker A over Z.
    auto a = rows;
    for (const auto& r : a)
        if (r.size() != cols)
            throw InvalidArgument("ragged integer matrix");
    std::vector<std::vector<Integer>> u(cols, std::vector<Integer>(cols, 0));
    for (std::size_t i = 0; i < cols; ++i)
        u[i][i] = 1;
    auto col_op = [&](std::size_t p, std::size_t q, const Integer& s, const Integer& t, const Integer& x,
                      const Integer& y) {
        // (col p, col q) <- (s p + t q, x p + y q)
        for (auto* mat : {&a, &u})
            for (auto& r : *mat) {
                Integer np = s * r[p] + t * r[q];
                Integer nq = x * r[p] + y * r[q];
                r[p] = np;
                r[q] = nq;
            }
    };
    std::size_t k = 0;
    for (std::size_t i = 0; i < a.size() && k < cols; ++i) {
        for (std::size_t j = k + 1; j < cols; ++j) {
            if (a[i][j] == 0)
                continue;
            Integer g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a[i][k].get_mpz_t(), a[i][j].get_mpz_t());
            const Integer x = -a[i][j] / g, y = a[i][k] / g;
            col_op(k, j, s, t, x, y);
        }
        if (a[i][k] != 0)
            ++k;
    }
    std::vector<std::vector<Integer>> out;
    for (std::size_t c = k; c < cols; ++c) {
        std::vector<Integer> v(cols);
        for (std::size_t r = 0; r < cols; ++r)
            v[r] = u[r][c];
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<std::vector<Integer>> torsion_lattice(const GroupPresentation& p) {
    const std::size_t n = p.num_generators;
    std::vector<std::vector<Rational>> e;
    for (const auto& r : p.relators) {
        const auto s = exponent_sums(r, n);
        e.emplace_back(s.begin(), s.end());
    }
    const auto kernel = kernel_basis(SparseMatrix<Rational>::from_dense(e, n));
    std::vector<std::vector<Integer>> k_rows;
    for (const auto& v : kernel) {
        Integer l = 1;
        for (const auto& x : v)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
        std::vector<Integer> row(n);
        for (std::size_t i = 0; i < n; ++i) {
            Rational s = v[i] * Rational(l);
            row[i] = s.get_num();
        }
        k_rows.push_back(std::move(row));
    }
    return integer_kernel(k_rows, n);
}

bool in_identity_component(const GroupPresentation& p, const Character& rho) {
    check_character(p, rho);
    for (const auto& v : torsion_lattice(p)) {
        std::vector<long> e(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].fits_slong_p())
                throw InvalidArgument("torsion lattice entry too large");
            e[i] = v[i].get_si();
        }
        if (!(evaluate_exponents(rho.values, e) == Cyclotomic(1)))
            return false;
    }
    return true;
}

bool cv_membership_restricted(const GroupPresentation& p, const Character& rho, std::size_t k) {
    return in_identity_component(p, rho) && cv_membership(p, rho, k);
}

std::vector<Character> torsion_sweep(const GroupPresentation& p, unsigned m, std::size_t k, const SweepOptions& opts) {
    if (m == 0)
        throw InvalidArgument("torsion order must be at least 1");
    const std::size_t n = p.num_generators;
    std::size_t points = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (points > opts.max_points / m + 1)
            throw BudgetExceeded("torsion sweep over " + std::to_string(m) + "^" + std::to_string(n) +
                                 " points exceeds the limit of " + std::to_string(opts.max_points));
        points *= m;
    }
    if (points > opts.max_points)
        throw BudgetExceeded("torsion sweep over " + std::to_string(points) + " points exceeds the limit of " +
                             std::to_string(opts.max_points));

    const auto a = alexander_matrix(p);
    std::vector<Cyclotomic> roots;
    for (unsigned j = 0; j < m; ++j)
        roots.push_back(Cyclotomic::zeta(m, j));

    std::vector<char> hit(points, 0);
    std::vector<std::exception_ptr> errors(points);
    auto make = [&](std::size_t idx) {
        Character rho;
        rho.values.resize(n);
        rho.tokens.resize(n);
        for (std::size_t i = n; i-- > 0;) {
            const unsigned j = static_cast<unsigned>(idx % m);
            idx /= m;
            rho.values[i] = roots[j];
            rho.tokens[i] = j == 0 ? "1" : "zeta_" + std::to_string(m) + "^" + std::to_string(j);
        }
        return rho;
    };
    // Each point is independent; results are collected by index, so the
    // output order does not depend on scheduling.
#pragma omp parallel for schedule(dynamic)
    for (std::size_t idx = 0; idx < points; ++idx) {
        try {
            const auto rho = make(idx);
            if (!is_group_character(p, rho))
                continue;
            if (opts.restricted && !in_identity_component(p, rho))
                continue;
            hit[idx] = h1_dim(p, a, rho) >= k ? 1 : 0;
        } catch (...) {
            errors[idx] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    std::vector<Character> out;
    for (std::size_t idx = 0; idx < points; ++idx)
        if (hit[idx])
            out.push_back(make(idx));
    return out;
}

} // namespace alexinv
