#include "alexinv/free_lie.hpp"

#include "alexinv/errors.hpp"

#include <algorithm>

namespace alexinv {

namespace {

int mobius(std::size_t d) {
    int mu = 1;
    for (std::size_t p = 2; p * p <= d; ++p) {
        if (d % p == 0) {
            d /= p;
            if (d % p == 0)
                return 0;
            mu = -mu;
        }
    }
    if (d > 1)
        mu = -mu;
    return mu;
}

void add_scaled(TensorPoly& p, std::uint64_t word, const Rational& c) {
    auto [it, inserted] = p.try_emplace(word, c);
    if (!inserted) {
        it->second += c;
        if (is_zero(it->second))
            p.erase(it);
    }
}

} // namespace

bool is_lyndon(const std::vector<unsigned>& w) {
    if (w.empty())
        return false;
    const std::size_t n = w.size();
    for (std::size_t r = 1; r < n; ++r) {
        // Compare w with its rotation starting at r.
        for (std::size_t k = 0; k < n; ++k) {
            const unsigned a = w[k], b = w[(r + k) % n];
            if (a < b)
                break;
            if (a > b)
                return false;
            if (k + 1 == n)
                return false; // equal to a rotation: periodic
        }
    }
    return true;
}

std::vector<LyndonWord> lyndon_basis(std::size_t n, std::size_t q) {
    if (n == 0 || q == 0)
        throw InvalidArgument("lyndon_basis needs n >= 1 and q >= 1");
    // Duval's algorithm enumerates Lyndon words of length <= q in lex order.
    std::vector<LyndonWord> out;
    std::vector<long> w{-1};
    while (!w.empty()) {
        ++w.back();
        const std::size_t m = w.size();
        if (m == q) {
            LyndonWord lw;
            lw.letters.assign(w.begin(), w.end());
            out.push_back(std::move(lw));
        }
        while (w.size() < q)
            w.push_back(w[w.size() - m]);
        while (!w.empty() && w.back() == static_cast<long>(n) - 1)
            w.pop_back();
    }
    return out;
}

GradedDims witt_dims(std::size_t n, std::size_t max_degree) {
    GradedDims dims;
    dims.first_degree = 1;
    for (std::size_t q = 1; q <= max_degree; ++q) {
        Integer sum = 0;
        for (std::size_t d = 1; d <= q; ++d) {
            if (q % d != 0)
                continue;
            const int mu = mobius(d);
            if (mu == 0)
                continue;
            Integer p;
            mpz_ui_pow_ui(p.get_mpz_t(), n, q / d);
            sum += mu * p;
        }
        sum /= static_cast<unsigned long>(q);
        dims.values.push_back(sum.get_ui());
    }
    return dims;
}

LieElement& LieElement::operator+=(const LieElement& o) {
    if (o.is_zero())
        return *this;
    if (is_zero())
        degree = o.degree;
    if (degree != o.degree)
        throw InvalidArgument("adding Lie elements of different degrees");
    for (const auto& [w, c] : o.coords)
        add_scaled(coords, w, c);
    return *this;
}

LieElement& LieElement::operator-=(const LieElement& o) {
    LieElement neg = o;
    neg *= Rational(-1);
    return *this += neg;
}

LieElement& LieElement::operator*=(const Rational& c) {
    if (alexinv::is_zero(c)) {
        coords.clear();
        return *this;
    }
    for (auto& [w, x] : coords)
        x *= c;
    return *this;
}

FreeLieAlgebra::FreeLieAlgebra(std::size_t n) : n_(n) {
    if (n == 0)
        throw InvalidArgument("free Lie algebra needs at least one generator");
}

std::uint64_t FreeLieAlgebra::power(std::size_t k) const {
    std::uint64_t p = 1;
    for (std::size_t i = 0; i < k; ++i)
        p *= n_;
    return p;
}

std::uint64_t FreeLieAlgebra::pack(const std::vector<unsigned>& letters) const {
    std::uint64_t code = 0;
    for (unsigned a : letters) {
        if (a >= n_)
            throw InvalidArgument("letter out of range");
        code = code * n_ + a;
    }
    return code;
}

std::vector<unsigned> FreeLieAlgebra::unpack(std::size_t q, std::uint64_t word) const {
    std::vector<unsigned> letters(q);
    for (std::size_t k = q; k-- > 0;) {
        letters[k] = static_cast<unsigned>(word % n_);
        word /= n_;
    }
    return letters;
}

const FreeLieAlgebra::Degree& FreeLieAlgebra::degree(std::size_t q) const {
    if (q == 0)
        throw InvalidArgument("free Lie algebra has no degree-0 part");
    {
        std::lock_guard lock(mutex_);
        auto it = degrees_.find(q);
        if (it != degrees_.end())
            return *it->second;
    }
    if (n_ > 1) {
        Integer bound;
        mpz_ui_pow_ui(bound.get_mpz_t(), n_, q);
        if (bound > Integer("9223372036854775807"))
            throw BudgetExceeded("words of length " + std::to_string(q) + " on " + std::to_string(n_) +
                                 " letters do not fit in 64 bits");
    }

    auto d = std::make_unique<Degree>();
    for (const auto& lw : lyndon_basis(n_, q)) {
        const std::uint64_t code = pack(lw.letters);
        d->index.emplace(code, d->words.size());
        d->words.push_back(code);
        if (q == 1) {
            d->left_length.push_back(0);
            d->expansion.push_back({{code, 1}});
            continue;
        }
        // Longest proper Lyndon suffix.
        std::size_t split = 1;
        for (; split < q; ++split) {
            std::vector<unsigned> suffix(lw.letters.begin() + static_cast<long>(split), lw.letters.end());
            if (is_lyndon(suffix))
                break;
        }
        d->left_length.push_back(split);
        const std::size_t lu = split, lv = q - split;
        const auto& du = degree(lu);
        const auto& dv = degree(lv);
        std::vector<unsigned> u(lw.letters.begin(), lw.letters.begin() + static_cast<long>(split));
        std::vector<unsigned> v(lw.letters.begin() + static_cast<long>(split), lw.letters.end());
        const auto& eu = du.expansion[du.index.at(pack(u))];
        const auto& ev = dv.expansion[dv.index.at(pack(v))];
        std::map<std::uint64_t, std::int64_t> acc;
        const std::uint64_t shift_v = power(lv), shift_u = power(lu);
        for (const auto& [a, ca] : eu)
            for (const auto& [b, cb] : ev) {
                acc[a * shift_v + b] += ca * cb;
                acc[b * shift_u + a] -= ca * cb;
            }
        std::vector<std::pair<std::uint64_t, std::int64_t>> e;
        for (const auto& [w, c] : acc)
            if (c != 0)
                e.emplace_back(w, c);
        d->expansion.push_back(std::move(e));
    }

    std::lock_guard lock(mutex_);
    auto [it, inserted] = degrees_.try_emplace(q, std::move(d));
    return *it->second;
}

std::size_t FreeLieAlgebra::dimension(std::size_t q) const { return degree(q).words.size(); }

const std::vector<std::uint64_t>& FreeLieAlgebra::basis_words(std::size_t q) const { return degree(q).words; }

std::size_t FreeLieAlgebra::index_of(std::size_t q, std::uint64_t word) const {
    const auto& d = degree(q);
    auto it = d.index.find(word);
    if (it == d.index.end())
        throw InvalidArgument("word is not a Lyndon word of length " + std::to_string(q));
    return it->second;
}

LieElement FreeLieAlgebra::generator(std::size_t i) const {
    if (i >= n_)
        throw InvalidArgument("generator index out of range");
    LieElement x;
    x.degree = 1;
    x.coords.emplace(i, Rational(1));
    return x;
}

LieElement FreeLieAlgebra::basis_element(std::size_t q, std::size_t index) const {
    LieElement x;
    x.degree = q;
    x.coords.emplace(degree(q).words.at(index), Rational(1));
    return x;
}

TensorPoly FreeLieAlgebra::expand(const LieElement& x) const {
    TensorPoly p;
    if (x.is_zero())
        return p;
    const auto& d = degree(x.degree);
    for (const auto& [w, c] : x.coords) {
        for (const auto& [word, k] : d.expansion[d.index.at(w)])
            add_scaled(p, word, c * k);
    }
    return p;
}

LieElement FreeLieAlgebra::rewrite(std::size_t q, TensorPoly p) const {
    LieElement out;
    out.degree = q;
    if (p.empty())
        return out;
    const auto& d = degree(q);
    // The expansion of b(w) is w plus lexicographically larger words, so the
    // smallest surviving word always names the next basis coefficient.
    while (!p.empty()) {
        const auto [w, c] = *p.begin();
        auto it = d.index.find(w);
        if (it == d.index.end())
            throw InconsistencyError("tensor is not a Lie polynomial");
        const Rational coeff = c;
        for (const auto& [word, k] : d.expansion[it->second])
            add_scaled(p, word, -coeff * k);
        out.coords.emplace(w, coeff);
    }
    return out;
}

LieElement FreeLieAlgebra::bracket(const LieElement& x, const LieElement& y) const {
    LieElement out;
    if (x.is_zero() || y.is_zero()) {
        out.degree = x.degree + y.degree;
        return out;
    }
    const std::size_t q = x.degree + y.degree;
    degree(q); // validates the packed range before multiplying codes
    const TensorPoly tx = expand(x), ty = expand(y);
    const std::uint64_t sx = power(x.degree), sy = power(y.degree);
    TensorPoly p;
    for (const auto& [a, ca] : tx)
        for (const auto& [b, cb] : ty) {
            const Rational prod = ca * cb;
            add_scaled(p, a * sy + b, prod);
            add_scaled(p, b * sx + a, -prod);
        }
    return rewrite(q, std::move(p));
}

LieElement FreeLieAlgebra::bracket_with_generator(std::size_t i, const LieElement& x) const {
    if (i >= n_)
        throw InvalidArgument("generator index out of range");
    const std::size_t q = x.degree + 1;
    LieElement out;
    out.degree = q;
    if (x.is_zero())
        return out;
    degree(q);
    const std::uint64_t lead = static_cast<std::uint64_t>(i) * power(x.degree);
    TensorPoly p;
    for (const auto& [a, c] : expand(x)) {
        add_scaled(p, lead + a, c);
        add_scaled(p, a * n_ + i, -c);
    }
    return rewrite(q, std::move(p));
}

SparseMatrix<Rational> FreeLieAlgebra::ad_matrix(const std::vector<Rational>& v, std::size_t q) const {
    if (v.size() != n_)
        throw InvalidArgument("ad_matrix: vector has wrong length");
    if (q == 0)
        throw InvalidArgument("ad_matrix needs q >= 1");
    const auto& src = degree(q);
    const auto& dst = degree(q + 1);
    SparseMatrix<Rational> m(dst.words.size(), src.words.size());
    for (std::size_t j = 0; j < src.words.size(); ++j) {
        LieElement col;
        col.degree = q + 1;
        const LieElement b = basis_element(q, j);
        for (std::size_t i = 0; i < n_; ++i) {
            if (alexinv::is_zero(v[i]))
                continue;
            LieElement t = bracket_with_generator(i, b);
            t *= v[i];
            col += t;
        }
        for (const auto& [w, c] : col.coords)
            m.set(dst.index.at(w), j, c);
    }
    return m;
}

std::vector<Rational> FreeLieAlgebra::to_vector(const LieElement& x) const {
    const auto& d = degree(x.degree);
    std::vector<Rational> v(d.words.size(), Rational(0));
    for (const auto& [w, c] : x.coords)
        v[d.index.at(w)] = c;
    return v;
}

LieElement FreeLieAlgebra::from_vector(std::size_t q, const std::vector<Rational>& v) const {
    const auto& d = degree(q);
    if (v.size() != d.words.size())
        throw InvalidArgument("from_vector: wrong length");
    LieElement x;
    x.degree = q;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!alexinv::is_zero(v[i]))
            x.coords.emplace(d.words[i], v[i]);
    return x;
}

} // namespace alexinv
