#include "alexinv/cyclotomic.hpp"

#include "alexinv/errors.hpp"

#include <map>
#include <mutex>
#include <numeric>

namespace alexinv {

namespace detail {

struct CyclotomicField {
    unsigned order;
    std::vector<Rational> modulus; // monic Phi_m, constant term first
    std::size_t degree() const { return modulus.size() - 1; }
};

} // namespace detail

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
    while (!p.empty() && is_zero(p.back()))
        p.pop_back();
}

// Quotient and remainder of a by b, b nonzero.
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
    trim(a);
    Poly q;
    const std::size_t db = b.size() - 1;
    if (a.size() < b.size())
        return {q, a};
    q.assign(a.size() - db, Rational(0));
    const Rational lead = b.back();
    for (std::size_t i = a.size(); i-- > db;) {
        if (is_zero(a[i]))
            continue;
        Rational f = a[i] / lead;
        q[i - db] = f;
        for (std::size_t k = 0; k <= db; ++k)
            a[i - db + k] -= f * b[k];
    }
    trim(a);
    trim(q);
    return {q, a};
}

Poly multiply(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty())
        return {};
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (is_zero(a[i]))
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

Poly subtract(Poly a, const Poly& b) {
    if (a.size() < b.size())
        a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] -= b[i];
    trim(a);
    return a;
}

std::shared_ptr<const detail::CyclotomicField> field_of(unsigned m);

// x^m - 1 divided by Phi_d for every proper divisor d.
Poly compute_cyclotomic(unsigned m) {
    Poly p(m + 1, Rational(0));
    p[0] = -1;
    p[m] = 1;
    for (unsigned d = 1; d < m; ++d) {
        if (m % d != 0)
            continue;
        auto [q, r] = divmod(p, field_of(d)->modulus);
        p = std::move(q);
    }
    return p;
}

std::shared_ptr<const detail::CyclotomicField> field_of(unsigned m) {
    if (m == 0)
        throw InvalidArgument("cyclotomic order must be positive");
    static std::recursive_mutex mutex;
    static std::map<unsigned, std::shared_ptr<const detail::CyclotomicField>> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(m);
    if (it != cache.end())
        return it->second;
    auto field = std::make_shared<const detail::CyclotomicField>(detail::CyclotomicField{m, compute_cyclotomic(m)});
    cache.emplace(m, field);
    return field;
}

Poly reduce(Poly p, const detail::CyclotomicField& f) {
    auto [q, r] = divmod(std::move(p), f.modulus);
    r.resize(f.degree(), Rational(0));
    return r;
}

} // namespace

unsigned euler_phi(unsigned m) {
    unsigned result = m;
    for (unsigned p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0)
                m /= p;
            result -= result / p;
        }
    }
    if (m > 1)
        result -= result / m;
    return result;
}

std::vector<Integer> cyclotomic_polynomial(unsigned m) {
    const auto& mod = field_of(m)->modulus;
    std::vector<Integer> out;
    out.reserve(mod.size());
    for (const auto& c : mod)
        out.emplace_back(c.get_num());
    return out;
}

Cyclotomic::Cyclotomic() : Cyclotomic(Rational(0)) {}

Cyclotomic::Cyclotomic(long r) : Cyclotomic(Rational(r)) {}

Cyclotomic::Cyclotomic(const Rational& r) : field_(field_of(1)), coeffs_{r} {}

Cyclotomic::Cyclotomic(std::shared_ptr<const detail::CyclotomicField> field, std::vector<Rational> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {}

Cyclotomic Cyclotomic::from_coefficients(unsigned m, std::vector<Rational> coeffs) {
    auto f = field_of(m);
    auto reduced = reduce(std::move(coeffs), *f);
    return Cyclotomic(std::move(f), std::move(reduced));
}

Cyclotomic Cyclotomic::zeta(unsigned m, long j) {
    if (m == 0)
        throw InvalidArgument("cyclotomic order must be positive");
    long e = j % static_cast<long>(m);
    if (e < 0)
        e += m;
    Poly p(static_cast<std::size_t>(e) + 1, Rational(0));
    p.back() = 1;
    return from_coefficients(m, std::move(p));
}

unsigned Cyclotomic::order() const { return field_->order; }

bool Cyclotomic::is_zero() const {
    for (const auto& c : coeffs_)
        if (!alexinv::is_zero(c))
            return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (!alexinv::is_zero(coeffs_[i]))
            return false;
    return true;
}

Cyclotomic Cyclotomic::embed(unsigned m) const {
    const unsigned d = order();
    if (m % d != 0)
        throw InvalidArgument("cannot embed Q(zeta_" + std::to_string(d) + ") into Q(zeta_" + std::to_string(m) + ")");
    if (m == d)
        return *this;
    const unsigned stride = m / d;
    Poly p((coeffs_.size() - 1) * stride + 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        p[i * stride] = coeffs_[i];
    return from_coefficients(m, std::move(p));
}

void Cyclotomic::unify(Cyclotomic& other) {
    if (order() == other.order())
        return;
    const unsigned l = std::lcm(order(), other.order());
    *this = embed(l);
    other = other.embed(l);
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    Cyclotomic b = o;
    unify(b);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] += b.coeffs_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
    Cyclotomic b = o;
    unify(b);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] -= b.coeffs_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
    Cyclotomic b = o;
    unify(b);
    if (coeffs_.size() == 1) {
        coeffs_[0] *= b.coeffs_[0];
        return *this;
    }
    coeffs_ = reduce(multiply(coeffs_, b.coeffs_), *field_);
    return *this;
}

Cyclotomic& Cyclotomic::operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& c : r.coeffs_)
        c = -c;
    return r;
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero())
        throw InvalidArgument("division by zero in Q(zeta_" + std::to_string(order()) + ")");
    if (coeffs_.size() == 1)
        return Cyclotomic(field_, {Rational(1 / coeffs_[0])});

    // Extended Euclid: s*a + t*Phi = gcd, a constant since Phi is irreducible.
    Poly r0 = field_->modulus, r1 = coeffs_;
    trim(r1);
    Poly s0, s1{Rational(1)};
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1);
        Poly s2 = subtract(s0, multiply(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 is a nonzero constant.
    for (auto& c : s0)
        c /= r0[0];
    return Cyclotomic(field_, reduce(std::move(s0), *field_));
}

Cyclotomic Cyclotomic::pow(long e) const {
    Cyclotomic base = e < 0 ? inverse() : *this;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Cyclotomic result = Cyclotomic(Rational(1)).embed(order());
    while (k > 0) {
        if (k & 1u)
            result *= base;
        base *= base;
        k >>= 1;
    }
    return result;
}

std::string Cyclotomic::to_string() const {
    if (is_rational())
        return alexinv::to_string(coeffs_[0]);
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const auto& c = coeffs_[i];
        if (alexinv::is_zero(c))
            continue;
        std::string term;
        if (i == 0)
            term = alexinv::to_string(c);
        else {
            if (c == 1)
                term = "";
            else if (c == -1)
                term = "-";
            else
                term = alexinv::to_string(c) + "*";
            term += i == 1 ? "z" : "z^" + std::to_string(i);
        }
        if (!out.empty() && term.front() != '-')
            out += "+";
        out += term;
    }
    return out + "[" + std::to_string(order()) + "]";
}

} // namespace alexinv
