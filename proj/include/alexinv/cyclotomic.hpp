#pragma once

#include "alexinv/rational.hpp"

#include <memory>
#include <string>
#include <vector>

namespace alexinv {

namespace detail {
struct CyclotomicField;
}

/// Element of Q(zeta_m) stored as a polynomial in zeta of degree < phi(m),
/// reduced modulo the m-th cyclotomic polynomial.
///
/// Values of different orders combine by embedding both into Q(zeta_lcm).
/// Order 1 is plain Q, so every Rational converts implicitly.
class Cyclotomic {
public:
    Cyclotomic();
    Cyclotomic(const Rational& r); // NOLINT(google-explicit-constructor)
    Cyclotomic(long r);            // NOLINT(google-explicit-constructor)

    /// zeta_m^j, j taken modulo m.
    static Cyclotomic zeta(unsigned m, long j = 1);

    /// Builds from raw coefficients; reduces modulo Phi_m.
    static Cyclotomic from_coefficients(unsigned m, std::vector<Rational> coeffs);

    unsigned order() const;
    const std::vector<Rational>& coefficients() const { return coeffs_; }

    bool is_zero() const;
    bool is_rational() const;

    /// Image in Q(zeta_m); m must be a multiple of order().
    Cyclotomic embed(unsigned m) const;

    Cyclotomic inverse() const;
    Cyclotomic pow(long e) const;

    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic& operator/=(const Cyclotomic& o);
    Cyclotomic operator-() const;

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return (a - b).is_zero(); }

    /// "3/2", or a sum of terms like "2*z^3" where z = zeta_m, with "[m]" suffix.
    std::string to_string() const;

private:
    Cyclotomic(std::shared_ptr<const detail::CyclotomicField> field, std::vector<Rational> coeffs);
    void unify(Cyclotomic& other);

    std::shared_ptr<const detail::CyclotomicField> field_;
    std::vector<Rational> coeffs_;
};

inline bool is_zero(const Cyclotomic& x) { return x.is_zero(); }

/// Integer coefficients of Phi_m, constant term first.
std::vector<Integer> cyclotomic_polynomial(unsigned m);

unsigned euler_phi(unsigned m);

} // namespace alexinv
