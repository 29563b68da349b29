#pragma once

#include <string>

#include "hatlab/polynomial.hpp"

namespace hatlab {

// Ratio of integer-coefficient polynomials in p, kept canonical:
// numerator and denominator coprime, gcd of the two integer contents 1,
// denominator leading coefficient positive. Equality of values is then
// structural equality.
class RationalFunction {
public:
    RationalFunction() : den_(IntPolynomial::constant(1)) {}  // zero
    RationalFunction(IntPolynomial num, IntPolynomial den);
    static RationalFunction from_polynomial(IntPolynomial f);
    static RationalFunction constant(const BigRational& c);
    static RationalFunction variable();  // p
    static RationalFunction one_minus_p();

    const IntPolynomial& numerator() const { return num_; }
    const IntPolynomial& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RationalFunction operator-() const;
    RationalFunction operator+(const RationalFunction& o) const;
    RationalFunction operator-(const RationalFunction& o) const;
    RationalFunction operator*(const RationalFunction& o) const;
    RationalFunction operator/(const RationalFunction& o) const;
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    bool operator==(const RationalFunction& o) const = default;

    RationalFunction pow(unsigned e) const;
    RationalFunction derivative() const;  // quotient rule, canonical
    // this(inner(p)); used e.g. to substitute p -> 1-p
    RationalFunction substitute(const RationalFunction& inner) const;
    BigRational eval(const BigRational& x) const;  // throws DomainError at a pole

    // "n0,n1,... / d0,d1,..." lowest degree first (the CLI exact format)
    std::string serialize() const;
    static RationalFunction deserialize(const std::string& text);
    std::string to_string(const std::string& var = "p") const;

private:
    IntPolynomial num_, den_;
};

}  // namespace hatlab
