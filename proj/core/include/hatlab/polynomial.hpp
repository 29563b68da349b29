#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hatlab/rational.hpp"

namespace hatlab {

// Univariate polynomial in p with arbitrary-precision integer
// coefficients, stored lowest degree first with no trailing zeros.
// The zero polynomial has an empty coefficient vector.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> coeffs);
    static IntPolynomial constant(const BigInt& c);
    static IntPolynomial variable();  // the polynomial p

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<BigInt>& coefficients() const { return coeffs_; }
    const BigInt& coeff(std::size_t k) const;  // 0 beyond degree
    const BigInt& leading() const;             // requires nonzero

    IntPolynomial operator-() const;
    IntPolynomial operator+(const IntPolynomial& o) const;
    IntPolynomial operator-(const IntPolynomial& o) const;
    IntPolynomial operator*(const IntPolynomial& o) const;
    IntPolynomial operator*(const BigInt& c) const;
    bool operator==(const IntPolynomial& o) const = default;

    IntPolynomial derivative() const;
    IntPolynomial compose(const IntPolynomial& inner) const;  // this(inner(p))
    BigRational eval(const BigRational& x) const;

    // gcd of |coefficients|, positive; content of zero is 0
    BigInt content() const;
    IntPolynomial primitive_part() const;  // this / content, sign preserved

    // Exact division; throws std::logic_error if not divisible over Z.
    IntPolynomial divide_exact(const IntPolynomial& d) const;

    // Primitive gcd with positive leading coefficient (primitive PRS).
    static IntPolynomial gcd(IntPolynomial a, IntPolynomial b);

    std::string to_string(const std::string& var = "p") const;

private:
    void trim();
    std::vector<BigInt> coeffs_;
};

inline IntPolynomial operator*(const BigInt& c, const IntPolynomial& f) { return f * c; }

}  // namespace hatlab
