#include "hatlab/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace hatlab {

namespace {
const BigInt kZero = 0;
}

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
}

IntPolynomial IntPolynomial::constant(const BigInt& c) {
    if (c == 0) return {};
    return IntPolynomial({c});
}

IntPolynomial IntPolynomial::variable() {
    return IntPolynomial({0, 1});
}

void IntPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const BigInt& IntPolynomial::coeff(std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : kZero;
}

const BigInt& IntPolynomial::leading() const {
    if (is_zero()) throw std::logic_error("leading coefficient of zero polynomial");
    return coeffs_.back();
}

IntPolynomial IntPolynomial::operator-() const {
    IntPolynomial r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
    std::vector<BigInt> out(std::max(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeff(i) + o.coeff(i);
    return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const {
    std::vector<BigInt> out(std::max(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeff(i) - o.coeff(i);
    return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<BigInt> out(coeffs_.size() + o.coeffs_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            out[i + j] += coeffs_[i] * o.coeffs_[j];
    return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::operator*(const BigInt& c) const {
    if (c == 0) return {};
    IntPolynomial r = *this;
    for (auto& x : r.coeffs_) x *= c;
    return r;
}

IntPolynomial IntPolynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<BigInt> out(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) out[k - 1] = coeffs_[k] * BigInt(static_cast<long>(k));
    return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::compose(const IntPolynomial& inner) const {
    // Horner on the outer coefficients
    IntPolynomial acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * inner + constant(*it);
    return acc;
}

BigRational IntPolynomial::eval(const BigRational& x) const {
    BigRational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= x;
        acc += BigRational(*it);
    }
    acc.canonicalize();
    return acc;
}

BigInt IntPolynomial::content() const {
    BigInt g = 0;
    for (const auto& c : coeffs_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
    if (is_zero()) return {};
    BigInt c = content();
    IntPolynomial r = *this;
    for (auto& x : r.coeffs_) x /= c;
    return r;
}

IntPolynomial IntPolynomial::divide_exact(const IntPolynomial& d) const {
    if (d.is_zero()) throw std::logic_error("exact division by zero polynomial");
    IntPolynomial rem = *this;
    if (rem.is_zero()) return {};
    if (rem.degree() < d.degree()) throw std::logic_error("inexact polynomial division");
    std::vector<BigInt> quot(rem.degree() - d.degree() + 1, BigInt(0));
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
        BigInt q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem.leading().get_mpz_t(), d.leading().get_mpz_t());
        if (r != 0) throw std::logic_error("inexact polynomial division");
        int shift = rem.degree() - d.degree();
        quot[shift] = q;
        std::vector<BigInt> term(shift + 1, BigInt(0));
        term[shift] = q;
        rem = rem - d * IntPolynomial(std::move(term));
        if (!rem.is_zero() && rem.degree() >= d.degree() + shift)
            throw std::logic_error("inexact polynomial division");
    }
    if (!rem.is_zero()) throw std::logic_error("inexact polynomial division");
    return IntPolynomial(std::move(quot));
}

namespace {
// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b over Z.
IntPolynomial pseudo_rem(IntPolynomial a, const IntPolynomial& b) {
    int k = a.degree() - b.degree() + 1;
    for (int i = 0; i < k && !a.is_zero() && a.degree() >= b.degree(); ) {
        int shift = a.degree() - b.degree();
        BigInt c = a.leading();
        std::vector<BigInt> term(shift + 1, BigInt(0));
        term[shift] = c;
        a = a * b.leading() - b * IntPolynomial(std::move(term));
        ++i;
    }
    return a;
}
}  // namespace

IntPolynomial IntPolynomial::gcd(IntPolynomial a, IntPolynomial b) {
    a = a.primitive_part();
    b = b.primitive_part();
    if (a.is_zero()) std::swap(a, b);
    while (!b.is_zero()) {
        if (a.degree() < b.degree()) std::swap(a, b);
        IntPolynomial r = pseudo_rem(a, b).primitive_part();
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero() && a.leading() < 0) a = -a;
    return a;
}

std::string IntPolynomial::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        const BigInt& c = coeffs_[k];
        if (c == 0) continue;
        BigInt a = abs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (k == 0 || a != 1) os << a.get_str();
        if (k >= 1) {
            os << var;
            if (k >= 2) os << "^" << k;
        }
    }
    return os.str();
}

}  // namespace hatlab
