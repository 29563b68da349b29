#include "hatlab/rational_function.hpp"

#include <sstream>

namespace hatlab {

RationalFunction::RationalFunction(IntPolynomial num, IntPolynomial den) {
    if (den.is_zero()) throw DomainError("division by zero polynomial");
    if (num.is_zero()) {
        num_ = {};
        den_ = IntPolynomial::constant(1);
        return;
    }
    IntPolynomial g = IntPolynomial::gcd(num, den);
    if (g.degree() > 0 || g.leading() != 1) {
        // g is primitive; divide the primitive parts, keep the content ratio
        BigInt cn = num.content(), cd = den.content();
        num = num.primitive_part().divide_exact(g) * cn;
        den = den.primitive_part().divide_exact(g) * cd;
    }
    BigInt c;
    mpz_gcd(c.get_mpz_t(), num.content().get_mpz_t(), den.content().get_mpz_t());
    if (c > 1) {
        IntPolynomial cn = IntPolynomial::constant(c);
        num = num.divide_exact(cn);
        den = den.divide_exact(cn);
    }
    if (den.leading() < 0) {
        num = -num;
        den = -den;
    }
    num_ = std::move(num);
    den_ = std::move(den);
}

RationalFunction RationalFunction::from_polynomial(IntPolynomial f) {
    return RationalFunction(std::move(f), IntPolynomial::constant(1));
}

RationalFunction RationalFunction::constant(const BigRational& c) {
    return RationalFunction(IntPolynomial::constant(c.get_num()),
                            IntPolynomial::constant(c.get_den()));
}

RationalFunction RationalFunction::variable() {
    return from_polynomial(IntPolynomial::variable());
}

RationalFunction RationalFunction::one_minus_p() {
    return from_polynomial(IntPolynomial({1, -1}));
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
    return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
    return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
    return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
    if (o.is_zero()) throw DomainError("division by zero polynomial");
    return RationalFunction(num_ * o.den_, den_ * o.num_);
}

RationalFunction RationalFunction::pow(unsigned e) const {
    RationalFunction acc = constant(BigRational(1));
    RationalFunction base = *this;
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

RationalFunction RationalFunction::derivative() const {
    return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalFunction RationalFunction::substitute(const RationalFunction& inner) const {
    // this = N/D as a ratio; evaluate both at inner with a common power of
    // inner's denominator cleared.
    int dn = std::max(num_.degree(), 0);
    int dd = std::max(den_.degree(), 0);
    int d = std::max(dn, dd);
    auto lift = [&](const IntPolynomial& f) {
        // sum f_k * In^k * Id^(d-k)
        IntPolynomial acc;
        IntPolynomial in_pow = IntPolynomial::constant(1);
        std::vector<IntPolynomial> in_pows;
        for (int k = 0; k <= d; ++k) {
            in_pows.push_back(in_pow);
            in_pow = in_pow * inner.numerator();
        }
        IntPolynomial id_pow = IntPolynomial::constant(1);
        for (int k = d; k >= 0; --k) {
            if (f.coeff(k) != 0) acc = acc + in_pows[k] * id_pow * f.coeff(k);
            id_pow = id_pow * inner.denominator();
        }
        return acc;
    };
    return RationalFunction(lift(num_), lift(den_));
}

BigRational RationalFunction::eval(const BigRational& x) const {
    BigRational d = den_.eval(x);
    if (d == 0) throw DomainError("pole");
    BigRational r = num_.eval(x) / d;
    r.canonicalize();
    return r;
}

std::string RationalFunction::serialize() const {
    auto coeffs = [](const IntPolynomial& f) {
        if (f.is_zero()) return std::string("0");
        std::string s;
        for (std::size_t k = 0; k < f.coefficients().size(); ++k) {
            if (k) s += ",";
            s += f.coefficients()[k].get_str();
        }
        return s;
    };
    return coeffs(num_) + " / " + coeffs(den_);
}

RationalFunction RationalFunction::deserialize(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) throw DomainError("malformed rational function: " + text);
    auto parse = [](std::string part) {
        std::vector<BigInt> out;
        std::istringstream is(part);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            auto b = tok.find_first_not_of(" \t");
            auto e = tok.find_last_not_of(" \t");
            if (b == std::string::npos) throw DomainError("malformed coefficient list");
            out.emplace_back(tok.substr(b, e - b + 1));
        }
        return IntPolynomial(std::move(out));
    };
    return RationalFunction(parse(text.substr(0, slash)), parse(text.substr(slash + 1)));
}

std::string RationalFunction::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string n = num_.to_string(var);
    if (den_ == IntPolynomial::constant(1)) return n;
    return "(" + n + ") / (" + den_.to_string(var) + ")";
}

}  // namespace hatlab
