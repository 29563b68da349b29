#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace hatlab {

using BigInt = mpz_class;
using BigRational = mpq_class;

// Thrown for mathematically invalid inputs (poles, singular systems,
// out-of-range probabilities). The CLI maps this to exit code 3.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline BigRational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DomainError("division by zero");
    BigRational r(num, den);
    r.canonicalize();
    return r;
}

inline BigRational make_rational(long num, long den = 1) {
    return make_rational(BigInt(num), BigInt(den));
}

// Parses "a/b" or "a" with arbitrary-precision integers.
inline BigRational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return make_rational(BigInt(s), BigInt(1));
        return make_rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw DomainError("malformed rational: " + s);
    }
}

inline std::string rational_to_string(const BigRational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline BigRational pow_rational(const BigRational& base, unsigned long e) {
    BigRational r;
    mpz_pow_ui(r.get_num().get_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den().get_mpz_t(), base.get_den().get_mpz_t(), e);
    return r;  // base canonical => powers canonical
}

// Decimal expansion with `digits` significant digits, round half away
// from zero. Matches the fixed-point style of the bound tables
// (e.g. 46/81 -> "0.567901234567901" at 15 digits).
std::string format_significant(const BigRational& value, int digits);

}  // namespace hatlab
