#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hatlab/rational.hpp"
#include "hatlab/rational_function.hpp"

namespace hatlab {

// V(a/b) <= a/b - (1-a/b)^C(b,a) * (a/b) for p <= 1/2 and the
// white/black mirror image for p >= 1/2.
struct BoundRecord {
    BigRational p;              // reduced a/b
    BigRational lower;
    std::string lower_witness;  // "S1" or "S3"
    BigRational upper;
    BigInt binomial_exponent;   // C(b,a)
    bool upper_exact = true;    // false when evaluated in log space
};

struct CurveRow {
    BigRational p;
    BigRational lower;
    std::optional<BigRational> upper;
    std::string witness;
};

// Exponent cutoff above which the penalty term (1-p)^C(b,a) p is
// evaluated in log-space floating point instead of exact rationals.
constexpr unsigned long kExactExponentCutoff = 1u << 20;

BoundRecord upper_bound(const BigRational& p);

// max(V_S1, V_S3): S1 for p <= 1/2, S3 for p >= 1/2.
BoundRecord lower_envelope(const BigRational& p);

// Exact certificate that upper_bound(p) >= x, valid for any exponent
// size (uses monotonicity of the penalty term when C(b,a) is huge).
// nullopt when the certificate is inconclusive.
std::optional<bool> upper_bound_at_least(const BigRational& p, const BigRational& x);

struct DerivativeDiagnostics {
    BigRational lower_slope_at_0;  // V_S1'(0), exact
    BigRational upper_slope_at_1;  // V_S3'(1), exact
    double upper_bound_slope_at_0; // b * UB(1/b) at b = 10^4, ~ 1 - 1/e
    double lower_bound_slope_at_1; // (1 - UB(1 - 1/b)) * b at b = 10^4, ~ 1 + 1/e
};

DerivativeDiagnostics derivative_diagnostics();

// Writes "p,lower,upper,witness" CSV with 15 significant digits.
// With exact_only, rows whose exponent exceeds the cutoff leave the
// upper column blank.
std::vector<CurveRow> emit_curve(const std::vector<BigRational>& grid, const std::string& path,
                                 bool exact_only = false);

// Closed forms used by the envelope (shared with the CLI).
const RationalFunction& strategy_value_s1();
const RationalFunction& strategy_value_s3();

}  // namespace hatlab
