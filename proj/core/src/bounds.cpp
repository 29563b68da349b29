#include "hatlab/bounds.hpp"

#include <cmath>
#include <fstream>
#include <mutex>

#include "hatlab/block_machine.hpp"
#include "hatlab/io.hpp"

namespace hatlab {

const RationalFunction& strategy_value_s1() {
    static const RationalFunction v = derive_closed_form(builtin_machine(Builtin::S1)).value;
    return v;
}

const RationalFunction& strategy_value_s3() {
    static const RationalFunction v = derive_closed_form(builtin_machine(Builtin::S3)).value;
    return v;
}

namespace {

BigInt binomial(const BigInt& b, const BigInt& a) {
    BigInt r;
    mpz_bin_ui(r.get_mpz_t(), b.get_mpz_t(), a.get_ui());
    return r;
}

void fill_lower(BoundRecord& rec, const BigRational& p) {
    const BigRational half = make_rational(1, 2);
    if (p <= half) {
        rec.lower = strategy_value_s1().eval(p);
        rec.lower_witness = "S1";
    } else {
        rec.lower = strategy_value_s3().eval(p);
        rec.lower_witness = "S3";
    }
}

}  // namespace

BoundRecord upper_bound(const BigRational& p) {
    if (p <= 0 || p >= 1) throw DomainError("probability out of range");
    BoundRecord rec;
    rec.p = p;  // mpq_class is always in lowest terms
    const BigInt a = p.get_num(), b = p.get_den();
    rec.binomial_exponent = binomial(b, a);
    const BigRational q = BigRational(1) - p;
    const BigRational& base = 2 * a <= b ? q : p;   // penalty base: min side
    const BigRational& other = 2 * a <= b ? p : q;  // multiplied factor
    if (rec.binomial_exponent <= kExactExponentCutoff) {
        rec.upper = p - pow_rational(base, rec.binomial_exponent.get_ui()) * other;
        rec.upper.canonicalize();
        rec.upper_exact = true;
    } else {
        // log-space: p - exp(C ln(base) + ln(other))
        const double log_pen = rec.binomial_exponent.get_d() * std::log(base.get_d()) +
                               std::log(other.get_d());
        rec.upper = BigRational(p.get_d() - std::exp(log_pen));
        rec.upper.canonicalize();
        rec.upper_exact = false;
    }
    fill_lower(rec, p);
    return rec;
}

BoundRecord lower_envelope(const BigRational& p) {
    if (p < 0 || p > 1) throw DomainError("probability out of range");
    BoundRecord rec;
    rec.p = p;
    fill_lower(rec, p);
    rec.upper = 1;
    rec.upper_exact = false;
    if (p > 0 && p < 1) {
        BoundRecord ub = upper_bound(p);
        rec.upper = ub.upper;
        rec.upper_exact = ub.upper_exact;
        rec.binomial_exponent = ub.binomial_exponent;
    }
    return rec;
}

std::optional<bool> upper_bound_at_least(const BigRational& p, const BigRational& x) {
    if (p <= 0 || p >= 1) throw DomainError("probability out of range");
    const BigInt a = p.get_num(), b = p.get_den();
    const BigInt C = binomial(b, a);
    const BigRational q = BigRational(1) - p;
    const BigRational& base = 2 * a <= b ? q : p;
    const BigRational& other = 2 * a <= b ? p : q;
    BigRational gap = p - x;  // need penalty <= gap
    gap.canonicalize();
    if (C <= kExactExponentCutoff) {
        BigRational pen = pow_rational(base, C.get_ui()) * other;
        pen.canonicalize();
        return pen <= gap;
    }
    if (gap < 0) return false;
    // base < 1, so base^C * other <= base^64 for C >= 64; an exact
    // overestimate that avoids astronomically long exact powers.
    BigRational over = pow_rational(base, 64);
    over.canonicalize();
    if (over <= gap) return true;
    return std::nullopt;
}

DerivativeDiagnostics derivative_diagnostics() {
    DerivativeDiagnostics d;
    d.lower_slope_at_0 = strategy_value_s1().derivative().eval(BigRational(0));
    d.upper_slope_at_1 = strategy_value_s3().derivative().eval(BigRational(1));
    const long b = 10'000;
    BigRational near0 = upper_bound(make_rational(1, b)).upper * b;
    near0.canonicalize();
    d.upper_bound_slope_at_0 = near0.get_d();
    BigRational near1 = (BigRational(1) - upper_bound(make_rational(b - 1, b)).upper) * b;
    near1.canonicalize();
    d.lower_bound_slope_at_1 = near1.get_d();
    return d;
}

std::vector<CurveRow> emit_curve(const std::vector<BigRational>& grid, const std::string& path,
                                 bool exact_only) {
    std::vector<CurveRow> rows;
    rows.reserve(grid.size());
    for (const auto& p : grid) {
        if (p <= 0 || p >= 1) throw DomainError("grid point out of (0,1)");
        BoundRecord lo = lower_envelope(p);
        BoundRecord up = upper_bound(p);
        CurveRow row;
        row.p = p;
        row.lower = lo.lower;
        row.witness = lo.lower_witness;
        if (!exact_only || up.upper_exact) row.upper = up.upper;
        rows.push_back(std::move(row));
    }
    std::ofstream out(path);
    if (!out) throw IOError("cannot write curve file: " + path);
    out << "p,lower,upper,witness\n";
    for (const auto& row : rows) {
        out << format_significant(row.p, 15) << "," << format_significant(row.lower, 15) << ",";
        if (row.upper) out << format_significant(*row.upper, 15);
        out << "," << row.witness << "\n";
    }
    if (!out) throw IOError("cannot write curve file: " + path);
    return rows;
}

}  // namespace hatlab
