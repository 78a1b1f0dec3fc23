#pragma once

// Value-semantics wrapper over an MPFR binary float with explicit precision.
// Binary operations round to the larger of the operand precisions.

#include "qident/arith.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace qident {

class BigFloat {
public:
    static constexpr mpfr_prec_t default_precision = 256;

    explicit BigFloat(mpfr_prec_t precision = default_precision) {
        mpfr_init2(v_, precision);
        mpfr_set_zero(v_, 1);
    }

    BigFloat(long x, mpfr_prec_t precision) : BigFloat(precision) { mpfr_set_si(v_, x, MPFR_RNDN); }
    BigFloat(int x, mpfr_prec_t precision) : BigFloat(static_cast<long>(x), precision) {}
    BigFloat(double x, mpfr_prec_t precision) : BigFloat(precision) { mpfr_set_d(v_, x, MPFR_RNDN); }
    BigFloat(const BigInt& x, mpfr_prec_t precision) : BigFloat(precision) {
        mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN);
    }
    BigFloat(const Rational& x, mpfr_prec_t precision) : BigFloat(precision) {
        mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN);
    }

    /// Parses a decimal literal such as "0.9999" at the given precision.
    static BigFloat parse(const std::string& text, mpfr_prec_t precision) {
        BigFloat r(precision);
        if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0)
            throw std::invalid_argument("not a decimal number: " + text);
        return r;
    }

    static BigFloat pi(mpfr_prec_t precision) {
        BigFloat r(precision);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept : BigFloat(mpfr_get_prec(o.v_)) { mpfr_swap(v_, o.v_); }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    /// Scientific decimal rendering with all digits the precision supports.
    std::string to_string() const {
        const int digits = std::max(1, static_cast<int>(std::floor(static_cast<double>(precision()) * 0.30102999566)));
        return to_string(digits);
    }

    std::string to_string(int significant_digits) const {
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.*Re", significant_digits - 1, v_);
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }

#define QIDENT_BIGFLOAT_BINOP(op, fn)                                                \
    friend BigFloat operator op(const BigFloat& a, const BigFloat& b) {              \
        BigFloat r(std::max(a.precision(), b.precision()));                          \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                             \
        return r;                                                                    \
    }                                                                                \
    BigFloat& operator op##=(const BigFloat& b) { return *this = *this op b; }
    QIDENT_BIGFLOAT_BINOP(+, mpfr_add)
    QIDENT_BIGFLOAT_BINOP(-, mpfr_sub)
    QIDENT_BIGFLOAT_BINOP(*, mpfr_mul)
    QIDENT_BIGFLOAT_BINOP(/, mpfr_div)
#undef QIDENT_BIGFLOAT_BINOP

    friend BigFloat operator*(const BigFloat& a, long k) {
        BigFloat r(a.precision());
        mpfr_mul_si(r.v_, a.v_, k, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(long k, const BigFloat& a) { return a * k; }
    friend BigFloat operator/(const BigFloat& a, long k) {
        BigFloat r(a.precision());
        mpfr_div_si(r.v_, a.v_, k, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator+(const BigFloat& a, long k) {
        BigFloat r(a.precision());
        mpfr_add_si(r.v_, a.v_, k, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(long k, const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_si_sub(r.v_, k, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator<(const BigFloat& a, double b) { return mpfr_cmp_d(a.v_, b) < 0; }
    friend bool operator>(const BigFloat& a, double b) { return mpfr_cmp_d(a.v_, b) > 0; }

    friend BigFloat abs(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat sqrt(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat log(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_log(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat floor(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_floor(r.v_, a.v_);
        return r;
    }
    friend BigFloat pow(const BigFloat& a, long e) {
        BigFloat r(a.precision());
        mpfr_pow_si(r.v_, a.v_, e, MPFR_RNDN);
        return r;
    }
    friend BigFloat pow(const BigFloat& a, const BigFloat& e) {
        BigFloat r(std::max(a.precision(), e.precision()));
        mpfr_pow(r.v_, a.v_, e.v_, MPFR_RNDN);
        return r;
    }
    /// 2^e at the given precision.
    static BigFloat exp2(long e, mpfr_prec_t precision) {
        BigFloat r(precision);
        mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }

    /// Exact integer part (the value must be finite).
    BigInt to_integer_floor() const {
        BigInt z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
        return z;
    }

private:
    mpfr_t v_;
};

}  // namespace qident
