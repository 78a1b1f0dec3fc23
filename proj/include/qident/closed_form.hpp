#pragma once

#include "qident/arith.hpp"
#include "qident/bigfloat.hpp"

#include <string>

namespace qident {

/// multiplier * pi^pi_power / sqrt(radicand), with radicand = 1 meaning no root.
struct ClosedForm {
    Rational multiplier{1};
    unsigned pi_power = 0;
    unsigned radicand = 1;

    BigFloat value(mpfr_prec_t precision) const {
        BigFloat v = BigFloat(multiplier, precision) * pow(BigFloat::pi(precision), static_cast<long>(pi_power));
        if (radicand != 1) v = v / sqrt(BigFloat(static_cast<long>(radicand), precision));
        return v;
    }

    /// The base pi^pi_power / sqrt(radicand) that `multiplier` scales.
    BigFloat base(mpfr_prec_t precision) const {
        return ClosedForm{Rational(1), pi_power, radicand}.value(precision);
    }

    std::string to_string() const {
        const std::string pi = pi_power == 0 ? "" : pi_power == 1 ? "pi" : "pi^" + std::to_string(pi_power);
        std::string s = multiplier.get_num().get_str();
        if (!pi.empty()) s = multiplier.get_num() == 1 ? pi : s + "*" + pi;
        const bool has_den = multiplier.get_den() != 1 || radicand != 1;
        if (!has_den) return s;
        std::string den = multiplier.get_den() != 1 ? multiplier.get_den().get_str() : "";
        if (radicand != 1) den += (den.empty() ? "" : "*") + std::string("sqrt(") + std::to_string(radicand) + ")";
        const bool paren = multiplier.get_den() != 1 && radicand != 1;
        return s + "/" + (paren ? "(" + den + ")" : den);
    }

    friend bool operator==(const ClosedForm&, const ClosedForm&) = default;
};

}  // namespace qident
