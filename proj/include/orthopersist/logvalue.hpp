#pragma once

#include <cmath>
#include <cstdlib>

namespace orthopersist::specfun {

/// Signed log-space scalar: value = sign * exp(log_abs).
/// sign == 0 encodes exact zero (log_abs is then meaningless).
struct LogValue {
    int sign = 0;
    double log_abs = 0.0;

    static LogValue from_value(double v) {
        if (v == 0.0) return {0, 0.0};
        return {v > 0 ? +1 : -1, std::log(std::abs(v))};
    }
    static LogValue from_log(double lg, int sgn = +1) { return {sgn, lg}; }

    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

    LogValue operator*(const LogValue& o) const {
        if (sign == 0 || o.sign == 0) return {0, 0.0};
        return {sign * o.sign, log_abs + o.log_abs};
    }
    LogValue operator/(const LogValue& o) const {
        return {sign * o.sign, log_abs - o.log_abs};
    }
};

} // namespace orthopersist::specfun
