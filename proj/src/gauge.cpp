#include "mct/gauge.hpp"

#include <cmath>

#include "mct/errors.hpp"

namespace mct {

double omega(double s) {
    require(std::isfinite(s) && s >= 0.0, ErrorCode::DomainError,
            "omega: exponent must be finite and nonnegative");
    require(s <= kGaugeMaxExponent, ErrorCode::DomainError,
            "omega: exponent above supported range [0, 64]");
    // log omega_s = (s/2) log pi - lgamma(s/2 + 1); lgamma carries the
    // Lanczos-style log-space evaluation and is closed-form checked in tests.
    double lg = std::lgamma(s / 2.0 + 1.0);
    return std::exp(0.5 * s * std::log(M_PI) - lg);
}

double zeta(double s, double diam, bool nonempty) {
    require(diam >= 0.0, ErrorCode::DomainError, "zeta: negative diameter");
    require(s >= 0.0, ErrorCode::DomainError, "zeta: negative exponent");
    if (!nonempty) return 0.0;
    if (s == 0.0) return 1.0;  // zeta^0(A) = 1 for A != empty
    if (diam == 0.0) return 0.0;
    if (std::isinf(diam)) return HUGE_VAL;
    return omega(s) * std::pow(diam / 2.0, s);
}

Rat zeta_cost(double s, double diam, bool nonempty) {
    return rat_from_double(zeta(s, diam, nonempty));
}

double coarea_constant(double s_total, double t) {
    require(t >= 0.0 && t <= s_total, ErrorCode::DomainError,
            "coarea_constant: need 0 <= t <= s");
    return omega(s_total - t) * omega(t) / omega(s_total);
}

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonSymmetric: return "NonSymmetric";
        case ErrorCode::NegativeDistance: return "NegativeDistance";
        case ErrorCode::TriangleViolation: return "TriangleViolation";
        case ErrorCode::NonZeroDiagonal: return "NonZeroDiagonal";
        case ErrorCode::SizeLimit: return "SizeLimit";
        case ErrorCode::EmptyFamily: return "EmptyFamily";
        case ErrorCode::InfeasibleCover: return "InfeasibleCover";
        case ErrorCode::LpFailure: return "LpFailure";
        case ErrorCode::Uncoverable: return "Uncoverable";
        case ErrorCode::Unbounded: return "Unbounded";
        case ErrorCode::FamilyBlowup: return "FamilyBlowup";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::TooDeep: return "TooDeep";
        case ErrorCode::WitnessInvalid: return "WitnessInvalid";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::CertificateFailure: return "CertificateFailure";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace mct
