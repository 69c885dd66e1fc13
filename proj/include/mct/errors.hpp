#ifndef MCT_ERRORS_HPP
#define MCT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mct {

// Error taxonomy shared by all engines.  The CLI maps categories to exit
// codes: certificate failures -> 1, bad input/config -> 2, resource caps -> 3.
enum class ErrorCode {
    // metric spaces
    NonSymmetric,
    NegativeDistance,
    TriangleViolation,
    NonZeroDiagonal,
    SizeLimit,
    // covering engines
    EmptyFamily,
    InfeasibleCover,
    LpFailure,
    Uncoverable,
    Unbounded,
    FamilyBlowup,
    TooLarge,
    TooDeep,
    WitnessInvalid,
    DomainError,
    // certificates / plumbing
    CertificateFailure,
    ConfigError,
    IoError,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

    // 1 = failed mathematical certificate, 2 = bad input, 3 = resource cap
    int exit_code() const {
        switch (code_) {
            case ErrorCode::SizeLimit:
            case ErrorCode::FamilyBlowup:
            case ErrorCode::TooLarge:
            case ErrorCode::TooDeep:
                return 3;
            case ErrorCode::LpFailure:
            case ErrorCode::CertificateFailure:
            case ErrorCode::WitnessInvalid:
                return 1;
            default:
                return 2;
        }
    }

private:
    ErrorCode code_;
};

const char* error_code_name(ErrorCode code);

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace mct

#endif
