#pragma once

// Exception hierarchy. Every error carries the process exit code the CLI
// reports for it:
//   2  input or domain error
//   3  halting-level search exhausted
//   4  zero-separation failure
//   5  internal invariant violation

#include <stdexcept>
#include <string>

namespace nadescent {

enum class ExitCode : int {
    kOk = 0,
    kInput = 2,
    kBoundSearchExhausted = 3,
    kSeparationFailure = 4,
    kInternal = 5,
};

class Error : public std::runtime_error {
public:
    Error(ExitCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ExitCode exit_code() const noexcept { return code_; }

private:
    ExitCode code_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ExitCode::kInput, what) {}
};

// Raised when a computed quantity contradicts an invariant the math
// guarantees; indicates a bug or a falsified assumption, never bad input.
class InvariantViolation : public Error {
public:
    explicit InvariantViolation(const std::string& what) : Error(ExitCode::kInternal, what) {}
};

class PrimeMismatch : public DomainError {
public:
    PrimeMismatch(unsigned long a, unsigned long b)
        : DomainError("p-adic prime mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class PrecisionError : public Error {
public:
    explicit PrecisionError(const std::string& what)
        : Error(ExitCode::kSeparationFailure, what) {}
};

class AllCoefficientsIndistinguishableFromZero : public PrecisionError {
public:
    AllCoefficientsIndistinguishableFromZero()
        : PrecisionError("all coefficients below the tail guarantee are indistinguishable from zero") {}
};

class PrecisionTooLowForHull : public PrecisionError {
public:
    explicit PrecisionTooLowForHull(const std::string& what)
        : PrecisionError("precision too low for Newton polygon: " + what) {}
};

// Iterated-integral bookkeeping lost every known digit of a coefficient.
class PrecisionExhausted : public Error {
public:
    explicit PrecisionExhausted(const std::string& what)
        : Error(ExitCode::kInput, "precision exhausted: " + what) {}
};

// No halting level within the searched range of n.
class NotFoundWithin : public Error {
public:
    explicit NotFoundWithin(long n_cap)
        : Error(ExitCode::kBoundSearchExhausted, "no halting level t <= n_cap = " + std::to_string(n_cap)),
          n_cap_(n_cap) {}

    long n_cap() const noexcept { return n_cap_; }

private:
    long n_cap_;
};

class SeparationFailed : public Error {
public:
    explicit SeparationFailed(const std::string& what) : Error(ExitCode::kSeparationFailure, what) {}
};

class FactorizationTimeout : public Error {
public:
    explicit FactorizationTimeout(const std::string& what)
        : Error(ExitCode::kInput, "factorization timeout: " + what) {}
};

}  // namespace nadescent
