#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace confract {

/// Broad failure classes. The CLI maps each class onto a process exit code.
enum class ErrorClass {
    parse,         // malformed expression or command line
    domain,        // argument outside the operation's domain or precondition
    accuracy,      // quadrature, series or contour did not reach tolerance
    verification,  // a checked identity failed
};

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), class_(cls) {}
    ErrorClass error_class() const noexcept { return class_; }

private:
    ErrorClass class_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorClass::domain, what) {}
};

/// A function evaluation produced a non-finite value.
class EvaluationError : public Error {
public:
    EvaluationError(const std::string& what, double where)
        : Error(ErrorClass::domain, what), where_(where) {}
    double where() const noexcept { return where_; }

private:
    double where_;
};

class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double residual)
        : Error(ErrorClass::accuracy, what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Re(s) at or left of the abscissa of convergence.
class DivergenceError : public Error {
public:
    explicit DivergenceError(const std::string& what) : Error(ErrorClass::domain, what) {}
};

class LookupError : public Error {
public:
    explicit LookupError(const std::string& what) : Error(ErrorClass::domain, what) {}
};

class TheoremInapplicableError : public Error {
public:
    explicit TheoremInapplicableError(const std::string& what) : Error(ErrorClass::domain, what) {}
};

class BoundaryTermError : public Error {
public:
    BoundaryTermError(const std::string& what, double spread)
        : Error(ErrorClass::accuracy, what), spread_(spread) {}
    double spread() const noexcept { return spread_; }

private:
    double spread_;
};

/// Bromwich line parameters leave a non-negligible imaginary residue.
class ContourError : public Error {
public:
    ContourError(const std::string& what, double imaginary_part)
        : Error(ErrorClass::accuracy, what), imaginary_part_(imaginary_part) {}
    double imaginary_part() const noexcept { return imaginary_part_; }

private:
    double imaginary_part_;
};

class IllConditionedPolesError : public Error {
public:
    explicit IllConditionedPolesError(const std::string& what) : Error(ErrorClass::accuracy, what) {}
};

class InconsistentPolesError : public Error {
public:
    explicit InconsistentPolesError(const std::string& what) : Error(ErrorClass::domain, what) {}
};

class StabilityError : public Error {
public:
    StabilityError(const std::string& what, std::size_t step)
        : Error(ErrorClass::domain, what), step_(step) {}
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset, std::vector<std::string> expected)
        : Error(ErrorClass::parse, what), offset_(offset), expected_(std::move(expected)) {}
    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

class VerificationError : public Error {
public:
    explicit VerificationError(const std::string& what) : Error(ErrorClass::verification, what) {}
};

}  // namespace confract
