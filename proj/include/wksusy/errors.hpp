#pragma once

#include <stdexcept>
#include <string>

namespace wksusy {

/// Base of every error thrown by the library. Verification failures are
/// never thrown; they are reported through RelationReport.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IndexError : public Error { using Error::Error; };
class DimensionError : public Error { using Error::Error; };
class WindowError : public Error { using Error::Error; };
class ShapeError : public Error { using Error::Error; };
class GradingError : public Error { using Error::Error; };
class UsageError : public Error { using Error::Error; };
class InsufficientDepthError : public Error { using Error::Error; };
class RepresentationError : public Error { using Error::Error; };
class UnderflowError : public Error { using Error::Error; };
class DegeneracyError : public Error { using Error::Error; };
class ConfigurationError : public Error { using Error::Error; };
class UnsupportedModelError : public Error { using Error::Error; };
class IoError : public Error { using Error::Error; };

/// F_s(n) < 0 where a real amplitude sqrt(F_s(n)) is required.
class ModelDomainError : public Error {
public:
    ModelDomainError(int s, int n, const std::string& what)
        : Error(what), grade_(s), level_(n) {}
    int grade() const noexcept { return grade_; }
    int level() const noexcept { return level_; }

private:
    int grade_;
    int level_;
};

/// H_s(n) < 0 for some n >= 1 while factorizing into ordinary subsystems.
class FactorizationDomainError : public Error {
public:
    FactorizationDomainError(int s, int n, const std::string& what)
        : Error(what), sector_(s), level_(n) {}
    int sector() const noexcept { return sector_; }
    int level() const noexcept { return level_; }

private:
    int sector_;
    int level_;
};

}  // namespace wksusy
