#ifndef NLRABI_ERRORS_HPP
#define NLRABI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nlrabi {

// Coarse failure classes, mapped to CLI exit codes (2 invalid input,
// 3 numerical failure, 4 I/O).
enum class ErrorCategory { invalid_input, numerical, io };

class Error : public std::runtime_error {
  public:
    Error(ErrorCategory category, const std::string& msg)
        : std::runtime_error(msg), category_(category) {}
    ErrorCategory category() const { return category_; }

  private:
    ErrorCategory category_;
};

// |g2| >= omega/2: Hamiltonian unbounded below, truncated results do not converge.
struct CollapseRegime : Error {
    explicit CollapseRegime(const std::string& msg) : Error(ErrorCategory::invalid_input, msg) {}
};

struct NonPositiveFrequency : Error {
    explicit NonPositiveFrequency(const std::string& msg)
        : Error(ErrorCategory::invalid_input, msg) {}
};

struct UnsupportedParameter : Error {
    explicit UnsupportedParameter(const std::string& msg)
        : Error(ErrorCategory::invalid_input, msg) {}
};

struct DimensionTooLarge : Error {
    explicit DimensionTooLarge(const std::string& msg) : Error(ErrorCategory::numerical, msg) {}
};

struct NoConvergence : Error {
    NoConvergence(const std::string& msg, int iterations, double best_residual)
        : Error(ErrorCategory::numerical, msg),
          iterations(iterations),
          best_residual(best_residual) {}
    int iterations;
    double best_residual;
};

struct DegenerateGround : Error {
    explicit DegenerateGround(const std::string& msg) : Error(ErrorCategory::numerical, msg) {}
};

struct QuadratureStalled : Error {
    QuadratureStalled(const std::string& msg, int evaluations)
        : Error(ErrorCategory::numerical, msg), evaluations(evaluations) {}
    int evaluations;
};

struct BiasNeedsNonlinearity : Error {
    explicit BiasNeedsNonlinearity(const std::string& msg)
        : Error(ErrorCategory::invalid_input, msg) {}
};

struct NoInteriorPeak : Error {
    explicit NoInteriorPeak(const std::string& msg) : Error(ErrorCategory::numerical, msg) {}
};

struct GridTooNarrow : Error {
    explicit GridTooNarrow(const std::string& msg) : Error(ErrorCategory::invalid_input, msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(ErrorCategory::invalid_input, msg) {}
};

struct InvalidSpec : Error {
    explicit InvalidSpec(const std::string& msg) : Error(ErrorCategory::invalid_input, msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(ErrorCategory::io, msg) {}
};

// Generic precondition violation (bad k, bad bracket, ...).
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(ErrorCategory::invalid_input, msg) {}
};

}  // namespace nlrabi

#endif
