#pragma once

#include <stdexcept>
#include <string>

namespace logsyn {

// Arithmetic on values with different (p, N) contexts. Always a caller bug.
struct PrecisionMismatch : std::logic_error {
    explicit PrecisionMismatch(const std::string& what) : std::logic_error(what) {}
};

// d1 * d0 != 0 for an assembled complex; signals a model-construction bug.
struct CompositionNotZero : std::runtime_error {
    explicit CompositionNotZero(const std::string& what) : std::runtime_error(what) {}
};

// Ghost-coordinate inversion produced a non-integer.
struct NonIntegralUnghost : std::runtime_error {
    explicit NonIntegralUnghost(const std::string& what) : std::runtime_error(what) {}
};

// Divided Frobenius asked to divide by more powers of p than the entry carries.
struct NegativeDividedPower : std::runtime_error {
    explicit NegativeDividedPower(const std::string& what) : std::runtime_error(what) {}
};

// Query for a basis element the model does not have (nonlog degree 1, weight 0).
struct NoSuchBasisElement : std::domain_error {
    explicit NoSuchBasisElement(const std::string& what) : std::domain_error(what) {}
};

// Orbit homology did not settle within the cutoff budget.
struct StabilizationFailure : std::runtime_error {
    explicit StabilizationFailure(const std::string& what) : std::runtime_error(what) {}
};

// An orbit predicted to vanish came back nonzero.
struct UnexpectedOrbitContribution : std::runtime_error {
    explicit UnexpectedOrbitContribution(const std::string& what) : std::runtime_error(what) {}
};

// Assembled homotopy table disagrees with the syntomic data it was built from.
struct CrossCheckFailure : std::runtime_error {
    explicit CrossCheckFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace logsyn
