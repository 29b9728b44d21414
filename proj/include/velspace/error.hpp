#pragma once

#include <stdexcept>
#include <string>

namespace velspace {

/// Invalid input: non-finite components, superluminal speeds, out-of-range
/// coordinates, malformed rotations.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A numerical procedure failed (singular Jacobian, negative determinant,
/// quadrature non-convergence).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// A requested quantity is infinite: region or ball touching the light
/// sphere |beta| = 1.
class DivergenceError : public DomainError {
 public:
  explicit DivergenceError(const std::string& what) : DomainError(what) {}
};

/// Evaluation at a point where the map is singular (e.g. the Jacobian of a
/// boost straight into the particle frame).
class SingularPointError : public DomainError {
 public:
  explicit SingularPointError(const std::string& what) : DomainError(what) {}
};

}  // namespace velspace
