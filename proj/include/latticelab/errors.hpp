#ifndef LATTICELAB_ERRORS_HPP
#define LATTICELAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace latticelab {

/// Mathematical precondition violated by the inputs (pole, cap, non-invertible
/// operator, disconnected graph, ...). The CLI maps these to exit status 3.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

class PoleError : public DomainError {
 public:
  explicit PoleError(const std::string& what) : DomainError(what) {}
};

class CapError : public DomainError {
 public:
  explicit CapError(const std::string& what) : DomainError(what) {}
};

/// Operands whose shapes (local dimension, site count, strand count) differ.
class ShapeError : public std::invalid_argument {
 public:
  explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

/// Malformed textual or JSON input. The CLI maps these to exit status 2.
class ParseError : public std::invalid_argument {
 public:
  explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace latticelab

#endif  // LATTICELAB_ERRORS_HPP
