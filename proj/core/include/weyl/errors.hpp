#ifndef WEYL_ERRORS_HPP
#define WEYL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace weyl {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error(what) {}
};

class SignatureError : public Error {
 public:
  explicit SignatureError(const std::string& what) : Error(what) {}
};

class ModelMismatch : public Error {
 public:
  explicit ModelMismatch(const std::string& what) : Error(what) {}
};

class InvalidSlot : public Error {
 public:
  explicit InvalidSlot(const std::string& what) : Error(what) {}
};

class NotAntisymmetric : public Error {
 public:
  explicit NotAntisymmetric(const std::string& what) : Error(what) {}
};

class WrongSymmetry : public Error {
 public:
  explicit WrongSymmetry(const std::string& what) : Error(what) {}
};

class NotWeyl : public Error {
 public:
  explicit NotWeyl(const std::string& what) : Error(what) {}
};

class RequiresExactMode : public Error {
 public:
  explicit RequiresExactMode(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

class SingularMetric : public Error {
 public:
  explicit SingularMetric(const std::string& what) : Error(what) {}
};

class BoundaryError : public Error {
 public:
  explicit BoundaryError(const std::string& what) : Error(what) {}
};

/// Thrown when an operation needs tau > 0; carries which stratum the point
/// fell into (tau = 0 or tau < 0).
class NonpositiveScalarCurvature : public Error {
 public:
  enum class Stratum { Zero, Negative };
  NonpositiveScalarCurvature(const std::string& what, Stratum s)
      : Error(what), stratum(s) {}
  Stratum stratum;
};

}  // namespace weyl

#endif
