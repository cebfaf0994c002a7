#ifndef CSGEMOS_ERRORS_HPP
#define CSGEMOS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace csgemos {

// Broad failure classes, mapped onto CLI exit codes.
enum class ErrorCode {
  Config = 2,   // bad configuration or arguments
  Data = 3,     // missing/inconsistent input data
  Numeric = 4,  // numerical failure (quadrature, degenerate fit, ...)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error(ErrorCode::Config, msg) {}
};

struct DataError : Error {
  explicit DataError(const std::string& msg) : Error(ErrorCode::Data, msg) {}
};

struct DomainError : Error {
  explicit DomainError(const std::string& msg) : Error(ErrorCode::Numeric, msg) {}
};

struct QuadratureFailure : Error {
  explicit QuadratureFailure(const std::string& msg) : Error(ErrorCode::Numeric, msg) {}
};

struct InsufficientData : DataError {
  explicit InsufficientData(const std::string& msg) : DataError(msg) {}
};

struct EmptyWindow : DataError {
  explicit EmptyWindow(const std::string& msg) : DataError(msg) {}
};

struct ArityError : Error {
  explicit ArityError(const std::string& msg) : Error(ErrorCode::Config, msg) {}
};

struct UnknownLocation : DataError {
  explicit UnknownLocation(const std::string& msg) : DataError(msg) {}
};

struct ZeroReference : Error {
  explicit ZeroReference(const std::string& msg) : Error(ErrorCode::Numeric, msg) {}
};

struct InsufficientSeries : DataError {
  explicit InsufficientSeries(const std::string& msg) : DataError(msg) {}
};

struct DegenerateHistogram : Error {
  explicit DegenerateHistogram(const std::string& msg) : Error(ErrorCode::Numeric, msg) {}
};

}  // namespace csgemos

#endif  // CSGEMOS_ERRORS_HPP
