#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace axfi {

/// Error categories. Each one maps to a distinct CLI exit code.
enum class ErrorKind {
  domain,    // a value lies outside its feature domain
  argument,  // a precondition on an argument does not hold
  resource,  // an enumeration cap would be exceeded
  method,    // the requested algorithm does not apply to the model kind
  schema,    // malformed input document
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& what) : Error(ErrorKind::argument, what) {}
};

class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what) : Error(ErrorKind::resource, what) {}
};

class MethodError : public Error {
 public:
  explicit MethodError(const std::string& what) : Error(ErrorKind::method, what) {}
};

class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& what) : Error(ErrorKind::schema, what) {}
};

}  // namespace axfi
