#ifndef NORMTORUS_ERROR_HPP
#define NORMTORUS_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace normtorus {

// Exit status families used by the command line front end.
enum class ErrorKind {
  Input = 2,
  Budget = 3,
  Hypothesis = 4,
  Inconsistency = 5,
  Usage = 1,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), kind_(kind), name_(std::move(name)) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
  [[nodiscard]] const std::string& name() const noexcept { return name_; }

 private:
  ErrorKind kind_;
  std::string name_;
};

#define NORMTORUS_ERROR(Name, Kind)                                          \
  class Name : public Error {                                                \
   public:                                                                   \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, #Name, what) {} \
  }

NORMTORUS_ERROR(NonAssociativeTable, Input);
NORMTORUS_ERROR(BadIdentity, Input);
NORMTORUS_ERROR(ElementOutOfRange, Input);
NORMTORUS_ERROR(NotNormal, Hypothesis);
NORMTORUS_ERROR(NotCyclic, Hypothesis);
NORMTORUS_ERROR(ContextMismatch, Usage);
NORMTORUS_ERROR(UnsupportedShape, Usage);
NORMTORUS_ERROR(ValidationError, Input);
NORMTORUS_ERROR(ComplexityLimitExceeded, Budget);
NORMTORUS_ERROR(HypothesisViolated, Hypothesis);
NORMTORUS_ERROR(InternalInconsistency, Inconsistency);
NORMTORUS_ERROR(ReciprocityViolation, Inconsistency);
NORMTORUS_ERROR(ZeroArgument, Input);
NORMTORUS_ERROR(UnsupportedMagnitude, Budget);
NORMTORUS_ERROR(CorruptCacheEntry, Input);

#undef NORMTORUS_ERROR

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error(ErrorKind::Input, "ParseError", "line " + std::to_string(line) + ": " + reason),
        line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace normtorus

#endif  // NORMTORUS_ERROR_HPP
