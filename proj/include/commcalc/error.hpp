#ifndef COMMCALC_ERROR_HPP
#define COMMCALC_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace commcalc {

/// Base class of every error raised by the library. `code()` is a stable
/// machine-readable identifier used in CLI reports.
class Error : public std::runtime_error {
public:
  Error(std::string code, std::string const &what)
      : std::runtime_error(what), code_(std::move(code)) {}

  std::string const &code() const noexcept { return code_; }

private:
  std::string code_;
};

namespace detail {

inline std::string join_witness(std::vector<std::size_t> const &w) {
  std::string out = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i)
      out += ",";
    out += std::to_string(w[i]);
  }
  return out + ")";
}

} // namespace detail

class AxiomViolation : public Error {
public:
  AxiomViolation(std::string op, std::vector<std::size_t> witness)
      : Error("AxiomViolation", "axiom '" + op + "' fails at " +
                                    detail::join_witness(witness)),
        op_(std::move(op)), witness_(std::move(witness)) {}

  std::string const &op() const noexcept { return op_; }
  std::vector<std::size_t> const &witness() const noexcept { return witness_; }

private:
  std::string op_;
  std::vector<std::size_t> witness_;
};

class NonQuasigroup : public Error {
public:
  NonQuasigroup(bool is_row, std::size_t line, std::size_t duplicate)
      : Error("NonQuasigroup",
              std::string(is_row ? "row " : "column ") + std::to_string(line) +
                  " repeats entry " + std::to_string(duplicate)),
        is_row_(is_row), line_(line), duplicate_(duplicate) {}

  bool is_row() const noexcept { return is_row_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t duplicate() const noexcept { return duplicate_; }

private:
  bool is_row_;
  std::size_t line_;
  std::size_t duplicate_;
};

class ShapeError : public Error {
public:
  explicit ShapeError(std::string const &what) : Error("ShapeError", what) {}
};

class NotHomomorphism : public Error {
public:
  NotHomomorphism(std::string op, std::vector<std::size_t> witness)
      : Error("NotHomomorphism", "map does not preserve '" + op + "' at " +
                                     detail::join_witness(witness)),
        op_(std::move(op)), witness_(std::move(witness)) {}

  std::string const &op() const noexcept { return op_; }
  std::vector<std::size_t> const &witness() const noexcept { return witness_; }

private:
  std::string op_;
  std::vector<std::size_t> witness_;
};

class ParseError : public Error {
public:
  ParseError(std::size_t position, std::string expected)
      : Error("ParseError", "at position " + std::to_string(position) +
                                ": expected " + expected),
        position_(position), expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  std::string const &expected() const noexcept { return expected_; }

private:
  std::size_t position_;
  std::string expected_;
};

class UnboundLetter : public Error {
public:
  explicit UnboundLetter(std::string const &letter)
      : Error("UnboundLetter", "letter '" + letter + "' has no assignment") {}
};

class UnsupportedOperation : public Error {
public:
  explicit UnsupportedOperation(std::string const &what)
      : Error("UnsupportedOperation", what) {}
};

class WrongKind : public Error {
public:
  explicit WrongKind(std::string const &what) : Error("WrongKind", what) {}
};

class NotNormal : public Error {
public:
  explicit NotNormal(std::string const &which)
      : Error("NotNormal", "subobject " + which + " is not normal") {}
};

class PreconditionFailed : public Error {
public:
  PreconditionFailed(std::string const &what, std::vector<std::size_t> witness)
      : Error("PreconditionFailed", what), witness_(std::move(witness)) {}

  std::vector<std::size_t> const &witness() const noexcept { return witness_; }

private:
  std::vector<std::size_t> witness_;
};

/// Two independent computations of the same quantity disagreed. This always
/// signals a defect and is never a legitimate answer.
class InternalInconsistency : public Error {
public:
  explicit InternalInconsistency(std::string const &what)
      : Error("InternalInconsistency", what) {}
};

class NotAnAction : public Error {
public:
  NotAnAction(std::string const &what, std::vector<std::size_t> witness)
      : Error("NotAnAction", what), witness_(std::move(witness)) {}

  std::vector<std::size_t> const &witness() const noexcept { return witness_; }

private:
  std::vector<std::size_t> witness_;
};

class NotPrecrossed : public Error {
public:
  NotPrecrossed()
      : Error("NotPrecrossed",
              "boundary is not equivariant: no induced codomain map exists") {}
};

class InvalidSquare : public Error {
public:
  explicit InvalidSquare(std::string const &what)
      : Error("InvalidSquare", what) {}
};

class UnknownEntry : public Error {
public:
  explicit UnknownEntry(std::string const &name)
      : Error("UnknownEntry", "unknown catalog entry '" + name + "'") {}
};

class BadParams : public Error {
public:
  explicit BadParams(std::string const &what) : Error("BadParams", what) {}
};

class IoError : public Error {
public:
  explicit IoError(std::string const &what) : Error("IoError", what) {}
};

class FormatError : public Error {
public:
  FormatError(std::size_t line, std::string reason)
      : Error("FormatError",
              "line " + std::to_string(line) + ": " + reason),
        line_(line), reason_(std::move(reason)) {}

  std::size_t line() const noexcept { return line_; }
  std::string const &reason() const noexcept { return reason_; }

private:
  std::size_t line_;
  std::string reason_;
};

} // namespace commcalc

#endif
