#pragma once

#include <stdexcept>
#include <string>

namespace quasiortho {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GroupError : public Error {
 public:
  enum class Code {
    Empty,
    NotSquare,
    EntryOutOfRange,
    NotLatin,
    NotAssociative,
    NoIdentity,
    TooLarge,
    BadParameter,
  };

  GroupError(Code code, const std::string& what) : Error(what), code_(code) {}
  Code code() const noexcept { return code_; }

 private:
  Code code_;
};

/// Malformed input in the Cayley-table text format.
class FormatError : public Error {
 public:
  using Error::Error;
};

class MorphismError : public Error {
 public:
  enum class Code { Malformed, OrderCapExceeded };

  MorphismError(Code code, const std::string& what) : Error(what), code_(code) {}
  Code code() const noexcept { return code_; }

 private:
  Code code_;
};

/// Raised by expression evaluation; `subtree()` names the offending node.
class ExprError : public Error {
 public:
  ExprError(const std::string& what, std::string subtree)
      : Error(what + ": " + subtree), subtree_(std::move(subtree)) {}
  const std::string& subtree() const noexcept { return subtree_; }

 private:
  std::string subtree_;
};

class FormError : public Error {
 public:
  enum class Code {
    TagMismatch,
    NonAbelianCarrier,
    NotAbsorbable,
    UnsupportedClass,
    NotLatin,
    Malformed,
  };

  FormError(Code code, const std::string& what) : Error(what), code_(code) {}
  Code code() const noexcept { return code_; }

 private:
  Code code_;
};

class OrthogonalityError : public Error {
 public:
  enum class Code {
    OrderMismatch,
    ClassMismatch,
    QuantifierMismatch,
    UnsupportedClass,
    IdentityParastrophe,
    CrossCheckFailed,
    Infeasible,
  };

  OrthogonalityError(Code code, const std::string& what) : Error(what), code_(code) {}
  Code code() const noexcept { return code_; }

 private:
  Code code_;
};

}  // namespace quasiortho
