#ifndef PIR_ERRORS_HPP
#define PIR_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pir {

/* Base class for all toolkit failures. */
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/* Invalid field arithmetic: division by zero, non-prime modulus. */
class FieldError : public Error {
 public:
  using Error::Error;
};

/* Inconsistent or out-of-range scheme parameters. */
class ParamError : public Error {
 public:
  using Error::Error;
};

/* Systematic completion impossible at the chosen parity positions. */
class EncodingError : public Error {
 public:
  using Error::Error;
};

/* Decode system underdetermined or inconsistent. */
class DecodeError : public Error {
 public:
  using Error::Error;
};

/* Malformed wire frame. */
class WireError : public Error {
 public:
  using Error::Error;
};

/* Protocol session failure attributed to one node (1-based index, 0 = client side). */
class SessionError : public Error {
 public:
  SessionError(std::size_t node, const std::string& what)
      : Error("node " + std::to_string(node) + ": " + what), node_(node) {}
  std::size_t node() const { return node_; }

 private:
  std::size_t node_;
};

/* Scheme failed certification where a certified scheme is required. */
class CertificationError : public Error {
 public:
  using Error::Error;
};

/* Brute-force enumeration size exceeds the configured budget. */
class BudgetError : public Error {
 public:
  using Error::Error;
};

/* Scheme file or record file cannot be parsed. */
class ParseError : public Error {
 public:
  using Error::Error;
};

/* Random search for a certified scheme exhausted its retry budget. */
class ConstructError : public Error {
 public:
  using Error::Error;
};

}  // namespace pir

#endif  // PIR_ERRORS_HPP
