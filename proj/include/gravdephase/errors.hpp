#ifndef GRAVDEPHASE_ERRORS_HPP
#define GRAVDEPHASE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gravdephase {

/// Malformed or schema-violating scenario input (bad JSON, unknown key,
/// missing or mutually exclusive unit keys). CLI exit code 2.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A value violates a stated domain invariant (negative mass, weights that
/// do not sum to one, unsorted time grid). CLI exit code 3.
class ValidationError : public std::invalid_argument {
public:
  explicit ValidationError(const std::string& what)
      : std::invalid_argument(what) {}
};

/// Numerically meaningless request: quadrature window too short, log-spaced
/// grid starting at zero, sample counts beyond what is feasible.
/// CLI exit code 4.
class NumericDomainError : public std::domain_error {
public:
  explicit NumericDomainError(const std::string& what)
      : std::domain_error(what) {}
};

}  // namespace gravdephase

#endif  // GRAVDEPHASE_ERRORS_HPP
