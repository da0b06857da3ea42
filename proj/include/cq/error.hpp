#ifndef CQ_ERROR_HPP
#define CQ_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cq {

/// A request that is mathematically outside an operation's domain
/// (degree mismatch, parameter out of range, theorem hypotheses not met).
class DomainError : public std::domain_error {
public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Malformed textual input (graph files, fan files, 2-permutation syntax, ...).
class ParseError : public std::invalid_argument {
public:
  explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

/// An invariant of the computation itself was violated. Never expected to
/// fire; signals a bug in an engine rather than bad input.
class InternalError : public std::logic_error {
public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

} // namespace cq

#endif // CQ_ERROR_HPP
