#ifndef VOTEAGG_ERRORS_HPP
#define VOTEAGG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace voteagg {

// Input file could not be parsed; message carries the file and line number.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Domain invariant violated (duplicate vote, out-of-range id, empty result, ...).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace voteagg

#endif  // VOTEAGG_ERRORS_HPP
