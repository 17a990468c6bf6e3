// errors.hpp - exception types thrown by the parsing and analytics layers

#pragma once
#ifndef CITEKEYS_ERRORS_HPP
#define CITEKEYS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace citekeys {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A \begin{thebibliography} without a matching \end (or a nested begin).
struct UnbalancedEnvironment : Error {
  using Error::Error;
};

// A \bibitemstart with no matching \bibitemend in the same block.
struct DanglingBibitemstart : Error {
  using Error::Error;
};

// A citation command with no {key} group after it.
struct MissingKey : Error {
  using Error::Error;
};

// Author text was empty where a nonempty string is required.
struct EmptyAuthorText : Error {
  using Error::Error;
};

// Training set is missing one of the two classes.
struct DegenerateTraining : Error {
  using Error::Error;
};

// Similarity metrics on an empty string: no match by definition.
struct DegenerateInput : Error {
  using Error::Error;
};

// A paper with no keyed citations cannot have a pattern matching ratio.
struct NoCitations : Error {
  using Error::Error;
};

// Affinity requested for a term that never occurs in titles or author names.
struct TermUnseen : Error {
  using Error::Error;
};

// Unreadable input file; the surrounding run continues.
struct IoError : Error {
  using Error::Error;
};

// Malformed configuration (unknown key, out-of-range value).
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace citekeys

#endif  // CITEKEYS_ERRORS_HPP
