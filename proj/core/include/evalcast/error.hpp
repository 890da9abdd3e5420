#pragma once

#include <stdexcept>
#include <string>

namespace evalcast {

// Base for every failure raised by the library. Messages carry the file,
// model or row context needed to locate the problem.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (CSV content, dataset invariants).
class DataError : public Error {
 public:
  using Error::Error;
};

// A caller supplied an argument outside an operation's domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace evalcast
