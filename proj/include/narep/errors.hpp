#pragma once

#include <stdexcept>
#include <string>

namespace narep {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// The working precision cannot certify the requested quantity.
class PrecisionExhausted : public Error {
  public:
    using Error::Error;
};

class NotReached : public Error {
  public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
  public:
    using Error::Error;
};

class BaseTooSmall : public Error {
  public:
    using Error::Error;
};

class NonExactDivision : public Error {
  public:
    using Error::Error;
};

class InvalidInstance : public Error {
  public:
    using Error::Error;
};

class HypothesisViolated : public Error {
  public:
    using Error::Error;
};

class EpsilonNeverPositive : public Error {
  public:
    using Error::Error;
};

class ConfigError : public Error {
  public:
    using Error::Error;
};

} // namespace narep
