#pragma once

#include <stdexcept>
#include <string>

namespace sfcaas {

// Configuration and input errors are thrown; algorithmic outcomes
// (rejections, infeasibility, exhausted budgets) are returned as values.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class NoPath : public Error {
 public:
  using Error::Error;
};

class InsufficientResources : public Error {
 public:
  using Error::Error;
};

class InvalidRelease : public Error {
 public:
  using Error::Error;
};

class UnknownVnf : public Error {
 public:
  using Error::Error;
};

class UnknownFlavor : public Error {
 public:
  using Error::Error;
};

class UnknownPop : public Error {
 public:
  using Error::Error;
};

class UnpinnedEndpoint : public Error {
 public:
  using Error::Error;
};

class ZeroCapacity : public Error {
 public:
  using Error::Error;
};

class InvalidEmbedding : public Error {
 public:
  using Error::Error;
};

}  // namespace sfcaas
