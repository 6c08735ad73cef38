#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace seacot {

// Base of every error raised by the harness. Subclasses name the failure
// contract; callers that only need a message can catch Error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Backend / transport layer.
class TransportError : public Error {
 public:
  using Error::Error;
};

class RateLimited : public TransportError {
 public:
  using TransportError::TransportError;
};

// Non-retryable HTTP rejection (4xx other than 429).
class RequestRejected : public Error {
 public:
  RequestRejected(int status, const std::string& body)
      : Error("backend rejected request (HTTP " + std::to_string(status) + "): " + body), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

class MalformedResponse : public Error {
 public:
  using Error::Error;
};

class MissingLogprobs : public Error {
 public:
  using Error::Error;
};

class NoOptionMatched : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Pipelines.
class UnparseableAnswer : public Error {
 public:
  using Error::Error;
};

class NoParseableSamples : public Error {
 public:
  using Error::Error;
};

class EmptyDecomposition : public Error {
 public:
  using Error::Error;
};

// Perturbation.
class ModifierFailure : public Error {
 public:
  using Error::Error;
};

class DegenerateCounterfactual : public Error {
 public:
  using Error::Error;
};

// Metrics and reporting.
class EmptyDenominator : public Error {
 public:
  using Error::Error;
};

class InsufficientTechniques : public Error {
 public:
  using Error::Error;
};

class MissingQuality : public Error {
 public:
  MissingQuality(std::string technique, std::string quality)
      : Error("technique " + technique + " is missing quality " + quality),
        technique_(std::move(technique)),
        quality_(std::move(quality)) {}
  const std::string& technique() const { return technique_; }
  const std::string& quality() const { return quality_; }

 private:
  std::string technique_;
  std::string quality_;
};

// Ingestion.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class DriftError : public Error {
 public:
  explicit DriftError(std::vector<std::string> drifted)
      : Error(describe(drifted)), drifted_(std::move(drifted)) {}
  const std::vector<std::string>& drifted() const { return drifted_; }

 private:
  static std::string describe(const std::vector<std::string>& names) {
    std::string msg = "hash drift since generation:";
    for (const auto& n : names) msg += " " + n;
    return msg;
  }
  std::vector<std::string> drifted_;
};

}  // namespace seacot
