#pragma once

#include <stdexcept>
#include <string>

namespace sunit {

// All library failures derive from Error; the CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

class ArithmeticOverflow : public Error {
 public:
  using Error::Error;
};

class FactorizationLimit : public Error {
 public:
  using Error::Error;
};

class InsufficientPrimes : public Error {
 public:
  using Error::Error;
};

// Raised whenever a configured effort/memory budget would be exceeded.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class EnumerationCap : public ResourceLimit {
 public:
  using ResourceLimit::ResourceLimit;
};

class ConstraintViolation : public Error {
 public:
  ConstraintViolation(std::string inequality, const std::string& what)
      : Error(what), inequality_(std::move(inequality)) {}
  const std::string& inequality() const noexcept { return inequality_; }

 private:
  std::string inequality_;
};

class DuplicateProducts : public Error {
 public:
  using Error::Error;
};

class EmptyHarvest : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what) : Error(what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace sunit
