#pragma once

#include <stdexcept>
#include <string>

namespace pcn {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotAPrimePower : Error {
  explicit NotAPrimePower(const std::string& msg) : Error(msg) {}
};

struct FactorizationTimeout : Error {
  explicit FactorizationTimeout(const std::string& msg) : Error(msg) {}
};

struct NotCoprime : Error {
  explicit NotCoprime(const std::string& msg) : Error(msg) {}
};

struct DomainError : Error {
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

struct HypothesisViolated : Error {
  explicit HypothesisViolated(const std::string& msg) : Error(msg) {}
};

struct SizeLimit : Error {
  explicit SizeLimit(const std::string& msg) : Error(msg) {}
};

struct ZeroElement : Error {
  explicit ZeroElement(const std::string& msg) : Error(msg) {}
};

struct PrimeNotDivisor : Error {
  explicit PrimeNotDivisor(const std::string& msg) : Error(msg) {}
};

struct DeltaNonPositive : Error {
  explicit DeltaNonPositive(const std::string& msg) : Error(msg) {}
};

struct UndecidedComparison : Error {
  explicit UndecidedComparison(const std::string& msg) : Error(msg) {}
};

}  // namespace pcn
