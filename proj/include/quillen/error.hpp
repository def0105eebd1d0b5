#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace quillen {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class CapExceeded : public Error {
public:
  CapExceeded(std::string what, std::size_t cap)
      : Error(what + " exceeds cap " + std::to_string(cap)), cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

private:
  std::size_t cap_;
};

class DegreeMismatch : public Error {
public:
  DegreeMismatch(std::size_t a, std::size_t b)
      : Error("degree mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class ElementNotInParent : public Error {
public:
  ElementNotInParent() : Error("element is not a member of the parent group") {}
};

class NotNormal : public Error {
public:
  NotNormal() : Error("subgroup is not normal") {}
};

class NotNormalizing : public Error {
public:
  NotNormalizing() : Error("subgroup does not normalize the target") {}
};

class PreconditionViolated : public Error {
public:
  explicit PreconditionViolated(const std::string& what)
      : Error("precondition violated: " + what) {}
};

class InternalError : public Error {
public:
  explicit InternalError(const std::string& what) : Error("internal error: " + what) {}
};

class NodeNotFound : public Error {
public:
  NodeNotFound() : Error("node not found in poset") {}
};

class NotAChain : public Error {
public:
  NotAChain() : Error("node sequence is not a chain") {}
};

class NotSubchain : public Error {
public:
  NotSubchain() : Error("first chain is not contained in the second") {}
};

class NotAInitial : public Error {
public:
  NotAInitial() : Error("chain is not a-initial") {}
};

class HypothesisCPViolated : public Error {
public:
  explicit HypothesisCPViolated(const std::string& what)
      : Error("hypothesis CP violated: " + what) {}
};

/// A named hypothesis of the homology propagation lemma failed, e.g. "(iv)".
class HypothesisViolated : public Error {
public:
  HypothesisViolated(std::string name, const std::string& what)
      : Error("hypothesis " + name + " violated: " + what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

private:
  std::string name_;
};

class ParseError : public Error {
public:
  explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

}  // namespace quillen
