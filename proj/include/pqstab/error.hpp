#pragma once

#include <stdexcept>
#include <string>

namespace pqstab {

// Malformed or structurally invalid input (parse errors, non-convex polygons,
// disconnected subtrees, cyclic order relations). `context` names the field
// or location when one is known.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& message, std::string context = {})
      : std::runtime_error(context.empty() ? message : context + ": " + message),
        context_(std::move(context)) {}

  const std::string& context() const noexcept { return context_; }

 private:
  std::string context_;
};

// An operation was called outside its documented precondition.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A promise the caller made about the input (e.g. "some k sets share a
// point") turned out to be false.
class PromiseViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exhaustive oracle refused to run because the instance exceeds its
// configured size guard.
class SizeGuardError : public std::runtime_error {
 public:
  SizeGuardError(std::string guard, const std::string& message)
      : std::runtime_error(guard + ": " + message), guard_(std::move(guard)) {}

  const std::string& guard() const noexcept { return guard_; }

 private:
  std::string guard_;
};

}  // namespace pqstab
