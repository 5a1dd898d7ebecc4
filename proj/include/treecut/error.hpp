#pragma once

#include <stdexcept>
#include <string>

namespace treecut {

// Base for every error raised by the library. Subclasses name the failure
// mode so callers (and the CLI) can tell validation problems from bugs.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define TREECUT_DEFINE_ERROR(Name)        \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  }

TREECUT_DEFINE_ERROR(ConstraintViolation);
TREECUT_DEFINE_ERROR(RootMismatch);
TREECUT_DEFINE_ERROR(OutOfRange);
TREECUT_DEFINE_ERROR(OverflowPolicy);
TREECUT_DEFINE_ERROR(DomainError);
TREECUT_DEFINE_ERROR(NonIntegrable);
TREECUT_DEFINE_ERROR(IllConditioned);
TREECUT_DEFINE_ERROR(MissingShift);
TREECUT_DEFINE_ERROR(Unsupported);
TREECUT_DEFINE_ERROR(ConfigError);

#undef TREECUT_DEFINE_ERROR

}  // namespace treecut
