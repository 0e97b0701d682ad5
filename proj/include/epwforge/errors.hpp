#pragma once

#include <stdexcept>
#include <string>

namespace epwforge {

/// Base of every library error.  `kind()` is the stable name printed by the CLI.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what) : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define EPWFORGE_ERROR(Name)                                                  \
  class Name : public Error {                                                 \
   public:                                                                    \
    explicit Name(const std::string& what) : Error(#Name, what) {}            \
  }

EPWFORGE_ERROR(ContractViolation);
EPWFORGE_ERROR(WrongStratum);
EPWFORGE_ERROR(InternalInconsistency);
EPWFORGE_ERROR(NotIsotropic);
EPWFORGE_ERROR(DegenerateSextic);
EPWFORGE_ERROR(DivisionFailure);
EPWFORGE_ERROR(CensusMismatch);
EPWFORGE_ERROR(SingularPoint);
EPWFORGE_ERROR(FieldMismatch);
EPWFORGE_ERROR(ParseError);
EPWFORGE_ERROR(InvariantViolation);
EPWFORGE_ERROR(UsageError);

#undef EPWFORGE_ERROR

}  // namespace epwforge
