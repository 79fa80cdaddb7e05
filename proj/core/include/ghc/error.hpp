#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ghc {

enum class ErrorCode {
  SingularMatrix,
  NotHyperbolic,
  NearBoundary,
  OutsideChart,
  NotInBox,
  NotCertified,
  CapExceeded,
  EmptyAfterReduction,
  BoundUnreachable,
  NumericalInstability,
  GridExceedsStore,
  ReachExceeded,
  InsufficientData,
  DomainError,
  IncompleteStore,
  IncompleteEnumeration,
  StoreFormat,
  ConfigMismatch,
  InvalidInput,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ghc
