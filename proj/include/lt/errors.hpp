#pragma once

#include <stdexcept>
#include <string>

namespace lt {

// Error taxonomy for the whole library. Every failure the public API can
// raise derives from Error, so callers (the CLI in particular) can catch a
// single type at the boundary and map it to an exit code.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

#define LT_DEFINE_ERROR(Name)                              \
  class Name : public Error {                              \
  public:                                                  \
    explicit Name(const std::string& what_arg)             \
        : Error(std::string(#Name) + ": " + what_arg) {}   \
  }

LT_DEFINE_ERROR(BadExtent);
LT_DEFINE_ERROR(BudgetExceeded);
LT_DEFINE_ERROR(GridMismatch);
LT_DEFINE_ERROR(RankDeficient);
LT_DEFINE_ERROR(ZeroDensity);
LT_DEFINE_ERROR(ZeroField);
LT_DEFINE_ERROR(ZeroOnBall);
LT_DEFINE_ERROR(DisconnectedMask);
LT_DEFINE_ERROR(GapUndefined);
LT_DEFINE_ERROR(SolverNoConvergence);
LT_DEFINE_ERROR(InsufficientMass);
LT_DEFINE_ERROR(MissingCenter);
LT_DEFINE_ERROR(MassOutOfWindow);
LT_DEFINE_ERROR(LineSearchStalled);
LT_DEFINE_ERROR(InvalidInput);
LT_DEFINE_ERROR(ParseError);

#undef LT_DEFINE_ERROR

}  // namespace lt
