#pragma once

#include <stdexcept>
#include <string>

namespace levy
{

/// Broad classes used by the CLI to pick an exit code.
enum class ErrorClass
{
    input,   //!< malformed or invalid density document (exit 2)
    numeric  //!< evaluation failed (exit 3)
};

class Error : public std::runtime_error
{
  public:
    Error(ErrorClass cls, std::string const& kind, std::string const& what)
        : std::runtime_error(kind + ": " + what), cls_(cls), kind_(kind)
    {
    }

    ErrorClass error_class() const noexcept { return cls_; }
    std::string const& kind() const noexcept { return kind_; }

  private:
    ErrorClass cls_;
    std::string kind_;
};

#define LEVY_DEFINE_ERROR(NAME, CLASS)                       \
    class NAME : public Error                                \
    {                                                        \
      public:                                                \
        explicit NAME(std::string const& what)               \
            : Error(ErrorClass::CLASS, #NAME, what)          \
        {                                                    \
        }                                                    \
    }

LEVY_DEFINE_ERROR(SchemaError, input);
LEVY_DEFINE_ERROR(InvariantError, input);
LEVY_DEFINE_ERROR(DomainError, numeric);
LEVY_DEFINE_ERROR(QuadratureError, numeric);
LEVY_DEFINE_ERROR(OverflowError, numeric);
LEVY_DEFINE_ERROR(RangeError, numeric);
LEVY_DEFINE_ERROR(ConvergenceError, numeric);
LEVY_DEFINE_ERROR(ModeError, numeric);
LEVY_DEFINE_ERROR(StepError, numeric);
LEVY_DEFINE_ERROR(TailBoundError, numeric);
LEVY_DEFINE_ERROR(MassError, numeric);
LEVY_DEFINE_ERROR(DominationError, numeric);
LEVY_DEFINE_ERROR(PreconditionError, numeric);

#undef LEVY_DEFINE_ERROR

}  // namespace levy
