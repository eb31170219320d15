#pragma once

#include <stdexcept>
#include <string>

namespace fzk {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual const char* kind() const noexcept { return "Error"; }
};

#define FZK_DECLARE_ERROR(Name)                                              \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
        const char* kind() const noexcept override { return #Name; }         \
    };

FZK_DECLARE_ERROR(InvalidArgument)
FZK_DECLARE_ERROR(RepresentationMismatch)
FZK_DECLARE_ERROR(NonFiniteSymbol)
FZK_DECLARE_ERROR(NonzeroXMean)
FZK_DECLARE_ERROR(WrapAroundRisk)
FZK_DECLARE_ERROR(StabilityBudgetExceeded)
FZK_DECLARE_ERROR(NumericalBlowup)
FZK_DECLARE_ERROR(QuadratureError)
FZK_DECLARE_ERROR(BoxUnresolvable)
FZK_DECLARE_ERROR(SnapshotError)
FZK_DECLARE_ERROR(SchemaError)

#undef FZK_DECLARE_ERROR

} // namespace fzk
