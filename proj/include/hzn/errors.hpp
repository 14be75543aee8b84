#pragma once

#include <stdexcept>
#include <string>

namespace hzn {

// Base class for every failure raised by the library. `kind()` is a stable
// machine-readable tag used by the CLI for its JSON error payloads.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define HZN_DECLARE_ERROR(Name)                                              \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& what) : Error(#Name, what) {}       \
    };

HZN_DECLARE_ERROR(DomainError)
HZN_DECLARE_ERROR(NonConvergent)
HZN_DECLARE_ERROR(DegeneratePhase)
HZN_DECLARE_ERROR(DegenerateArguments)
HZN_DECLARE_ERROR(PoleEncountered)
HZN_DECLARE_ERROR(NotFundamentalDiscriminant)
HZN_DECLARE_ERROR(NotReduced)
HZN_DECLARE_ERROR(DegenerateCycle)
HZN_DECLARE_ERROR(NonRationalInput)
HZN_DECLARE_ERROR(TwistNotInS)
HZN_DECLARE_ERROR(NormMinusOneField)
HZN_DECLARE_ERROR(UsageError)

#undef HZN_DECLARE_ERROR

}  // namespace hzn
