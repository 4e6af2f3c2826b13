#ifndef VDLAX_ERRORS_HPP
#define VDLAX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vdlax
{

// Base of every error raised by the library. Callers that only care about
// "something went wrong numerically" can catch this one.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// A truncated product or series needed more terms than the policy allows.
class TruncationFailure : public Error
{
public:
    using Error::Error;
};

// Argument outside the domain of the function (z = 0, overflow, NaN).
class DomainError : public Error
{
public:
    using Error::Error;
};

// Evaluation point too close to a pole (or to a zero of a denominator).
class PoleProximity : public Error
{
public:
    using Error::Error;
};

// Parameters violate a genericity requirement.
class DegenerateParameters : public Error
{
public:
    using Error::Error;
};

// Invalid configuration (bad ModularParams, malformed config file, ...).
class ConfigError : public Error
{
public:
    using Error::Error;
};

} // namespace vdlax

#endif
