#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hahnpp
{

// Root of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Malformed user input: expressions, context files, registries.
class InputError : public Error
{
public:
    using Error::Error;
};

// Well-formed input on which an algebraic operation is undefined or
// cannot be certified.
class AlgebraError : public Error
{
public:
    using Error::Error;
};

#define HAHNPP_DEFINE_ERROR(Name, Base)                                                            \
    class Name : public Base                                                                       \
    {                                                                                              \
    public:                                                                                        \
        using Base::Base;                                                                          \
    }

HAHNPP_DEFINE_ERROR(ContextError, InputError);
HAHNPP_DEFINE_ERROR(RationalDependence, InputError);
HAHNPP_DEFINE_ERROR(UnknownIdentifier, InputError);
HAHNPP_DEFINE_ERROR(ArityMismatch, InputError);

HAHNPP_DEFINE_ERROR(PrecisionExhausted, AlgebraError);
HAHNPP_DEFINE_ERROR(ZeroArgument, AlgebraError);
HAHNPP_DEFINE_ERROR(DivisionByZeroGerm, AlgebraError);
HAHNPP_DEFINE_ERROR(PrecisionUnreachable, AlgebraError);
HAHNPP_DEFINE_ERROR(PrecisionRequired, AlgebraError);
HAHNPP_DEFINE_ERROR(NotInValuationRing, AlgebraError);
HAHNPP_DEFINE_ERROR(NonRationalConstant, AlgebraError);
HAHNPP_DEFINE_ERROR(PositiveValueRequired, AlgebraError);
HAHNPP_DEFINE_ERROR(InsufficientCoefficients, AlgebraError);
HAHNPP_DEFINE_ERROR(NonPositiveLeading, AlgebraError);
HAHNPP_DEFINE_ERROR(IrrationalConstant, AlgebraError);

#undef HAHNPP_DEFINE_ERROR

class SyntaxError : public InputError
{
public:
    SyntaxError(std::size_t position, const std::string &expected)
        : InputError("syntax error at position " + std::to_string(position) + ": expected "
                     + expected),
          position_(position), expected_(expected)
    {
    }

    std::size_t position() const noexcept
    {
        return position_;
    }
    const std::string &expected() const noexcept
    {
        return expected_;
    }

private:
    std::size_t position_;
    std::string expected_;
};

} // namespace hahnpp
