#ifndef MNCONVEX_ERRORS_HPP
#define MNCONVEX_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mnconvex
{

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the open interval where a function is defined.
class DomainError : public Error
{
public:
    using Error::Error;
};

// Summation hit the term cap, or cancellation could not be resolved.
class ConvergenceError : public Error
{
public:
    using Error::Error;
};

class InvalidParameter : public Error
{
public:
    using Error::Error;
};

// The Pochhammer symbol (0,0).
class UndefinedSymbol : public Error
{
public:
    using Error::Error;
};

// Errors that point at a specific coefficient index.
class IndexedError : public Error
{
public:
    IndexedError(const std::string &what, std::size_t index) : Error(what + " at index " + std::to_string(index)), m_index(index)
    {
    }
    std::size_t index() const noexcept
    {
        return m_index;
    }

private:
    std::size_t m_index;
};

class NonPositiveDenominator : public IndexedError
{
public:
    explicit NonPositiveDenominator(std::size_t index) : IndexedError("non-positive denominator coefficient", index) {}
};

class NonPositiveCoefficient : public IndexedError
{
public:
    explicit NonPositiveCoefficient(std::size_t index) : IndexedError("non-positive coefficient", index) {}
};

class ParseError : public Error
{
public:
    using Error::Error;
};

} // namespace mnconvex

#endif
