#pragma once

/// @file errors.hpp
/// @brief Exception types shared by all primerep modules.

#include <cstddef>
#include <stdexcept>
#include <string>

namespace primerep {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A prime enumeration was asked to cover more integers than the configured budget allows.
class RangeTooLarge : public Error {
public:
    using Error::Error;
};

/// An admissible interval contained no prime. Never observed in practice.
class NoPrimeInInterval : public Error {
public:
    using Error::Error;
};

/// Tree enumeration passed its node budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// The level interval of a chain is too wide to determine the requested digits.
class NeedMoreDepth : public Error {
public:
    NeedMoreDepth(std::size_t requested, std::size_t max_supported)
        : Error("need more depth: " + std::to_string(requested) + " digits requested, chain determines "
                + std::to_string(max_supported)),
          requested_(requested),
          max_supported_(max_supported) {}

    std::size_t requested() const noexcept { return requested_; }
    std::size_t max_supported() const noexcept { return max_supported_; }

private:
    std::size_t requested_;
    std::size_t max_supported_;
};

/// Level statistics violate the preconditions of the Falconer lower bound.
class Inapplicable : public Error {
public:
    using Error::Error;
};

/// A tree is too shallow or has truncated levels, so minima over it are not valid.
class TruncatedTree : public Error {
public:
    using Error::Error;
};

/// A census had nothing to count.
class EmptyCensus : public Error {
public:
    using Error::Error;
};

} // namespace primerep
