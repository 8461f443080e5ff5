#pragma once

#include <stdexcept>
#include <string>

namespace mco {

// Base of every error raised by the library. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error { using Error::Error; };
class PreconditionError : public Error { using Error::Error; };
class DimensionError : public Error { using Error::Error; };
class NotImplementedError : public Error { using Error::Error; };
class InfiniteMeanError : public Error { using Error::Error; };
class InvalidSamplerError : public Error { using Error::Error; };
class HeuristicUnavailableError : public Error { using Error::Error; };
class InsufficientDataError : public Error { using Error::Error; };
class EnumerationOverflowError : public Error { using Error::Error; };
class AbsoluteContinuityError : public Error { using Error::Error; };

} // namespace mco
