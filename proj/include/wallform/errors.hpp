#pragma once

#include <stdexcept>
#include <string>

namespace wallform {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class BilinearityViolation : public Error {
public:
    using Error::Error;
};

class HMismatch : public Error {
public:
    using Error::Error;
};

class ParameterMismatch : public Error {
public:
    using Error::Error;
};

class PreservationViolation : public Error {
public:
    PreservationViolation(std::string which, std::string witness)
        : Error("morphism does not preserve " + which + " at " + witness),
          which_(std::move(which)), witness_(std::move(witness)) {}
    const std::string& which() const { return which_; }
    const std::string& witness() const { return witness_; }

private:
    std::string which_;
    std::string witness_;
};

class RankTooSmall : public Error {
public:
    using Error::Error;
};

class NotSupported : public Error {
public:
    using Error::Error;
};

class SimplexNotFound : public Error {
public:
    using Error::Error;
};

class BudgetExhausted : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class UnsupportedCommand : public Error {
public:
    using Error::Error;
};

}  // namespace wallform
