#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pdna {

// Base for every error the library raises. Callers that only need to report
// a failure can catch this one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// DNA form whose length is not a whole number of bytes.
class LengthError : public Error {
public:
    using Error::Error;
};

// Malformed binary container (bad magic, short payload).
class FormatError : public Error {
public:
    using Error::Error;
};

// Packed residue code outside 0..20.
class InvalidCodeError : public FormatError {
public:
    using FormatError::FormatError;
};

// Initial key that violates its invariants.
class KeyError : public Error {
public:
    using Error::Error;
};

// Intron records, digits or lengths that disagree with each other.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

// Disambiguation digit not smaller than its synonym class size.
class DigitRangeError : public ConsistencyError {
public:
    using ConsistencyError::ConsistencyError;
};

class SpecError : public Error {
public:
    using Error::Error;
};

// Unknown three-letter residue name.
class NameError : public Error {
public:
    using Error::Error;
};

class ParamError : public Error {
public:
    using Error::Error;
};

class LimitError : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class Inconclusive : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Text parse failure. line() is 1-based; 0 when the failure is not tied to a
// particular line (e.g. unexpected end of input).
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace pdna
