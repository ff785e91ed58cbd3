#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cbc {

/// Base of every error raised by the library. Internal consistency failures
/// (a broken invariant that should be impossible) use std::logic_error instead.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Arguments outside an operation's documented domain.
class ParamError : public Error {
public:
    using Error::Error;
};

/// Parameters valid in general but outside the range a formula or
/// construction covers.
class RangeError : public Error {
public:
    using Error::Error;
};

/// A set larger than the batch size was handed to an operation that needs
/// sets of size at most k.
class OversizedSet : public Error {
public:
    using Error::Error;
};

/// No construction covers the requested parameters.
class Unsupported : public Error {
public:
    using Error::Error;
};

/// A constant-weight code ran out of words before reaching its target.
class InsufficientCode : public Error {
public:
    InsufficientCode(std::size_t achieved, std::size_t needed)
        : Error("constant-weight code has " + std::to_string(achieved) + " words, " +
                std::to_string(needed) + " needed"),
          achieved_(achieved),
          needed_(needed) {}

    std::size_t achieved() const noexcept { return achieved_; }
    std::size_t needed() const noexcept { return needed_; }

private:
    std::size_t achieved_;
    std::size_t needed_;
};

class ParseError : public Error {
public:
    enum class Kind {
        MalformedHeader,
        MalformedLine,
        ServerIndexOutOfRange,
        EmptyItemSet,
        ItemCountMismatch,
    };

    ParseError(Kind kind, std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), kind_(kind), line_(line) {}

    Kind kind() const noexcept { return kind_; }
    /// 1-based line number of the offending input line.
    std::size_t line() const noexcept { return line_; }

private:
    Kind kind_;
    std::size_t line_;
};

}  // namespace cbc
