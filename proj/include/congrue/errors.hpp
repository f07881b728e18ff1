#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace congrue {

/// Malformed curve text. `position` is the 0-based offset of the offending character.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class SingularCurveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by local computations handed a model that is not minimal at the prime.
class NotMinimalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A good-reduction routine was called at a prime of bad reduction.
class WrongDispatchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CacheIntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dataset rows that fail validation. `line` is 1-based; 0 when not tied to a line.
class DatasetError : public std::runtime_error {
public:
    DatasetError(const std::string& what, std::size_t line)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace congrue
