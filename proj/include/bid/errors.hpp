#ifndef BID_ERRORS_HPP
#define BID_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bid {

// Byte range in the source text, plus 1-based line/column of the start.
struct SourceSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t line = 0;
    std::size_t column = 0;
};

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    ParseError(std::string msg, SourceSpan where, std::string expected = {})
        : Error(std::move(msg)), span(where), expected_tokens(std::move(expected)) {}
    SourceSpan span;
    std::string expected_tokens;
};

// A number variable used as a string or vice versa.
struct SortError : Error {
    SortError(std::string msg, SourceSpan where) : Error(std::move(msg)), span(where) {}
    SourceSpan span;
};

struct UnboundVariable : Error {
    using Error::Error;
};

// An enumeration or iteration would exceed the configured budget.
struct ResourceLimit : Error {
    using Error::Error;
};

// Witnessed a bit that was dropped by an operator claimed inflationary.
struct NotInflationary : Error {
    NotInflationary(std::string msg, std::size_t bit) : Error(std::move(msg)), witness_bit(bit) {}
    std::size_t witness_bit;
};

struct NotFinal : Error {
    using Error::Error;
};

// A Turing machine run violated its declared polynomial bound.
struct BoundExceeded : Error {
    using Error::Error;
};

struct OutOfSpace : Error {
    using Error::Error;
};

struct DecodeError : Error {
    using Error::Error;
};

}  // namespace bid

#endif
