#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace claimcheck {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input could not be parsed. `line` is 1-based for line-oriented formats,
/// `offset` is a byte offset for XML inputs; unused positions are zero.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t offset = 0)
        : Error(what), line_(line), offset_(offset) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t line_;
    std::size_t offset_;
};

class DuplicateDocumentError : public Error {
public:
    using Error::Error;
};

class UnknownDocumentError : public Error {
public:
    using Error::Error;
};

/// Vector dimensions disagree, or a zero vector was used where a direction is required.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A dense index was queried with vectors from a different embedder.
class EmbedderMismatchError : public Error {
public:
    using Error::Error;
};

/// Transient gateway failure (connection refused, timeout, 5xx). Safe to retry.
class RetryableError : public Error {
public:
    using Error::Error;
};

/// The gateway answered, but the answer violates the wire protocol.
class ProtocolError : public Error {
public:
    using Error::Error;
};

/// Raised by the verdict stage when there is nothing to judge. Deliberately not a label:
/// the evaluation layer decides how such claims are counted.
class EmptyEvidenceError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    using Error::Error;
};

} // namespace claimcheck
