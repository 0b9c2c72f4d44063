#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wavecore {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed configuration text (bad line, unknown or duplicate key).
class ParseError : public Error {
public:
    using Error::Error;
};

/// A parameter violates an invariant. `key()` names the offending key.
class ValidationError : public Error {
public:
    ValidationError(std::string key, const std::string& message)
        : Error(key + ": " + message), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class ShapeError : public Error {
public:
    using Error::Error;
};

class UnsupportedOverlap : public Error {
public:
    using Error::Error;
};

class ProfileError : public Error {
public:
    using Error::Error;
};

class RangeError : public Error {
public:
    using Error::Error;
};

class FrameFormatError : public Error {
public:
    using Error::Error;
};

class SyncFailure : public Error {
public:
    using Error::Error;
};

/// Raised by the one-tap equalizer when |H_m| falls below the deep-null guard.
class SingularChannelError : public Error {
public:
    explicit SingularChannelError(std::vector<std::size_t> subcarriers);
    const std::vector<std::size_t>& subcarriers() const noexcept { return subcarriers_; }

private:
    std::vector<std::size_t> subcarriers_;
};

/// Wraps an error raised inside one stage of the simulation chain.
class StageError : public Error {
public:
    StageError(std::string stage, const std::string& message)
        : Error(stage + ": " + message), stage_(std::move(stage)) {}
    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

}  // namespace wavecore
