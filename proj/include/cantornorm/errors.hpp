#pragma once

#include <stdexcept>
#include <string>

namespace cantornorm {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value lies outside the domain of an operation (bad interval, p >= q, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A program index does not name a registry entry.
class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

/// Registry, oracle or command configuration is unusable.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// An operation was handed data that does not satisfy its precondition
/// (unsettled limit function, short bit prefix, digit out of range, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A request exceeds the configured resource ceiling. `required_stages`
/// reports the stage count that would have been needed.
class ResourceLimit : public Error {
public:
    ResourceLimit(const std::string& what, unsigned required_stages)
        : Error(what), required_stages_(required_stages) {}

    unsigned required_stages() const noexcept { return required_stages_; }

private:
    unsigned required_stages_;
};

}  // namespace cantornorm
