#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ffem {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain where the operation is defined.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The kernel was asked for its value at the singular point s = x.
class SingularPointError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Boundary conditions leave rigid-body modes, or a factorization failed.
class SingularSystemError : public Error {
public:
    using Error::Error;
};

/// Stress normalization requested with a zero load magnitude.
class NormalizationError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Newton iteration failed; carries the residual history of every load step.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<std::vector<double>> history)
        : Error(what), history_(std::move(history)) {}

    const std::vector<std::vector<double>>& history() const noexcept { return history_; }

private:
    std::vector<std::vector<double>> history_;
};

/// Invalid or incomplete run configuration. `key()` names the offending entry.
class ConfigError : public Error {
public:
    ConfigError(std::string key, const std::string& what)
        : Error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// File could not be read or written.
class IoError : public Error {
public:
    IoError(std::string path, const std::string& what)
        : Error(path + ": " + what), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace ffem
