#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace ucwfp {

/// Base of every exception thrown by the library. `kind()` is a stable
/// machine-readable tag used by the CLI when it emits JSON diagnostics.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual std::string_view kind() const noexcept = 0;
};

/// Argument outside the mathematical domain (e.g. lambda not in [0,1]).
class DomainError : public Error {
public:
    using Error::Error;
    std::string_view kind() const noexcept override { return "domain"; }
};

/// A point was handed to a space that did not produce it.
class UsageError : public Error {
public:
    using Error::Error;
    std::string_view kind() const noexcept override { return "usage"; }
};

/// Malformed or inconsistent configuration.
class ConfigError : public Error {
public:
    using Error::Error;
    std::string_view kind() const noexcept override { return "config"; }
};

class PreconditionError : public Error {
public:
    using Error::Error;
    std::string_view kind() const noexcept override { return "precondition"; }
};

/// A map broke its declared contract (k-sequence witness, Lipschitz bound).
class MapContractError : public Error {
public:
    using Error::Error;
    std::string_view kind() const noexcept override { return "map-contract"; }
};

/// Floating point evidence contradicts a statement that holds exactly.
class NumericalContradiction : public Error {
public:
    using Error::Error;
    std::string_view kind() const noexcept override { return "numerical-contradiction"; }
};

/// A hard trajectory monitor failed while the iteration was running.
class MonitorFailure : public Error {
public:
    MonitorFailure(const std::string& what, nlohmann::json bundle);
    std::string_view kind() const noexcept override { return "monitor-failure"; }
    const nlohmann::json& bundle() const noexcept { return bundle_; }

private:
    nlohmann::json bundle_;
};

} // namespace ucwfp
