// errors.hpp: exception hierarchy shared by the core modules
#pragma once

#include <stdexcept>
#include <string>

namespace ccqme {

enum class ErrorKind {
    invalid_input,
    numerical_failure,
    configuration,
    io,
    not_available,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct InvalidInput : Error {
    explicit InvalidInput(const std::string& w) : Error(ErrorKind::invalid_input, w) {}
};
struct NumericalFailure : Error {
    explicit NumericalFailure(const std::string& w) : Error(ErrorKind::numerical_failure, w) {}
};
struct ConfigError : Error {
    explicit ConfigError(const std::string& w) : Error(ErrorKind::configuration, w) {}
};
struct IoError : Error {
    explicit IoError(const std::string& w) : Error(ErrorKind::io, w) {}
};
struct NotAvailable : Error {
    explicit NotAvailable(const std::string& w) : Error(ErrorKind::not_available, w) {}
};

}  // namespace ccqme
