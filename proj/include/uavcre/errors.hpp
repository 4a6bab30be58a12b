#pragma once

#include <stdexcept>
#include <string>

namespace uavcre {

/// Base of every error raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid model or call parameters (non-finite, out of domain, ...).
class ParameterError : public Error
{
  public:
    using Error::Error;
};

/// A numerical procedure failed to reach its requested accuracy.
class NumericError : public Error
{
  public:
    NumericError(const std::string& what, double estimate, double error_bound)
        : Error(what), estimate_(estimate), error_bound_(error_bound)
    {
    }

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

  private:
    double estimate_;
    double error_bound_;
};

/// Malformed or schema-violating experiment configuration.
class ConfigError : public Error
{
  public:
    ConfigError(const std::string& what, int line = -1)
        : Error(line >= 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line)
    {
    }

    /// 1-based line in the config file, or -1 when not tied to a line.
    int line() const noexcept { return line_; }

  private:
    int line_;
};

} // namespace uavcre
