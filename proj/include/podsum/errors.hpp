#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace podsum {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// The weighted sum is infinite for some (or every) m > 0.
class NotSummable : public Error {
public:
    using Error::Error;
};

/// Adaptive refinement hit its coordinate cap before meeting the tolerance.
/// Carries the last certified lower bound so callers can still report it.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string& what, double last_log_value, std::size_t d,
                   std::size_t max_order)
        : Error(what), last_log_value_(last_log_value), d_(d), max_order_(max_order)
    {
    }

    double last_log_value() const noexcept { return last_log_value_; }
    std::size_t prefix_length() const noexcept { return d_; }
    std::size_t max_order() const noexcept { return max_order_; }

private:
    double last_log_value_;
    std::size_t d_;
    std::size_t max_order_;
};

/// Parse or validation failure in a weight-family document; `path` is a JSON pointer.
class ConfigError : public Error {
public:
    ConfigError(std::string path, const std::string& message)
        : Error(path.empty() ? message : path + ": " + message), path_(std::move(path))
    {
    }

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// A tail sum vanished where the conditional-binomial chain needs to divide by it.
class ZeroTail : public Error {
public:
    using Error::Error;
};

} // namespace podsum
