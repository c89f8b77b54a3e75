#ifndef REFUEL_ERRORS_HPP
#define REFUEL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace refuel {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class invalid_instance : public error {
public:
    using error::error;
};

class malformed_permutation : public error {
public:
    using error::error;
};

class window_error : public error {
public:
    using error::error;
};

class empty_window : public error {
public:
    empty_window() : error("empty job window") {}
};

/// Refusal to run an exponential algorithm above its size limit.
class size_guard_error : public error {
public:
    size_guard_error(const std::string& algo, std::size_t n, std::size_t limit)
        : error(algo + ": n = " + std::to_string(n) + " exceeds the limit of " +
                std::to_string(limit) + " (override the size guard to force)") {}
};

class timeout_error : public error {
public:
    timeout_error() : error("deadline exceeded") {}
};

class io_error : public error {
public:
    using error::error;
};

}  // namespace refuel

#endif
