#pragma once

#include <stdexcept>
#include <string>

namespace bowl {

/// Malformed or inconsistent user input (files, options, instances).
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string &what) : std::runtime_error(what) {}
};

/// A size guard refused the request (e.g. brute force on a large instance).
class GuardError : public std::runtime_error {
public:
    explicit GuardError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace bowl
