#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace spinsplit {

// Domain error with a machine-readable category. The CLI renders these as
// "error:<category>: <message>" on stderr and exits with code 1.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string category, const std::string& message)
        : std::runtime_error(message), category_(std::move(category)) {}

    const std::string& category() const noexcept { return category_; }

private:
    std::string category_;
};

} // namespace spinsplit
