#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace erdoslab {

// Raised when a request exceeds a configured memory or size budget. Carries
// the amount that would have been needed so callers can report it.
class BudgetError : public std::runtime_error {
public:
    BudgetError(const std::string& what, std::uint64_t required, std::uint64_t budget)
        : std::runtime_error(what + " (required " + std::to_string(required) +
                             ", budget " + std::to_string(budget) + ")"),
          required_(required),
          budget_(budget) {}

    std::uint64_t required() const noexcept { return required_; }
    std::uint64_t budget() const noexcept { return budget_; }

private:
    std::uint64_t required_;
    std::uint64_t budget_;
};

}  // namespace erdoslab
