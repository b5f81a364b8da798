// errors.hpp -- exception types shared by the enumeration modules

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace zerorate {

/// Thrown when an exhaustive search would exceed its configured budget.
class BudgetExceeded : public std::runtime_error
{
public:
    BudgetExceeded(const std::string& what, std::uint64_t required, std::uint64_t budget)
      : std::runtime_error("instance too large: " + what + " needs " + std::to_string(required)
                           + " steps, budget is " + std::to_string(budget)),
        required_(required),
        budget_(budget)
    {
    }

    std::uint64_t required() const noexcept { return required_; }
    std::uint64_t budget() const noexcept { return budget_; }

private:
    std::uint64_t required_;
    std::uint64_t budget_;
};

/// Saturating product used when sizing search spaces.
inline std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp)
{
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && r > UINT64_MAX / base)
            return UINT64_MAX;
        r *= base;
    }
    return r;
}

} // namespace zerorate
