#pragma once

#include <array>
#include <optional>

namespace growth {

// Published reference constants for the one-per-length and square-free
// families. The `tables` subcommand recomputes every filled cell from the
// closed forms and flags disagreements; the printed C values are lower
// bounds obtained by rounding down.
struct OnePerLengthCell {
  int min_length;
  int alphabet;
  const char* beta;     // nullptr marks an infeasible cell
  const char* c_lower;  // printed lower bound on C
};

inline constexpr std::array<OnePerLengthCell, 15> one_per_length_reference = {{
    {2, 2, nullptr, nullptr},
    {2, 3, "2", "0"},
    {2, 4, "3.6", "0.85"},
    {3, 2, nullptr, nullptr},
    {3, 3, "2.75", "0.8"},
    {3, 4, "3.91", "0.94"},
    {4, 2, nullptr, nullptr},
    {4, 3, "2.9", "0.92"},
    {4, 4, "3.97", "0.98"},
    {5, 2, "1.72", "0.14"},
    {5, 3, "2.97", "0.97"},
    {5, 4, "3.99", "0.99"},
    {6, 2, "1.91", "0.73"},
    {6, 3, "2.99", "0.98"},
    {6, 4, "3.99", "0.998"},
}};

struct SquareFreeCell {
  int alphabet;
  const char* c_two_decimals;  // C truncated to two decimals
};

inline constexpr std::array<SquareFreeCell, 11> squarefree_reference = {{
    {5, "0.32"},
    {6, "0.58"},
    {7, "0.70"},
    {8, "0.76"},
    {9, "0.81"},
    {10, "0.84"},
    {11, "0.86"},
    {12, "0.87"},
    {13, "0.89"},
    {14, "0.90"},
    {15, "0.91"},
}};

}  // namespace growth
