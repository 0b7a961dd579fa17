#pragma once

#include <stdexcept>
#include <string>

namespace combnet {

/// Invalid argument to a constructor or operation (out-of-range H, r, t, ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The request is well formed but outside the regime an operation supports
/// (N < K for bound generation, H < 2r for elimination, ...).
class RegimeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A square system that had to be invertible was not.
class RankDeficiencyError : public std::runtime_error {
public:
    RankDeficiencyError(const std::string& what, int rank, int expected)
        : std::runtime_error(what + " (rank " + std::to_string(rank) + " of " +
                             std::to_string(expected) + ")"),
          rank_(rank),
          expected_(expected) {}

    int rank() const noexcept { return rank_; }
    int expected() const noexcept { return expected_; }

private:
    int rank_;
    int expected_;
};

} // namespace combnet
