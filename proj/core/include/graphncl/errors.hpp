#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace graphncl {

/// Picard iteration failed to reach the requested tolerance. Carries the
/// window index and the full residual history of the failing window.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, int window_index,
                      std::vector<double> distances)
        : std::runtime_error(what),
          window_index_(window_index),
          distances_(std::move(distances)) {}

    int window_index() const noexcept { return window_index_; }
    const std::vector<double>& distances() const noexcept { return distances_; }

private:
    int window_index_;
    std::vector<double> distances_;
};

/// A non-finite value appeared during evaluation (flux, kernel, state, ...).
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what, double time = 0.0)
        : std::runtime_error(what), time_(time) {}

    double time() const noexcept { return time_; }

private:
    double time_;
};

}  // namespace graphncl
