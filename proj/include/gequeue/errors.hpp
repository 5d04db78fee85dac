#ifndef GEQUEUE_ERRORS_HPP
#define GEQUEUE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gequeue {

// Queue drift is nonnegative: the stationary solution does not exist.
class UnstableSystemError : public std::runtime_error {
  public:
    explicit UnstableSystemError(double margin)
        : std::runtime_error("system is unstable: stability margin " + std::to_string(margin) +
                             " <= 0"),
          margin_(margin) {}

    double margin() const { return margin_; }

  private:
    double margin_;
};

class SingularMatrixError : public std::runtime_error {
  public:
    explicit SingularMatrixError(const std::string& which)
        : std::runtime_error("singular matrix: " + which), which_(which) {}

    const std::string& which() const { return which_; }

  private:
    std::string which_;
};

class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(std::size_t iterations, double residual)
        : std::runtime_error("rate-matrix iteration did not converge after " +
                             std::to_string(iterations) +
                             " iterations (last residual " + std::to_string(residual) + ")"),
          iterations_(iterations),
          residual_(residual) {}

    std::size_t iterations() const { return iterations_; }
    double residual() const { return residual_; }

  private:
    std::size_t iterations_;
    double residual_;
};

}  // namespace gequeue

#endif
