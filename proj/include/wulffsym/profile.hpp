#pragma once

#include <string>
#include <vector>

namespace wulffsym {

enum class Monotonicity { increasing, decreasing };

/// Tabulated monotone function of one variable with node derivatives,
/// evaluated by piecewise cubic Hermite interpolation. Used for zeta
/// profiles, symmetrands, radial solutions and rearrangements.
class MonotoneProfile {
public:
    MonotoneProfile() = default;

    /// Derivatives estimated by the Fritsch-Carlson (PCHIP) rule, so the
    /// interpolant inherits the monotonicity of the data.
    MonotoneProfile(std::vector<double> abscissae, std::vector<double> values,
                    Monotonicity direction, double slack = 1e-10);

    /// Caller-supplied node derivatives (e.g. known analytically).
    /// `slack` is the tolerated violation of monotonicity, relative to max(1, max|value|).
    MonotoneProfile(std::vector<double> abscissae, std::vector<double> values,
                    std::vector<double> derivatives, Monotonicity direction, double slack = 1e-10);

    [[nodiscard]] std::size_t size() const noexcept { return x_.size(); }
    [[nodiscard]] bool empty() const noexcept { return x_.empty(); }
    [[nodiscard]] double front() const { return x_.front(); }
    [[nodiscard]] double back() const { return x_.back(); }
    [[nodiscard]] Monotonicity direction() const noexcept { return dir_; }
    [[nodiscard]] const std::vector<double>& abscissae() const noexcept { return x_; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return y_; }
    [[nodiscard]] const std::vector<double>& derivatives() const noexcept { return d_; }

    /// True when [a, b] lies inside the tabulated range (1e-12 relative slack).
    [[nodiscard]] bool covers(double a, double b) const;

    /// Throws DomainError outside the tabulated range (same slack as covers).
    [[nodiscard]] double value(double r) const;
    [[nodiscard]] double derivative(double r) const;

private:
    void validate(double slack) const;
    [[nodiscard]] std::size_t interval(double r) const;

    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> d_;
    Monotonicity dir_ = Monotonicity::increasing;
};

[[nodiscard]] std::string to_string(Monotonicity direction);

}  // namespace wulffsym
