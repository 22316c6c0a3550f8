#include "wulffsym/profile.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "wulffsym/error.hpp"

namespace wulffsym {
namespace {

std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y)
{
    const std::size_t n = x.size();
    std::vector<double> d(n, 0.0);
    if (n == 2) {
        d[0] = d[1] = (y[1] - y[0]) / (x[1] - x[0]);
        return d;
    }
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        delta[i] = (y[i + 1] - y[i]) / h[i];
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            d[i] = 0.0;
            continue;
        }
        const double w1 = 2.0 * h[i] + h[i - 1];
        const double w2 = h[i] + 2.0 * h[i - 1];
        d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
    // one-sided three-point ends, limited to keep the shape
    auto end_slope = [](double h0, double h1, double d0, double d1) {
        double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (s * d0 <= 0.0) {
            s = 0.0;
        } else if (d0 * d1 <= 0.0 && std::abs(s) > 3.0 * std::abs(d0)) {
            s = 3.0 * d0;
        }
        return s;
    };
    d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    return d;
}

}  // namespace

std::string to_string(Monotonicity direction)
{
    return direction == Monotonicity::increasing ? "increasing" : "decreasing";
}

MonotoneProfile::MonotoneProfile(std::vector<double> abscissae, std::vector<double> values,
                                 Monotonicity direction, double slack)
    : x_(std::move(abscissae)), y_(std::move(values)), dir_(direction)
{
    if (x_.size() < 2 || x_.size() != y_.size()) {
        throw DomainError("MonotoneProfile: need at least two nodes and matching value count");
    }
    validate(slack);
    d_ = pchip_slopes(x_, y_);
}

MonotoneProfile::MonotoneProfile(std::vector<double> abscissae, std::vector<double> values,
                                 std::vector<double> derivatives, Monotonicity direction,
                                 double slack)
    : x_(std::move(abscissae)), y_(std::move(values)), d_(std::move(derivatives)), dir_(direction)
{
    if (x_.size() < 2 || x_.size() != y_.size() || x_.size() != d_.size()) {
        throw DomainError("MonotoneProfile: need at least two nodes and matching array sizes");
    }
    validate(slack);
}

void MonotoneProfile::validate(double slack) const
{
    double scale = 0.0;
    for (std::size_t i = 0; i < x_.size(); ++i) {
        if (!std::isfinite(x_[i]) || !std::isfinite(y_[i])) {
            throw DomainError("MonotoneProfile: non-finite node");
        }
        scale = std::max(scale, std::abs(y_[i]));
    }
    const double tol = slack * std::max(1.0, scale);
    const double sign = dir_ == Monotonicity::increasing ? 1.0 : -1.0;
    for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
        if (!(x_[i + 1] > x_[i])) {
            throw DomainError("MonotoneProfile: abscissae must be strictly increasing");
        }
        if (sign * (y_[i + 1] - y_[i]) < -tol) {
            throw ModelError("MonotoneProfile: values are not " + to_string(dir_) + " at node " +
                             std::to_string(i + 1));
        }
    }
}

bool MonotoneProfile::covers(double a, double b) const
{
    if (x_.empty()) {
        return false;
    }
    const double slack = 1e-12 * std::max(1.0, std::abs(x_.back()));
    return a >= x_.front() - slack && b <= x_.back() + slack;
}

std::size_t MonotoneProfile::interval(double r) const
{
    if (!covers(r, r)) {
        throw DomainError("MonotoneProfile: argument " + std::to_string(r) + " outside [" +
                          std::to_string(x_.front()) + ", " + std::to_string(x_.back()) + "]");
    }
    const auto it = std::upper_bound(x_.begin(), x_.end(), r);
    std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    return std::min(i, x_.size() - 2);
}

double MonotoneProfile::value(double r) const
{
    const std::size_t i = interval(r);
    const double h = x_[i + 1] - x_[i];
    const double s = (r - x_[i]) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    const double h10 = s3 - 2.0 * s2 + s;
    const double h01 = -2.0 * s3 + 3.0 * s2;
    const double h11 = s3 - s2;
    return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

double MonotoneProfile::derivative(double r) const
{
    const std::size_t i = interval(r);
    const double h = x_[i + 1] - x_[i];
    const double s = (r - x_[i]) / h;
    const double s2 = s * s;
    const double d00 = (6.0 * s2 - 6.0 * s) / h;
    const double d10 = 3.0 * s2 - 4.0 * s + 1.0;
    const double d01 = (-6.0 * s2 + 6.0 * s) / h;
    const double d11 = 3.0 * s2 - 2.0 * s;
    return d00 * y_[i] + d10 * d_[i] + d01 * y_[i + 1] + d11 * d_[i + 1];
}

}  // namespace wulffsym
