#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "debx/numerics.hpp"

namespace debx {

/// Left-tail model (c0 + c1*(t - t_ref)) * exp(rate * (t - t_ref)).
/// The affine factor matters: functions recovered from inverse Laplace
/// transforms decay like a degree-one polynomial times an exponential, and a
/// pure exponential loses accuracy fast when extrapolated.
struct ExpTail {
    double c0 = 0.0;
    double c1 = 0.0;
    double rate = 0.0;
    double t_ref = 0.0;

    double value(double t) const {
        const double dt = t - t_ref;
        return (c0 + c1 * dt) * std::exp(rate * dt);
    }
};

/// Right-tail model c0 + c1*(t - t_ref).
struct AffineTail {
    double c0 = 0.0;
    double c1 = 0.0;
    double t_ref = 0.0;

    double value(double t) const { return c0 + c1 * (t - t_ref); }
};

/// Uniform-grid samples with local cubic interpolation. Queries that hit a
/// grid node bitwise return the stored sample unchanged. Queries outside the
/// grid are served by the optional tail models, or raise DomainError.
class SampledFunction {
  public:
    SampledFunction() = default;
    SampledFunction(std::vector<double> grid, std::vector<double> values,
                    std::optional<ExpTail> left = std::nullopt,
                    std::optional<AffineTail> right = std::nullopt);

    double operator()(double x) const;

    double lo() const { return grid_.front(); }
    double hi() const { return grid_.back(); }
    std::size_t size() const { return grid_.size(); }
    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    const std::optional<ExpTail>& left_tail() const { return left_; }
    const std::optional<AffineTail>& right_tail() const { return right_; }

    void set_left_tail(ExpTail t) { left_ = t; }
    void set_right_tail(AffineTail t) { right_ = t; }

  private:
    std::vector<double> grid_;
    std::vector<double> values_;
    std::optional<ExpTail> left_;
    std::optional<AffineTail> right_;
    double step_ = 0.0;
};

/// Samples f on n uniformly spaced nodes over [lo, hi]. Endpoints are hit
/// exactly; a non-finite sample aborts with the offending node in the
/// message.
SampledFunction tabulate(const std::function<double(double)>& f, double lo, double hi,
                         std::size_t n, std::optional<ExpTail> left = std::nullopt,
                         std::optional<AffineTail> right = std::nullopt);

/// Least-squares fit of (c0 + c1*dt)*exp(rate*dt) over the first
/// `window` samples, with the rate prescribed by the caller. Returns the
/// model and the worst relative residual over the window.
struct TailFit {
    ExpTail tail;
    double max_rel_residual = 0.0;
};
TailFit fit_left_exp_tail(const SampledFunction& f, double rate, std::size_t window);

}  // namespace debx
