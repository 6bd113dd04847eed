#include "debx/sampled_function.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

namespace debx {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

SampledFunction::SampledFunction(std::vector<double> grid, std::vector<double> values,
                                 std::optional<ExpTail> left, std::optional<AffineTail> right)
    : grid_(std::move(grid)), values_(std::move(values)), left_(left), right_(right) {
    if (grid_.size() < 4) throw TabulationError("sampled function needs at least 4 nodes");
    if (grid_.size() != values_.size())
        throw TabulationError("grid/value size mismatch: " + std::to_string(grid_.size()) +
                              " vs " + std::to_string(values_.size()));
    if (!(grid_.front() < grid_.back()))
        throw TabulationError("grid must be increasing");
    step_ = (grid_.back() - grid_.front()) / static_cast<double>(grid_.size() - 1);
    // Index arithmetic below assumes uniform spacing; reject grids that are
    // merely sorted at the endpoints.
    for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
        const double gap = grid_[i + 1] - grid_[i];
        if (!(gap > 0.0) || std::abs(gap - step_) > 1e-6 * step_)
            throw TabulationError("grid must be uniform and strictly increasing near node " +
                                  fmt(grid_[i]));
    }
}

double SampledFunction::operator()(double x) const {
    if (x < grid_.front()) {
        if (left_) return left_->value(x);
        throw DomainError("query " + fmt(x) + " below tabulated range [" + fmt(grid_.front()) +
                          ", " + fmt(grid_.back()) + "] and no left tail installed");
    }
    if (x > grid_.back()) {
        if (right_) return right_->value(x);
        throw DomainError("query " + fmt(x) + " above tabulated range [" + fmt(grid_.front()) +
                          ", " + fmt(grid_.back()) + "] and no right tail installed");
    }

    const std::size_t n = grid_.size();
    double pos = (x - grid_.front()) / step_;
    auto idx = static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(n - 1)));
    if (idx >= n) idx = n - 1;
    // Node hits return the stored sample so tabulated invariants survive
    // round trips through the interpolant.
    for (std::size_t j = (idx == 0 ? 0 : idx - 1); j <= std::min(idx + 1, n - 1); ++j) {
        if (x == grid_[j]) return values_[j];
    }

    // Four-point Lagrange stencil centred on the query.
    std::size_t i0 = (idx == 0) ? 0 : idx - 1;
    if (i0 + 3 >= n) i0 = n - 4;
    double result = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
        double lj = 1.0;
        for (std::size_t k = 0; k < 4; ++k) {
            if (k == j) continue;
            lj *= (x - grid_[i0 + k]) / (grid_[i0 + j] - grid_[i0 + k]);
        }
        result += lj * values_[i0 + j];
    }
    return result;
}

SampledFunction tabulate(const std::function<double(double)>& f, double lo, double hi,
                         std::size_t n, std::optional<ExpTail> left,
                         std::optional<AffineTail> right) {
    if (!(lo < hi)) throw std::invalid_argument("tabulate: lo must be < hi");
    if (n < 4) throw std::invalid_argument("tabulate: need at least 4 nodes");

    std::vector<double> grid(n), values(n);
    const auto nm1 = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        // Blend form keeps both endpoints exact in floating point.
        const auto di = static_cast<double>(i);
        grid[i] = ((nm1 - di) * lo + di * hi) / nm1;
        values[i] = f(grid[i]);
        if (!std::isfinite(values[i]))
            throw TabulationError("non-finite sample at node " + fmt(grid[i]));
    }
    return SampledFunction(std::move(grid), std::move(values), left, right);
}

TailFit fit_left_exp_tail(const SampledFunction& f, double rate, std::size_t window) {
    if (window < 3 || window > f.size())
        throw std::invalid_argument("fit_left_exp_tail: window out of range");
    const auto& g = f.grid();
    const auto& v = f.values();
    const double t_ref = g[window - 1];

    // Linear least squares for y_i = exp(rate*dt_i) * (c0 + c1*dt_i).
    double s00 = 0, s01 = 0, s11 = 0, r0 = 0, r1 = 0;
    for (std::size_t i = 0; i < window; ++i) {
        const double dt = g[i] - t_ref;
        const double e = std::exp(rate * dt);
        s00 += e * e;
        s01 += e * e * dt;
        s11 += e * e * dt * dt;
        r0 += e * v[i];
        r1 += e * dt * v[i];
    }
    const double det = s00 * s11 - s01 * s01;
    if (det == 0.0) throw ConsistencyError("fit_left_exp_tail: singular normal equations");
    ExpTail tail;
    tail.rate = rate;
    tail.t_ref = t_ref;
    tail.c0 = (s11 * r0 - s01 * r1) / det;
    tail.c1 = (s00 * r1 - s01 * r0) / det;

    double worst = 0.0;
    for (std::size_t i = 0; i < window; ++i) {
        const double model = tail.value(g[i]);
        const double scale = std::max(std::abs(v[i]), 1e-300);
        worst = std::max(worst, std::abs(model - v[i]) / scale);
    }
    return {tail, worst};
}

}  // namespace debx
