#include "shotnoise/stats.hpp"

#include <algorithm>
#include <cmath>

namespace shotnoise {

namespace {

void neumaier(double& s, double& c, double v) noexcept {
    const double t = s + v;
    if (std::abs(s) >= std::abs(v)) {
        c += (s - t) + v;
    } else {
        c += (v - t) + s;
    }
    s = t;
}

} // namespace

void Accumulator::add(double v) noexcept {
    ++n_;
    neumaier(sum_, comp_, v);
    neumaier(sq_, sq_comp_, v * v);
}

void Accumulator::merge(const Accumulator& other) noexcept {
    n_ += other.n_;
    neumaier(sum_, comp_, other.sum_);
    neumaier(sum_, comp_, other.comp_);
    neumaier(sq_, sq_comp_, other.sq_);
    neumaier(sq_, sq_comp_, other.sq_comp_);
}

double Accumulator::mean() const noexcept {
    return n_ == 0 ? 0.0 : sum() / static_cast<double>(n_);
}

double Accumulator::variance() const noexcept {
    if (n_ < 2) return 0.0;
    const double n = static_cast<double>(n_);
    const double s = sum();
    return std::max(0.0, (sum_of_squares() - s * s / n) / (n - 1.0));
}

Summary summarize(std::span<const double> values) {
    Summary out;
    out.n = values.size();
    if (values.empty()) return out;

    double s = 0.0, c = 0.0;
    for (double v : values) neumaier(s, c, v);
    out.mean = (s + c) / static_cast<double>(out.n);

    double q = 0.0, qc = 0.0;
    for (double v : values) {
        const double d = v - out.mean;
        neumaier(q, qc, d * d);
    }
    if (out.n > 1) {
        out.variance = (q + qc) / static_cast<double>(out.n - 1);
        out.std_error = std::sqrt(out.variance / static_cast<double>(out.n));
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    out.min = *lo;
    out.max = *hi;
    return out;
}

} // namespace shotnoise
