#pragma once

#include <cstddef>
#include <span>

namespace shotnoise {

/// (count, sum, sum of squares) triple with Neumaier-compensated sums.
/// merge() is associative up to rounding.
class Accumulator {
public:
    void add(double v) noexcept;
    void merge(const Accumulator& other) noexcept;

    std::size_t count() const noexcept { return n_; }
    double sum() const noexcept { return sum_ + comp_; }
    double sum_of_squares() const noexcept { return sq_ + sq_comp_; }
    double mean() const noexcept;
    double variance() const noexcept;

private:
    std::size_t n_ = 0;
    double sum_ = 0.0, comp_ = 0.0;
    double sq_ = 0.0, sq_comp_ = 0.0;
};

struct Summary {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;  // unbiased; 0 for n < 2
    double std_error = 0.0;
    double min = 0.0;
    double max = 0.0;
};

/// Two-pass compensated mean and variance in index order, so the result
/// depends only on the values, never on how they were produced.
Summary summarize(std::span<const double> values);

} // namespace shotnoise
