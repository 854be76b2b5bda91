#pragma once

#include <cstdint>

namespace shotnoise {

/// Counter-based stream keyed by (seed, stream index). Output k of the stream
/// is a pure function of (seed, index, k), so replicate i draws the same
/// numbers no matter which worker runs it.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t index) noexcept;

    std::uint64_t next_u64() noexcept;

    /// Uniform on the open interval (0, 1).
    double uniform() noexcept;

    /// Unit-rate exponential draw, strictly positive.
    double unit_exponential() noexcept;

    std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Independent seed for a sub-computation (estimator kind, scan point).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) noexcept;

namespace stream_tag {
inline constexpr std::uint64_t crude = 1;
inline constexpr std::uint64_t importance = 2;
inline constexpr std::uint64_t tilted_horizon = 3;
inline constexpr std::uint64_t martingale = 4;
inline constexpr std::uint64_t intensity = 5;
inline constexpr std::uint64_t scan_point = 0x100;
} // namespace stream_tag

} // namespace shotnoise
