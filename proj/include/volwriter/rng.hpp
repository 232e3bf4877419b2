#pragma once

#include <cstdint>

namespace volwriter {

/// Counter-based uniform generator: output i is a hash of (seed, stream, i),
/// so draws are reproducible no matter how work is scheduled or split.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();

    /// Uniform in the open interval (0, 1).
    double u01();

    /// Standard normal via inverse-CDF (accurate to ~1e-15).
    double normal();

    /// Gamma(shape, scale). Handles arbitrarily small shapes without
    /// intermediate underflow (log-space boosting for shape < 1).
    double gamma(double shape, double scale);

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Inverse standard normal CDF. Domain (0, 1).
double normal_quantile(double p);

/// Standard normal CDF via the complementary error function.
double normal_cdf(double x);

/// Standard normal density.
double normal_pdf(double x);

} // namespace volwriter
