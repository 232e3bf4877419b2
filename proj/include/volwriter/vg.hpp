#pragma once

#include "volwriter/dates.hpp"
#include "volwriter/types.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace volwriter::vg {

/// Variance-Gamma parameter triple plus fit metadata.
/// sigma: diffusion scale of the subordinated Brownian motion,
/// nu: variance rate of the gamma clock, theta: drift of the
/// subordinated Brownian motion.
struct VgParams {
    double sigma = 0.0;
    double nu = 0.0;
    double theta = 0.0;
    std::optional<Timestamp> fitted_at;
    double objective_value = 0.0;
    bool stale = false; // a refit failed and these params were carried over

    /// 1 - theta*nu - sigma^2*nu/2; must stay positive for the
    /// martingale correction to exist.
    [[nodiscard]] double martingale_arg() const {
        return 1.0 - theta * nu - 0.5 * sigma * sigma * nu;
    }
    void validate() const; // throws NumericError outside the domain
};

/// Fourier grid: a power-of-two frequency count and a truncation
/// half-width in log-price units (0 = derive from the model cumulants
/// with a 10-standard-deviation rule).
struct PricingGrid {
    int n_points = 4096;
    double half_width = 0.0;

    void validate() const; // throws GridError with a suggested n_points
};

struct VgTerms {
    double spot = 0.0;
    double strike = 0.0;
    double tau = 0.0;
    double rate = 0.0;
    double div_yield = 0.0;
    Right right = Right::call;
};

/// Levy exponent psi(xi) = -(1/nu) log(1 - i nu theta xi + nu sigma^2 xi^2 / 2).
/// Throws NumericError when the log argument leaves the right half-plane.
std::complex<double> vg_symbol(std::complex<double> xi, const VgParams& p);

/// psi_C(xi) = i omega xi + psi(xi) with omega = -psi(-i), so that
/// psi_C(-i) = 0 and exp(X(t)) has unit expectation.
std::complex<double> convexity_corrected_symbol(std::complex<double> xi, const VgParams& p);

/// The drift correction omega = -psi(-i) as a real number.
double convexity_correction(const VgParams& p);

/// Cosine-expansion pricer for one (tau, rate, div_yield, params, grid)
/// tuple. The frequency-domain work is done once in the constructor;
/// price() is cheap per strike, which is what chain-wide calibration and
/// quote generation lean on.
class ChainPricer {
public:
    ChainPricer(double tau, double rate, double div_yield, const VgParams& p,
                const PricingGrid& grid = {});

    [[nodiscard]] double price(double spot, double strike, Right right) const;

private:
    double tau_;
    double df_;            // e^{-rate * tau}
    double a_ = 0.0;       // truncation interval in ln(S_T / S)
    double b_ = 0.0;
    std::vector<double> coef_; // Re[phi(u_k) exp(-i u_k a)] * 2/(b-a), k=0 halved
};

/// European price; prices below 1e-10 * spot are floored at zero.
double vg_price(const VgTerms& terms, const VgParams& p, const PricingGrid& grid = {});

/// Central-difference delta with bump dS = bump_fraction * spot.
double vg_delta(const VgTerms& terms, const VgParams& p, const PricingGrid& grid = {},
                double bump_fraction = 1e-3);

} // namespace volwriter::vg
