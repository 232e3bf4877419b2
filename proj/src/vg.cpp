#include "volwriter/vg.hpp"

#include "volwriter/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace volwriter::vg {

namespace {

using cd = std::complex<double>;

constexpr double kTruncationSds = 10.0;
constexpr double kPriceFloorFrac = 1e-10;

int next_pow2(int n) {
    int p = 256;
    while (p < n)
        p <<= 1;
    return p;
}

} // namespace

void VgParams::validate() const {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw NumericError("vg: sigma must be positive");
    if (!(nu > 0.0) || !std::isfinite(nu))
        throw NumericError("vg: nu must be positive");
    if (!std::isfinite(theta))
        throw NumericError("vg: theta must be finite");
    if (!(martingale_arg() > 0.0))
        throw NumericError("vg: martingale correction undefined, "
                           "1 - theta*nu - sigma^2*nu/2 = " +
                           std::to_string(martingale_arg()));
}

void PricingGrid::validate() const {
    if (n_points < 256 || (n_points & (n_points - 1)) != 0)
        throw GridError("grid: n_points must be a power of two >= 256; try " +
                        std::to_string(next_pow2(std::max(n_points, 256))));
    if (half_width < 0.0 || !std::isfinite(half_width))
        throw GridError("grid: half_width must be >= 0");
}

std::complex<double> vg_symbol(cd xi, const VgParams& p) {
    const cd i{0.0, 1.0};
    const cd w = 1.0 - i * (p.nu * p.theta) * xi + (0.5 * p.nu * p.sigma * p.sigma) * xi * xi;
    if (!(w.real() > 0.0))
        throw NumericError("vg_symbol: log argument left the right half-plane");
    return -std::log(w) / p.nu;
}

std::complex<double> convexity_corrected_symbol(cd xi, const VgParams& p) {
    p.validate();
    const cd i{0.0, 1.0};
    const cd omega = -vg_symbol(cd{0.0, -1.0}, p);
    return i * omega * xi + vg_symbol(xi, p);
}

double convexity_correction(const VgParams& p) {
    p.validate();
    return -vg_symbol(cd{0.0, -1.0}, p).real();
}

ChainPricer::ChainPricer(double tau, double rate, double div_yield, const VgParams& p,
                         const PricingGrid& grid) {
    p.validate();
    grid.validate();
    if (!(tau > 0.0) || !std::isfinite(tau))
        throw NumericError("vg pricer: tau must be positive");

    tau_ = tau;
    df_ = std::exp(-rate * tau);

    const double omega = -vg_symbol(cd{0.0, -1.0}, p).real();
    const double s2 = p.sigma * p.sigma;
    const double c1 = (rate - div_yield + omega + p.theta) * tau;
    const double c2 = (s2 + p.nu * p.theta * p.theta) * tau;
    const double th2 = p.theta * p.theta;
    const double c4 = 3.0 *
                      (s2 * s2 * p.nu + 2.0 * th2 * th2 * p.nu * p.nu * p.nu +
                       4.0 * s2 * th2 * p.nu * p.nu) *
                      tau;
    double w = grid.half_width;
    if (w <= 0.0) {
        // The cumulant rule alone undershoots at small tau/nu, where the
        // density keeps exponential tails much fatter than its standard
        // deviation suggests. Widen to where both exponential tails (the
        // right one carries an extra e^y weight) have decayed below the
        // price floor.
        const double root = std::sqrt(th2 / (s2 * s2) + 2.0 / (p.nu * s2));
        const double rate_left = root + p.theta / s2;
        const double rate_right = root - p.theta / s2 - 1.0; // e^y-weighted
        const double slowest = std::min(rate_left, rate_right);
        const double tail_w = slowest > 0.0 ? -std::log(1e-12) / slowest : 60.0;
        w = std::max(kTruncationSds * std::sqrt(c2 + std::sqrt(c4)),
                     std::min(tail_w, 60.0));
    }
    a_ = c1 - w;
    b_ = c1 + w;

    const int n = grid.n_points;
    const double du = std::numbers::pi / (b_ - a_);
    const double drift = (rate - div_yield) * tau;
    coef_.resize(std::size_t(n));
    const double scale = 2.0 / (b_ - a_);
    for (int k = 0; k < n; ++k) {
        const double u = k * du;
        const cd psi_c = cd{0.0, omega * u} + vg_symbol(cd{u, 0.0}, p);
        const cd log_phi = cd{0.0, u * drift} + tau * psi_c;
        const cd val = std::exp(log_phi + cd{0.0, -u * a_});
        coef_[std::size_t(k)] = val.real() * scale;
    }
    coef_[0] *= 0.5;
}

double ChainPricer::price(double spot, double strike, Right right) const {
    if (!(spot > 0.0) || !(strike > 0.0))
        throw NumericError("vg pricer: spot and strike must be positive");

    const double width = b_ - a_;
    const double boundary = std::clamp(std::log(strike / spot), a_, b_);
    const double eb = std::exp(b_);
    const double ea = std::exp(a_);
    const double ec = std::exp(boundary);
    const double du = std::numbers::pi / width;

    // rotation through the per-strike angle pi*(c-a)/(b-a)
    const double step = std::numbers::pi * (boundary - a_) / width;
    const double rot_c = std::cos(step);
    const double rot_s = std::sin(step);
    double cos_k = 1.0;
    double sin_k = 0.0;

    double sum = 0.0;
    const int n = int(coef_.size());
    double parity = 1.0; // (-1)^k
    for (int k = 0; k < n; ++k) {
        double chi, psi;
        if (right == Right::call) {
            chi = (parity * eb - (cos_k + k * du * sin_k) * ec) / (1.0 + k * du * k * du);
            psi = k == 0 ? b_ - boundary : -sin_k / (k * du);
            sum += coef_[std::size_t(k)] * (spot * chi - strike * psi);
        } else {
            chi = ((cos_k + k * du * sin_k) * ec - ea) / (1.0 + k * du * k * du);
            psi = k == 0 ? boundary - a_ : sin_k / (k * du);
            sum += coef_[std::size_t(k)] * (strike * psi - spot * chi);
        }
        const double nc = cos_k * rot_c - sin_k * rot_s;
        sin_k = sin_k * rot_c + cos_k * rot_s;
        cos_k = nc;
        parity = -parity;
    }
    const double price = df_ * sum;
    return price < kPriceFloorFrac * spot ? 0.0 : price;
}

double vg_price(const VgTerms& terms, const VgParams& p, const PricingGrid& grid) {
    const ChainPricer pricer(terms.tau, terms.rate, terms.div_yield, p, grid);
    return pricer.price(terms.spot, terms.strike, terms.right);
}

double vg_delta(const VgTerms& terms, const VgParams& p, const PricingGrid& grid,
                double bump_fraction) {
    if (!(bump_fraction > 0.0) || bump_fraction >= 1.0)
        throw NumericError("vg_delta: bump fraction must be in (0, 1)");
    const ChainPricer pricer(terms.tau, terms.rate, terms.div_yield, p, grid);
    const double ds = bump_fraction * terms.spot;
    const double up = pricer.price(terms.spot + ds, terms.strike, terms.right);
    const double dn = pricer.price(terms.spot - ds, terms.strike, terms.right);
    return (up - dn) / (2.0 * ds);
}

} // namespace volwriter::vg
