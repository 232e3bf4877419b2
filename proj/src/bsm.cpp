#include "volwriter/bsm.hpp"

#include "volwriter/errors.hpp"
#include "volwriter/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace volwriter::bsm {

namespace {

void check_inputs(const BsmInputs& in) {
    if (!std::isfinite(in.spot) || !std::isfinite(in.strike) || !std::isfinite(in.tau) ||
        !std::isfinite(in.rate) || !std::isfinite(in.div_yield) || !std::isfinite(in.vol))
        throw NumericError("bsm: non-finite input");
    if (in.spot <= 0.0 || in.strike <= 0.0 || in.tau < 0.0 || in.vol < 0.0)
        throw NumericError("bsm: inputs outside domain (S>0, K>0, tau>=0, vol>=0)");
}

double d1_of(const BsmInputs& in) {
    const double sq = in.vol * std::sqrt(in.tau);
    return (std::log(in.spot / in.strike) + (in.rate - in.div_yield) * in.tau) / sq + 0.5 * sq;
}

double vega(const BsmInputs& in) {
    return in.spot * std::exp(-in.div_yield * in.tau) * normal_pdf(d1_of(in)) *
           std::sqrt(in.tau);
}

} // namespace

double bsm_price(const BsmInputs& in) {
    check_inputs(in);
    const double sign = in.right == Right::call ? 1.0 : -1.0;
    if (in.tau == 0.0)
        return std::max(sign * (in.spot - in.strike), 0.0);
    const double df_q = std::exp(-in.div_yield * in.tau);
    const double df_r = std::exp(-in.rate * in.tau);
    if (in.vol == 0.0)
        return std::max(sign * (in.spot * df_q - in.strike * df_r), 0.0);
    const double d1 = d1_of(in);
    const double d2 = d1 - in.vol * std::sqrt(in.tau);
    return sign * (in.spot * df_q * normal_cdf(sign * d1) -
                   in.strike * df_r * normal_cdf(sign * d2));
}

double bsm_delta(const BsmInputs& in, bool dividend_adjusted) {
    check_inputs(in);
    if (in.tau == 0.0 || in.vol == 0.0)
        throw NumericError("bsm_delta: degenerate input (tau or vol is zero)");
    const double nd1 = normal_cdf(d1_of(in));
    const double base = in.right == Right::call ? nd1 : nd1 - 1.0;
    return dividend_adjusted ? std::exp(-in.div_yield * in.tau) * base : base;
}

double implied_vol(double market_price, const BsmInputs& in) {
    constexpr double kVolLo = 1e-4;
    constexpr double kVolHi = 5.0;
    constexpr int kMaxIter = 200;

    BsmInputs work = in;
    work.vol = kVolLo;
    check_inputs(work);
    if (!std::isfinite(market_price))
        throw NumericError("implied_vol: non-finite price");
    if (work.tau == 0.0)
        throw NumericError("implied_vol: tau must be positive");

    const double df_q = std::exp(-work.div_yield * work.tau);
    const double df_r = std::exp(-work.rate * work.tau);
    const double fwd = work.spot * df_q;
    const double disc_k = work.strike * df_r;
    const double lo_bound = work.right == Right::call ? std::max(fwd - disc_k, 0.0)
                                                      : std::max(disc_k - fwd, 0.0);
    const double hi_bound = work.right == Right::call ? fwd : disc_k;
    if (market_price < lo_bound || market_price > hi_bound)
        throw NoSolutionError("implied_vol: price " + std::to_string(market_price) +
                              " outside no-arbitrage bounds [" + std::to_string(lo_bound) +
                              ", " + std::to_string(hi_bound) + "]");

    const double tol = 1e-10 * work.spot;
    double lo = kVolLo, hi = kVolHi;

    work.vol = lo;
    if (bsm_price(work) - market_price > tol) // below the vol floor; floor is closest
        return kVolLo;
    work.vol = hi;
    if (market_price - bsm_price(work) > tol)
        throw NoSolutionError("implied_vol: price above value at vol cap 5.0");

    double sigma = 0.2;
    for (int i = 0; i < kMaxIter; ++i) {
        work.vol = sigma;
        const double diff = bsm_price(work) - market_price;
        if (std::abs(diff) <= tol)
            return sigma;
        if (diff > 0.0)
            hi = sigma;
        else
            lo = sigma;
        const double v = vega(work);
        double next = v > 1e-12 ? sigma - diff / v : lo;
        if (!(next > lo && next < hi)) // Newton left the bracket; bisect
            next = 0.5 * (lo + hi);
        sigma = next;
    }
    work.vol = sigma;
    if (std::abs(bsm_price(work) - market_price) <= tol)
        return sigma;
    throw NumericError("implied_vol: no convergence in 200 iterations");
}

} // namespace volwriter::bsm
