#pragma once

#include "volwriter/types.hpp"

namespace volwriter::bsm {

struct BsmInputs {
    double spot = 0.0;
    double strike = 0.0;
    double tau = 0.0;       // year fraction
    double rate = 0.0;      // continuously compounded, annualized
    double div_yield = 0.0; // continuous, annualized
    double vol = 0.0;       // annualized
    Right right = Right::call;
};

/// European price. tau = 0 yields intrinsic value; vol = 0 yields the
/// discounted intrinsic max(+/-(S e^{-q tau} - K e^{-r tau}), 0).
double bsm_price(const BsmInputs& in);

/// Delta as Phi(d1) for calls and Phi(d1) - 1 for puts. This convention
/// carries no dividend discount factor; pass dividend_adjusted = true for
/// e^{-q tau} Phi(d1), the exact dPrice/dS. Requires tau > 0 and vol > 0.
double bsm_delta(const BsmInputs& in, bool dividend_adjusted = false);

/// Volatility that reprices `market_price` to within 1e-10 * spot, found
/// by safeguarded Newton with bisection fallback on [1e-4, 5]. The vol
/// field of `in` is ignored. Throws NoSolutionError when the price sits
/// outside the no-arbitrage band, NumericError on non-convergence. Prices
/// inside the band but below the value at the 1e-4 vol floor clamp to the
/// floor (near-expiry deep ITM quotes).
double implied_vol(double market_price, const BsmInputs& in);

} // namespace volwriter::bsm
