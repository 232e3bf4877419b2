#pragma once

#include "volwriter/dates.hpp"
#include "volwriter/types.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace volwriter {

struct QuoteBar {
    double open = 0.0;
    double high = 0.0;
    double low = 0.0;
    double close = 0.0;
    double bid = 0.0;
    double ask = 0.0;

    [[nodiscard]] double mid() const { return 0.5 * (bid + ask); }
    friend bool operator==(const QuoteBar&, const QuoteBar&) = default;
};

struct OptionKey {
    Date expiry{};
    double strike = 0.0;
    Right right = Right::call;

    friend auto operator<=>(const OptionKey& a, const OptionKey& b) {
        if (auto c = std::chrono::sys_days(a.expiry) <=> std::chrono::sys_days(b.expiry);
            c != std::strong_ordering::equal)
            return c;
        if (auto c = a.strike <=> b.strike; c != std::partial_ordering::equivalent)
            return c == std::partial_ordering::less ? std::strong_ordering::less
                                                    : std::strong_ordering::greater;
        return static_cast<char>(a.right) <=> static_cast<char>(b.right);
    }
    friend bool operator==(const OptionKey&, const OptionKey&) = default;
};

std::string format_option(const OptionKey& k);

struct OptionQuote {
    OptionKey key;
    QuoteBar bar;
    /// Implied volatility carried from a previous-minute lookup; populated
    /// by consumers that computed it, absent otherwise.
    std::optional<double> last_iv;
};

struct TradingCalendar {
    std::vector<Date> sessions; // strictly increasing
    int session_length = kDefaultSessionLength;
    int settlement_minute = kDefaultSessionLength - 1;

    void validate() const;
    friend bool operator==(const TradingCalendar&, const TradingCalendar&) = default;

    [[nodiscard]] int n_sessions() const { return int(sessions.size()); }
    [[nodiscard]] std::optional<int> find_session(const Date& d) const;
    [[nodiscard]] int session_index(const Date& d) const; // throws DataError
    [[nodiscard]] long global_minute(const Timestamp& t) const;
    [[nodiscard]] Timestamp timestamp_of(long global_minute) const;
    [[nodiscard]] double year_fraction(long minutes) const {
        return double(minutes) / (double(kTradingDaysPerYear) * double(session_length));
    }
    /// Trading-time year fraction from t to the settlement minute of
    /// `expiry` (the last session at or before it). Never negative.
    [[nodiscard]] double tau_to_settlement(const Timestamp& t, const Date& expiry) const;
};

struct MarketSnapshot {
    Timestamp t;
    QuoteBar underlying;
    std::vector<OptionQuote> chain; // sorted by key, unique
    double vix_close = 0.0;         // last known daily close
    double risk_free = 0.0;
    double div_yield = 0.0;
};

struct MarketCsvPaths {
    std::string underlying;
    std::string options;
    std::string vix;
    std::string rates;

    static MarketCsvPaths in_dir(const std::string& dir);
};

/// Immutable after construction; safe for shared concurrent reads.
class SnapshotStore {
public:
    static SnapshotStore load(const MarketCsvPaths& paths, TradingCalendar calendar);

    void save(const std::string& dir) const;

    [[nodiscard]] const TradingCalendar& calendar() const { return calendar_; }

    [[nodiscard]] const QuoteBar& underlying_at(const Timestamp& t) const;

    /// Most recent quote for `key` at or before t, no older than
    /// `max_staleness` minutes (trading time). Throws StaleDataError when
    /// nothing qualifies.
    [[nodiscard]] OptionQuote last_quote(const OptionKey& key, const Timestamp& t,
                                         int max_staleness = 30) const;
    [[nodiscard]] std::optional<OptionQuote>
    try_last_quote(const OptionKey& key, const Timestamp& t, int max_staleness = 30) const;

    /// Snapshot with the chain forward-filled within the staleness bound.
    /// Expired keys are excluded; keys with no usable quote are absent.
    [[nodiscard]] MarketSnapshot snapshot_at(const Timestamp& t, int max_staleness = 30) const;

    /// Daily close of the most recent session strictly before `d`
    /// (falls back to d's own close at the start of the series).
    [[nodiscard]] double vix_last_known(const Date& d) const;

    /// The `count` daily closes strictly before the one vix_last_known(d)
    /// reports, oldest first; shorter when history runs out.
    [[nodiscard]] std::vector<double> vix_window_before(const Date& d, int count) const;

    [[nodiscard]] double risk_free_at(const Date& d) const;
    [[nodiscard]] double div_yield_at(const Date& d) const;

    [[nodiscard]] SnapshotStore slice(const Date& start, const Date& end) const;

    friend bool operator==(const SnapshotStore& a, const SnapshotStore& b);

    // Builder interface used by the loader and the synthetic generator.
    struct Builder {
        TradingCalendar calendar;
        std::vector<QuoteBar> underlying; // dense, n_sessions * session_length
        std::map<OptionKey, std::pair<std::vector<long>, std::vector<QuoteBar>>> options;
        std::map<Date, double> vix;                             // may predate the calendar
        std::map<Date, std::pair<double, double>> rates;        // (risk_free, div_yield)

        SnapshotStore build() &&; // validates coverage
    };

private:
    SnapshotStore() = default;

    struct OptionSeries {
        std::vector<long> minute;  // global minutes, ascending
        std::vector<QuoteBar> bar; // parallel to `minute`
        friend bool operator==(const OptionSeries&, const OptionSeries&) = default;
    };

    TradingCalendar calendar_;
    std::vector<QuoteBar> underlying_;
    std::map<OptionKey, OptionSeries> options_;
    std::map<Date, std::vector<const std::map<OptionKey, OptionSeries>::value_type*>>
        by_expiry_; // rebuilt on construction; not part of equality
    std::map<Date, double> vix_;
    std::map<Date, std::pair<double, double>> rates_;

    void index_expiries();
};

/// Scans underlying.csv and returns a calendar over its distinct dates.
TradingCalendar infer_calendar(const std::string& underlying_csv, int session_length,
                               int settlement_minute = -1);

inline SnapshotStore load_market_csv(const MarketCsvPaths& paths, TradingCalendar calendar) {
    return SnapshotStore::load(paths, std::move(calendar));
}

} // namespace volwriter
