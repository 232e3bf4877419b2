#include "volwriter/market_data.hpp"

#include "volwriter/csv.hpp"
#include "volwriter/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

namespace volwriter {

namespace {

void check_bar(const QuoteBar& b, const std::string& where) {
    if (b.bid > b.ask)
        throw DataError(where + ": crossed quote, bid " + csv::format_double(b.bid) +
                        " > ask " + csv::format_double(b.ask));
    const double lo = std::min(b.open, b.close);
    const double hi = std::max(b.open, b.close);
    if (b.low > lo || b.high < hi)
        throw DataError(where + ": bar violates low <= open/close <= high");
    for (double v : {b.open, b.high, b.low, b.close, b.bid, b.ask})
        if (!(v > 0.0) || !std::isfinite(v))
            throw DataError(where + ": nonpositive or non-finite price");
}

} // namespace

std::string format_option(const OptionKey& k) {
    return std::string(1, char(k.right)) + ":" + csv::format_double(k.strike) + ":" +
           format_date(k.expiry);
}

void TradingCalendar::validate() const {
    if (sessions.empty())
        throw DataError("calendar: no sessions");
    if (session_length <= 0)
        throw DataError("calendar: session_length must be positive");
    if (settlement_minute < 0 || settlement_minute >= session_length)
        throw DataError("calendar: settlement_minute outside session");
    for (std::size_t i = 1; i < sessions.size(); ++i)
        if (!(std::chrono::sys_days(sessions[i - 1]) < std::chrono::sys_days(sessions[i])))
            throw DataError("calendar: session dates must be strictly increasing");
}

std::optional<int> TradingCalendar::find_session(const Date& d) const {
    auto it = std::lower_bound(sessions.begin(), sessions.end(), d,
                               [](const Date& a, const Date& b) {
                                   return std::chrono::sys_days(a) < std::chrono::sys_days(b);
                               });
    if (it == sessions.end() || *it != d)
        return std::nullopt;
    return int(it - sessions.begin());
}

int TradingCalendar::session_index(const Date& d) const {
    if (auto i = find_session(d))
        return *i;
    throw DataError("date " + format_date(d) + " is not a calendar session");
}

long TradingCalendar::global_minute(const Timestamp& t) const {
    if (t.minute < 0 || t.minute >= session_length)
        throw DataError("minute " + std::to_string(t.minute) + " outside session [0, " +
                        std::to_string(session_length) + ")");
    return long(session_index(t.date)) * session_length + t.minute;
}

Timestamp TradingCalendar::timestamp_of(long gm) const {
    const long s = gm / session_length;
    if (gm < 0 || s >= long(sessions.size()))
        throw DataError("global minute outside calendar");
    return Timestamp{sessions[std::size_t(s)], int(gm % session_length)};
}

double TradingCalendar::tau_to_settlement(const Timestamp& t, const Date& expiry) const {
    auto it = std::upper_bound(sessions.begin(), sessions.end(), expiry,
                               [](const Date& a, const Date& b) {
                                   return std::chrono::sys_days(a) < std::chrono::sys_days(b);
                               });
    if (it == sessions.begin())
        return 0.0;
    const int idx = int(it - sessions.begin()) - 1;
    const long settle = long(idx) * session_length + settlement_minute;
    const long now = global_minute(t);
    return settle > now ? year_fraction(settle - now) : 0.0;
}

MarketCsvPaths MarketCsvPaths::in_dir(const std::string& dir) {
    return MarketCsvPaths{dir + "/underlying.csv", dir + "/options.csv", dir + "/vix.csv",
                          dir + "/rates.csv"};
}

void SnapshotStore::index_expiries() {
    by_expiry_.clear();
    for (const auto& kv : options_)
        by_expiry_[kv.first.expiry].push_back(&kv);
}

SnapshotStore SnapshotStore::Builder::build() && {
    calendar.validate();
    const std::size_t want = std::size_t(calendar.n_sessions()) * calendar.session_length;
    if (underlying.size() != want)
        throw DataError("underlying series incomplete: have " +
                        std::to_string(underlying.size()) + " bars, calendar needs " +
                        std::to_string(want));
    if (vix.empty())
        throw DataError("vix series is empty");
    if (rates.empty())
        throw DataError("rates series is empty");
    if (vix.begin()->first > calendar.sessions.front())
        throw DataError("vix series starts after the first session");
    if (rates.begin()->first > calendar.sessions.front())
        throw DataError("rates series starts after the first session");

    SnapshotStore s;
    s.calendar_ = std::move(calendar);
    s.underlying_ = std::move(underlying);
    for (auto& [key, series] : options)
        s.options_.emplace(key, OptionSeries{std::move(series.first), std::move(series.second)});
    s.vix_ = std::move(vix);
    s.rates_ = std::move(rates);
    s.index_expiries();
    return s;
}

bool operator==(const SnapshotStore& a, const SnapshotStore& b) {
    return a.calendar_ == b.calendar_ && a.underlying_ == b.underlying_ &&
           a.options_ == b.options_ && a.vix_ == b.vix_ && a.rates_ == b.rates_;
}

const QuoteBar& SnapshotStore::underlying_at(const Timestamp& t) const {
    return underlying_[std::size_t(calendar_.global_minute(t))];
}

std::optional<OptionQuote> SnapshotStore::try_last_quote(const OptionKey& key,
                                                         const Timestamp& t,
                                                         int max_staleness) const {
    auto it = options_.find(key);
    if (it == options_.end())
        return std::nullopt;
    const auto& series = it->second;
    const long gm = calendar_.global_minute(t);
    auto pos = std::upper_bound(series.minute.begin(), series.minute.end(), gm);
    if (pos == series.minute.begin())
        return std::nullopt;
    const std::size_t i = std::size_t(pos - series.minute.begin()) - 1;
    if (gm - series.minute[i] > max_staleness)
        return std::nullopt;
    return OptionQuote{key, series.bar[i], std::nullopt};
}

OptionQuote SnapshotStore::last_quote(const OptionKey& key, const Timestamp& t,
                                      int max_staleness) const {
    if (auto q = try_last_quote(key, t, max_staleness))
        return *q;
    throw StaleDataError("no quote for " + format_option(key) + " within " +
                         std::to_string(max_staleness) + " minutes of " + format_timestamp(t));
}

MarketSnapshot SnapshotStore::snapshot_at(const Timestamp& t, int max_staleness) const {
    MarketSnapshot snap;
    snap.t = t;
    snap.underlying = underlying_at(t);
    snap.vix_close = vix_last_known(t.date);
    snap.risk_free = risk_free_at(t.date);
    snap.div_yield = div_yield_at(t.date);
    const long gm = calendar_.global_minute(t);
    for (auto it = by_expiry_.lower_bound(t.date); it != by_expiry_.end(); ++it) {
        for (const auto* kv : it->second) {
            const auto& series = kv->second;
            auto pos = std::upper_bound(series.minute.begin(), series.minute.end(), gm);
            if (pos == series.minute.begin())
                continue;
            const std::size_t i = std::size_t(pos - series.minute.begin()) - 1;
            if (gm - series.minute[i] > max_staleness)
                continue;
            snap.chain.push_back(OptionQuote{kv->first, series.bar[i], std::nullopt});
        }
    }
    std::sort(snap.chain.begin(), snap.chain.end(),
              [](const OptionQuote& a, const OptionQuote& b) { return a.key < b.key; });
    return snap;
}

double SnapshotStore::vix_last_known(const Date& d) const {
    auto it = vix_.lower_bound(d); // first >= d
    if (it != vix_.begin())
        --it; // latest strictly before d
    return it->second;
}

std::vector<double> SnapshotStore::vix_window_before(const Date& d, int count) const {
    auto it = vix_.lower_bound(d);
    if (it != vix_.begin())
        --it; // the "current" element vix_last_known reports
    std::vector<double> out;
    while (it != vix_.begin() && int(out.size()) < count) {
        --it;
        out.push_back(it->second);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

double SnapshotStore::risk_free_at(const Date& d) const {
    auto it = rates_.upper_bound(d);
    if (it == rates_.begin())
        throw DataError("no rates on or before " + format_date(d));
    return std::prev(it)->second.first;
}

double SnapshotStore::div_yield_at(const Date& d) const {
    auto it = rates_.upper_bound(d);
    if (it == rates_.begin())
        throw DataError("no rates on or before " + format_date(d));
    return std::prev(it)->second.second;
}

SnapshotStore SnapshotStore::slice(const Date& start, const Date& end) const {
    Builder b;
    b.calendar.session_length = calendar_.session_length;
    b.calendar.settlement_minute = calendar_.settlement_minute;
    for (const auto& d : calendar_.sessions)
        if (std::chrono::sys_days(d) >= std::chrono::sys_days(start) &&
            std::chrono::sys_days(d) <= std::chrono::sys_days(end))
            b.calendar.sessions.push_back(d);
    if (b.calendar.sessions.empty())
        throw DataError("slice [" + format_date(start) + ", " + format_date(end) +
                        "] contains no sessions");
    const long lo = calendar_.global_minute({b.calendar.sessions.front(), 0});
    const long hi = calendar_.global_minute(
        {b.calendar.sessions.back(), calendar_.session_length - 1});
    b.underlying.assign(underlying_.begin() + lo, underlying_.begin() + hi + 1);
    for (const auto& [key, series] : options_) {
        std::vector<long> gms;
        std::vector<QuoteBar> bars;
        for (std::size_t i = 0; i < series.minute.size(); ++i) {
            if (series.minute[i] >= lo && series.minute[i] <= hi) {
                gms.push_back(series.minute[i] - lo);
                bars.push_back(series.bar[i]);
            }
        }
        if (!gms.empty())
            b.options.emplace(key, std::make_pair(std::move(gms), std::move(bars)));
    }
    for (const auto& [d, v] : vix_)
        if (std::chrono::sys_days(d) <= std::chrono::sys_days(end))
            b.vix.emplace(d, v);
    for (const auto& [d, rq] : rates_)
        if (std::chrono::sys_days(d) <= std::chrono::sys_days(end))
            b.rates.emplace(d, rq);
    return std::move(b).build();
}

// ---------------------------------------------------------------------------
// CSV loading / saving

namespace {

const std::vector<std::string_view> kUnderlyingHeader = {"date", "minute", "open", "high",
                                                         "low",  "close",  "bid",  "ask"};
const std::vector<std::string_view> kOptionsHeader = {"date",   "minute", "expiry",
                                                      "strike", "right",  "bid",
                                                      "ask"};
const std::vector<std::string_view> kVixHeader = {"date", "close"};
const std::vector<std::string_view> kRatesHeader = {"date", "risk_free", "div_yield"};

void require_fields(const std::vector<std::string_view>& fields, std::size_t n,
                    const std::string& where) {
    if (fields.size() != n)
        throw DataError(where + ": expected " + std::to_string(n) + " fields, got " +
                        std::to_string(fields.size()));
}

} // namespace

TradingCalendar infer_calendar(const std::string& underlying_csv, int session_length,
                               int settlement_minute) {
    csv::Reader reader(underlying_csv);
    reader.expect_header(kUnderlyingHeader);
    std::set<std::chrono::sys_days> dates;
    std::vector<std::string_view> f;
    while (reader.next_row(f)) {
        require_fields(f, 8, reader.where());
        dates.insert(std::chrono::sys_days(parse_date(f[0])));
    }
    TradingCalendar cal;
    cal.session_length = session_length;
    cal.settlement_minute = settlement_minute >= 0 ? settlement_minute : session_length - 1;
    for (auto d : dates)
        cal.sessions.push_back(Date{d});
    cal.validate();
    return cal;
}

SnapshotStore SnapshotStore::load(const MarketCsvPaths& paths, TradingCalendar calendar) {
    calendar.validate();
    Builder b;
    b.calendar = calendar;
    const std::size_t cells = std::size_t(calendar.n_sessions()) * calendar.session_length;
    b.underlying.assign(cells, QuoteBar{});
    std::vector<bool> seen(cells, false);

    {
        csv::Reader reader(paths.underlying);
        reader.expect_header(kUnderlyingHeader);
        std::vector<std::string_view> f;
        long prev = -1;
        while (reader.next_row(f)) {
            require_fields(f, 8, reader.where());
            const std::string where = reader.where();
            const Timestamp t{parse_date(f[0]), int(csv::parse_long(f[1], where))};
            const long gm = calendar.global_minute(t);
            if (gm <= prev)
                throw DataError(where + ": timestamps not sorted");
            prev = gm;
            QuoteBar bar{csv::parse_double(f[2], where), csv::parse_double(f[3], where),
                         csv::parse_double(f[4], where), csv::parse_double(f[5], where),
                         csv::parse_double(f[6], where), csv::parse_double(f[7], where)};
            check_bar(bar, where);
            b.underlying[std::size_t(gm)] = bar;
            seen[std::size_t(gm)] = true;
        }
    }
    for (std::size_t i = 0; i < cells; ++i)
        if (!seen[i])
            throw DataError(paths.underlying + ": missing bar at " +
                            format_timestamp(calendar.timestamp_of(long(i))));

    {
        csv::Reader reader(paths.options);
        reader.expect_header(kOptionsHeader);
        std::vector<std::string_view> f;
        long prev = -1;
        while (reader.next_row(f)) {
            require_fields(f, 7, reader.where());
            const std::string where = reader.where();
            const Timestamp t{parse_date(f[0]), int(csv::parse_long(f[1], where))};
            const long gm = calendar.global_minute(t);
            if (gm < prev)
                throw DataError(where + ": timestamps not sorted");
            prev = gm;
            OptionKey key;
            key.expiry = parse_date(f[2]);
            key.strike = csv::parse_double(f[3], where);
            if (key.strike <= 0.0)
                throw DataError(where + ": strike must be positive");
            if (f[4] == "C")
                key.right = Right::call;
            else if (f[4] == "P")
                key.right = Right::put;
            else
                throw DataError(where + ": right must be C or P, got '" + std::string(f[4]) +
                                "'");
            if (std::chrono::sys_days(key.expiry) < std::chrono::sys_days(t.date))
                throw DataError(where + ": expiry precedes quote date");
            const double bid = csv::parse_double(f[5], where);
            const double ask = csv::parse_double(f[6], where);
            const double mid = 0.5 * (bid + ask);
            QuoteBar bar{mid, mid, mid, mid, bid, ask};
            check_bar(bar, where);
            auto& series = b.options[key];
            if (!series.first.empty() && series.first.back() >= gm)
                throw DataError(where + ": duplicate or unsorted option timestamp for " +
                                format_option(key));
            series.first.push_back(gm);
            series.second.push_back(bar);
        }
    }

    {
        csv::Reader reader(paths.vix);
        reader.expect_header(kVixHeader);
        std::vector<std::string_view> f;
        while (reader.next_row(f)) {
            require_fields(f, 2, reader.where());
            const std::string where = reader.where();
            const double close = csv::parse_double(f[1], where);
            if (!(close > 0.0))
                throw DataError(where + ": vix close must be positive");
            b.vix[parse_date(f[0])] = close;
        }
    }

    {
        csv::Reader reader(paths.rates);
        reader.expect_header(kRatesHeader);
        std::vector<std::string_view> f;
        while (reader.next_row(f)) {
            require_fields(f, 3, reader.where());
            const std::string where = reader.where();
            b.rates[parse_date(f[0])] = {csv::parse_double(f[1], where),
                                         csv::parse_double(f[2], where)};
        }
    }

    return std::move(b).build();
}

void SnapshotStore::save(const std::string& dir) const {
    using csv::format_double;
    {
        std::ofstream out(dir + "/underlying.csv", std::ios::binary);
        if (!out)
            throw DataError("cannot write " + dir + "/underlying.csv");
        out << "date,minute,open,high,low,close,bid,ask\n";
        for (int s = 0; s < calendar_.n_sessions(); ++s) {
            const std::string ds = format_date(calendar_.sessions[std::size_t(s)]);
            for (int m = 0; m < calendar_.session_length; ++m) {
                const QuoteBar& q =
                    underlying_[std::size_t(s) * calendar_.session_length + m];
                out << ds << ',' << m << ',' << format_double(q.open) << ','
                    << format_double(q.high) << ',' << format_double(q.low) << ','
                    << format_double(q.close) << ',' << format_double(q.bid) << ','
                    << format_double(q.ask) << '\n';
            }
        }
    }
    {
        std::ofstream out(dir + "/options.csv", std::ios::binary);
        if (!out)
            throw DataError("cannot write " + dir + "/options.csv");
        out << "date,minute,expiry,strike,right,bid,ask\n";
        // time-major so timestamps are sorted; key order within a minute
        std::map<long, std::vector<std::pair<const OptionKey*, const QuoteBar*>>> rows;
        for (const auto& [key, series] : options_)
            for (std::size_t i = 0; i < series.minute.size(); ++i)
                rows[series.minute[i]].emplace_back(&key, &series.bar[i]);
        for (const auto& [gm, list] : rows) {
            const Timestamp t = calendar_.timestamp_of(gm);
            const std::string ds = format_date(t.date);
            for (const auto& [key, bar] : list) {
                out << ds << ',' << t.minute << ',' << format_date(key->expiry) << ','
                    << format_double(key->strike) << ',' << char(key->right) << ','
                    << format_double(bar->bid) << ',' << format_double(bar->ask) << '\n';
            }
        }
    }
    {
        std::ofstream out(dir + "/vix.csv", std::ios::binary);
        if (!out)
            throw DataError("cannot write " + dir + "/vix.csv");
        out << "date,close\n";
        for (const auto& [d, v] : vix_)
            out << format_date(d) << ',' << format_double(v) << '\n';
    }
    {
        std::ofstream out(dir + "/rates.csv", std::ios::binary);
        if (!out)
            throw DataError("cannot write " + dir + "/rates.csv");
        out << "date,risk_free,div_yield\n";
        for (const auto& [d, rq] : rates_)
            out << format_date(d) << ',' << format_double(rq.first) << ','
                << format_double(rq.second) << '\n';
    }
}

} // namespace volwriter
