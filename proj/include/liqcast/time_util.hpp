#pragma once

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace liqcast {

// Civil-date conversions on the proleptic Gregorian calendar, UTC only.
// Era-based algorithm; exact for the whole int64 range we care about.

inline std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

inline void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int yr = static_cast<int>(yoe) + static_cast<int>(era) * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = yr + (m <= 2);
}

/// Parse a UTC timestamp to epoch seconds. Accepts integer epoch seconds,
/// integer epoch milliseconds (values above 1e11), and ISO-8601
/// "YYYY-MM-DD" / "YYYY-MM-DD[T ]HH:MM:SS" with an optional trailing "Z".
inline std::optional<std::int64_t> parse_timestamp(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) return std::nullopt;

    const bool all_digits = [&] {
        std::size_t i = (s[0] == '-') ? 1 : 0;
        if (i >= s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    }();
    if (all_digits) {
        errno = 0;
        char* end = nullptr;
        const std::string tmp(s);
        const long long v = std::strtoll(tmp.c_str(), &end, 10);
        if (errno != 0 || end != tmp.c_str() + tmp.size()) return std::nullopt;
        // Heuristic: epoch milliseconds land far beyond any sane epoch-second value.
        if (v > 100000000000LL || v < -100000000000LL) return v / 1000;
        return v;
    }

    auto digits = [&](std::size_t pos, std::size_t count) -> std::optional<int> {
        if (pos + count > s.size()) return std::nullopt;
        int v = 0;
        for (std::size_t i = 0; i < count; ++i) {
            const char c = s[pos + i];
            if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
            v = v * 10 + (c - '0');
        }
        return v;
    };

    const auto year = digits(0, 4);
    if (!year || s.size() < 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    const auto month = digits(5, 2);
    const auto day = digits(8, 2);
    if (!month || !day || *month < 1 || *month > 12 || *day < 1 || *day > 31) return std::nullopt;

    int hh = 0, mm = 0, ss = 0;
    if (s.size() > 10) {
        if (s[10] != 'T' && s[10] != ' ') return std::nullopt;
        const auto h = digits(11, 2), mi = digits(14, 2), se = digits(17, 2);
        if (!h || !mi || !se || s.size() < 19 || s[13] != ':' || s[16] != ':') return std::nullopt;
        hh = *h; mm = *mi; ss = *se;
        if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
        std::string_view rest = s.substr(19);
        if (!rest.empty() && rest != "Z") return std::nullopt;
    }
    return days_from_civil(*year, static_cast<unsigned>(*month), static_cast<unsigned>(*day)) * 86400
           + hh * 3600 + mm * 60 + ss;
}

/// Format epoch seconds as "YYYY-MM-DDTHH:MM:SSZ".
inline std::string format_timestamp(std::int64_t epoch_s) {
    std::int64_t days = epoch_s / 86400;
    std::int64_t rem = epoch_s % 86400;
    if (rem < 0) { rem += 86400; --days; }
    int y; unsigned m, d;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02lld:%02lld:%02lldZ",
                  y, m, d,
                  static_cast<long long>(rem / 3600),
                  static_cast<long long>((rem % 3600) / 60),
                  static_cast<long long>(rem % 60));
    return buf;
}

} // namespace liqcast
