#include "blogrank/temporal.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <unordered_map>

namespace blogrank {

YearMonth YearMonth::parse(std::string_view text) {
    if (text.size() != 7 || text[4] != '-') {
        throw std::invalid_argument("invalid month \"" + std::string(text) + "\" (expected YYYY-MM)");
    }
    const Date first = Date::parse(std::string(text) + "-01");
    return {first.year(), first.month()};
}

std::vector<DateWindow> monthly_windows(YearMonth first, YearMonth last) {
    if (first > last) {
        throw std::invalid_argument("month range is inverted");
    }
    std::vector<DateWindow> windows;
    int y = first.year;
    unsigned m = first.month;
    while (YearMonth{y, m} <= last) {
        windows.push_back({Date::first_of_month(y, m), Date::last_of_month(y, m)});
        if (m == 12) {
            m = 1;
            ++y;
        } else {
            ++m;
        }
    }
    return windows;
}

std::string window_label(const DateWindow& window) {
    const bool whole_month = window.start.day() == 1 && window.start.year() == window.end.year() &&
                             window.start.month() == window.end.month() &&
                             window.end == Date::last_of_month(window.end.year(), window.end.month());
    if (whole_month) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%04d-%02u", window.start.year(), window.start.month());
        return buf;
    }
    return window.start.to_string() + ".." + window.end.to_string();
}

EvolutionMatrix evolution_matrix(const Corpus& corpus, Method method, const RankOptions& options,
                                 const std::vector<DateWindow>& windows, int k) {
    if (windows.empty()) throw std::invalid_argument("at least one window is required");
    if (k < 1) throw std::invalid_argument("k must be >= 1");

    std::vector<RankedList> tops;
    tops.reserve(windows.size());
    for (const DateWindow& w : windows) {
        const Corpus windowed = filter_window(corpus, w.start, w.end);
        RankOptions per_window = options;
        ScoreParams params = options.score.value_or(ScoreParams{4.0, 1.0, w.end});
        params.as_of = w.end;
        per_window.score = params;
        tops.push_back(top_k(rank_bloggers(windowed, method, per_window), k));
    }

    EvolutionMatrix matrix;
    matrix.method = std::string(method_name(method));
    matrix.windows = windows;

    std::unordered_map<std::string, std::size_t> row_of;
    for (const RankedList& top : tops) {
        for (const RankedEntry& e : top.entries) {
            if (row_of.emplace(e.author_id, matrix.subjects.size()).second) {
                matrix.subjects.push_back(e.author_id);
            }
        }
    }
    matrix.cells.assign(matrix.subjects.size(), std::vector<int>(windows.size(), kAbsentRank));
    for (std::size_t j = 0; j < tops.size(); ++j) {
        for (const RankedEntry& e : tops[j].entries) {
            matrix.cells[row_of.at(e.author_id)][j] = e.rank;
        }
    }
    return matrix;
}

std::string evolution_to_csv(const EvolutionMatrix& matrix) {
    std::ostringstream out;
    out << "author_id";
    for (const DateWindow& w : matrix.windows) out << ',' << window_label(w);
    out << '\n';
    for (std::size_t s = 0; s < matrix.subjects.size(); ++s) {
        out << matrix.subjects[s];
        for (std::size_t j = 0; j < matrix.windows.size(); ++j) {
            out << ',';
            if (matrix.cells[s][j] == kAbsentRank) {
                out << '-';
            } else {
                out << matrix.cells[s][j];
            }
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace blogrank
