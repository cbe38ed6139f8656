#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "blogrank/ranking.hpp"

namespace blogrank {

struct YearMonth {
    int year = 1970;
    unsigned month = 1;

    /// Parses "YYYY-MM"; throws std::invalid_argument otherwise.
    static YearMonth parse(std::string_view text);

    auto operator<=>(const YearMonth&) const = default;
};

struct DateWindow {
    Date start;
    Date end;

    bool operator==(const DateWindow&) const = default;
};

/// One window per calendar month from first to last inclusive, each running
/// from the month's first day to its last.
std::vector<DateWindow> monthly_windows(YearMonth first, YearMonth last);

/// "YYYY-MM" for exact calendar months, "start..end" otherwise.
std::string window_label(const DateWindow& window);

inline constexpr int kAbsentRank = 0;

/// Per-window top-k standings. Rows are subjects ordered by the window in
/// which they first entered a top-k (ties by rank there, then by id);
/// cells hold the rank or kAbsentRank.
struct EvolutionMatrix {
    std::string method;
    std::vector<DateWindow> windows;
    std::vector<std::string> subjects;
    std::vector<std::vector<int>> cells;  // cells[subject][window]
};

/// Scores each window independently: filter_window, rank_bloggers with the
/// window end as the as-of date, then top_k.
EvolutionMatrix evolution_matrix(const Corpus& corpus, Method method, const RankOptions& options,
                                 const std::vector<DateWindow>& windows, int k);

/// Subjects x windows table; absent cells render as "-".
std::string evolution_to_csv(const EvolutionMatrix& matrix);

}  // namespace blogrank
