#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "blogrank/corpus.hpp"
#include "blogrank/influence_flow.hpp"
#include "blogrank/metrics.hpp"

namespace blogrank {

enum class Method { Activity, HIndex, Meibi, Meibix, InfluenceFlow };

/// Canonical method labels: activity, h-index, meibi, meibix, influence-flow.
std::string_view method_name(Method method);
std::optional<Method> method_from_name(std::string_view name);

struct RankedEntry {
    std::string author_id;
    double score = 0.0;
    int rank = 0;

    bool operator==(const RankedEntry&) const = default;
};

/// Scores in non-increasing order, ranks 1..n with no gaps. Ties are broken
/// to a total order (see kTiePolicy), so two runs over the same corpus give
/// identical lists.
struct RankedList {
    std::string method;
    std::string tie_policy;
    std::vector<RankedEntry> entries;

    bool operator==(const RankedList&) const = default;
};

inline constexpr std::string_view kTiePolicy = "score,inlinks,comments,author_id";

struct RankOptions {
    /// Defaults to {gamma=4, delta=1, as_of=corpus.as_of} when unset.
    std::optional<ScoreParams> score;
    InfluenceParams influence;
    /// Collects graph-construction warnings for the influence-flow method.
    std::vector<std::string>* warnings = nullptr;
};

/// Every blogger in the corpus exactly once, ordered by the method's score.
RankedList rank_bloggers(const Corpus& corpus, Method method, const RankOptions& options = {});

/// First min(k, n) entries, ranks preserved. Requires k >= 1.
RankedList top_k(const RankedList& list, int k);

enum class MissingPolicy {
    /// A subject absent from a list ranks just past its end (len + 1).
    Append,
    /// Membership must match exactly; mismatch is an error.
    Strict,
};

/// Spearman's rho over the union of both lists' subjects:
/// 1 - 6*sum(d^2) / (n(n^2-1)). Requires at least two subjects.
double spearman_rho(const RankedList& a, const RankedList& b,
                    MissingPolicy policy = MissingPolicy::Append);

/// "rank,author_id,score" rows with a header line.
std::string ranked_list_to_csv(const RankedList& list);

/// Aligned three-column plain text.
std::string ranked_list_to_text(const RankedList& list);

/// Integral scores print without a decimal part, others with six decimals.
std::string format_score(double value);

}  // namespace blogrank
