#pragma once

#include <span>

#include "blogrank/corpus.hpp"

namespace blogrank {

/// Tuning constants for the time-decayed post scores. gamma scales every
/// score; delta controls how fast older contributions decay.
struct ScoreParams {
    double gamma = 4.0;
    double delta = 1.0;
    Date as_of;
};

struct PostScore {
    std::string post_id;
    double value = 0.0;
};

/// MEIBI post score: gamma * (comments+1) * (post_age+1)^(-delta) * inlinks.
/// Requires params.as_of >= post.published_at.
PostScore meibi_post_score(const PostRecord& post, const ScoreParams& params);

/// MEIBIX post score: gamma * (comments+1) * sum over inlinks of
/// (link_age+1)^(-delta), where a link's age is counted from its cited_at
/// date up to params.as_of.
PostScore meibix_post_score(const PostRecord& post, const ScoreParams& params);

/// Largest m with 0 <= m <= |scores| such that at least m scores are >= m.
long hirsch_index(std::span<const double> scores);

/// Hirsch search over the blogger's MEIBI post scores.
long meibi_index(const std::string& author_id, const Corpus& corpus, const ScoreParams& params);

/// Hirsch search over the blogger's MEIBIX post scores.
long meibix_index(const std::string& author_id, const Corpus& corpus, const ScoreParams& params);

/// Classical h-index: largest h such that at least h of the blogger's posts
/// have >= h inlinks each.
long h_index(const std::string& author_id, const Corpus& corpus);

/// Number of posts the blogger has in the corpus.
long activity_index(const std::string& author_id, const Corpus& corpus);

}  // namespace blogrank
