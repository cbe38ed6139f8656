#include "blogrank/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace blogrank {

namespace {

void check_params(const ScoreParams& params) {
    if (params.gamma <= 0.0) throw std::invalid_argument("gamma must be positive");
    if (params.delta <= 0.0) throw std::invalid_argument("delta must be positive");
}

template <typename ScoreFn>
std::vector<double> blogger_post_scores(const std::string& author_id, const Corpus& corpus,
                                        ScoreFn&& score) {
    const std::vector<std::string>& ids = corpus.posts_of(author_id);
    std::vector<double> values;
    values.reserve(ids.size());
    for (const std::string& id : ids) values.push_back(score(corpus.post(id)));
    return values;
}

}  // namespace

PostScore meibi_post_score(const PostRecord& post, const ScoreParams& params) {
    check_params(params);
    const long age = age_days(post.published_at, params.as_of);
    const double decay = std::pow(static_cast<double>(age) + 1.0, -params.delta);
    const double value = params.gamma * (static_cast<double>(post.comment_count) + 1.0) * decay *
                         static_cast<double>(post.inlinks.size());
    return {post.post_id, value};
}

PostScore meibix_post_score(const PostRecord& post, const ScoreParams& params) {
    check_params(params);
    double decay_sum = 0.0;
    for (const InlinkRecord& link : post.inlinks) {
        const long age = age_days(link.cited_at, params.as_of);
        decay_sum += std::pow(static_cast<double>(age) + 1.0, -params.delta);
    }
    const double value = params.gamma * (static_cast<double>(post.comment_count) + 1.0) * decay_sum;
    return {post.post_id, value};
}

long hirsch_index(std::span<const double> scores) {
    std::vector<double> sorted(scores.begin(), scores.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    long h = 0;
    while (h < static_cast<long>(sorted.size()) && sorted[h] >= static_cast<double>(h + 1)) ++h;
    return h;
}

long meibi_index(const std::string& author_id, const Corpus& corpus, const ScoreParams& params) {
    const auto values = blogger_post_scores(
        author_id, corpus, [&](const PostRecord& p) { return meibi_post_score(p, params).value; });
    return hirsch_index(values);
}

long meibix_index(const std::string& author_id, const Corpus& corpus, const ScoreParams& params) {
    const auto values = blogger_post_scores(
        author_id, corpus, [&](const PostRecord& p) { return meibix_post_score(p, params).value; });
    return hirsch_index(values);
}

long h_index(const std::string& author_id, const Corpus& corpus) {
    const auto values = blogger_post_scores(
        author_id, corpus, [](const PostRecord& p) { return static_cast<double>(p.inlinks.size()); });
    return hirsch_index(values);
}

long activity_index(const std::string& author_id, const Corpus& corpus) {
    return static_cast<long>(corpus.posts_of(author_id).size());
}

}  // namespace blogrank
