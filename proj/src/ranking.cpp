#include "blogrank/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

namespace blogrank {

namespace {

struct BloggerTotals {
    long long inlinks = 0;
    long long comments = 0;
};

std::map<std::string, BloggerTotals> collect_totals(const Corpus& corpus) {
    std::map<std::string, BloggerTotals> totals;
    for (const PostRecord& p : corpus.posts) {
        BloggerTotals& t = totals[p.author_id];
        t.inlinks += static_cast<long long>(p.inlinks.size());
        t.comments += p.comment_count;
    }
    return totals;
}

}  // namespace

std::string_view method_name(Method method) {
    switch (method) {
        case Method::Activity: return "activity";
        case Method::HIndex: return "h-index";
        case Method::Meibi: return "meibi";
        case Method::Meibix: return "meibix";
        case Method::InfluenceFlow: return "influence-flow";
    }
    return "unknown";
}

std::optional<Method> method_from_name(std::string_view name) {
    if (name == "activity") return Method::Activity;
    if (name == "h-index" || name == "h_index") return Method::HIndex;
    if (name == "meibi") return Method::Meibi;
    if (name == "meibix") return Method::Meibix;
    if (name == "influence-flow" || name == "influence_flow") return Method::InfluenceFlow;
    return std::nullopt;
}

RankedList rank_bloggers(const Corpus& corpus, Method method, const RankOptions& options) {
    const ScoreParams params = options.score.value_or(ScoreParams{4.0, 1.0, corpus.as_of});

    std::map<std::string, double> scores;
    switch (method) {
        case Method::Activity:
            for (const auto& [author, ids] : corpus.blogger_index) {
                scores[author] = static_cast<double>(ids.size());
            }
            break;
        case Method::HIndex:
            for (const auto& [author, ids] : corpus.blogger_index) {
                scores[author] = static_cast<double>(h_index(author, corpus));
            }
            break;
        case Method::Meibi:
            for (const auto& [author, ids] : corpus.blogger_index) {
                scores[author] = static_cast<double>(meibi_index(author, corpus, params));
            }
            break;
        case Method::Meibix:
            for (const auto& [author, ids] : corpus.blogger_index) {
                scores[author] = static_cast<double>(meibix_index(author, corpus, params));
            }
            break;
        case Method::InfluenceFlow: {
            const InfluenceGraph graph = build_influence_graph(corpus, options.influence, options.warnings);
            const std::map<std::string, double> solved = solve_influence(graph, options.influence);
            for (const auto& [author, ids] : corpus.blogger_index) {
                scores[author] = i_index(author, corpus, solved);
            }
            break;
        }
    }

    const auto totals = collect_totals(corpus);
    RankedList list;
    list.method = std::string(method_name(method));
    list.tie_policy = std::string(kTiePolicy);
    list.entries.reserve(scores.size());
    for (const auto& [author, score] : scores) list.entries.push_back({author, score, 0});

    std::sort(list.entries.begin(), list.entries.end(),
              [&](const RankedEntry& a, const RankedEntry& b) {
                  if (a.score != b.score) return a.score > b.score;
                  const BloggerTotals& ta = totals.at(a.author_id);
                  const BloggerTotals& tb = totals.at(b.author_id);
                  if (ta.inlinks != tb.inlinks) return ta.inlinks > tb.inlinks;
                  if (ta.comments != tb.comments) return ta.comments > tb.comments;
                  return a.author_id < b.author_id;
              });
    for (std::size_t i = 0; i < list.entries.size(); ++i) {
        list.entries[i].rank = static_cast<int>(i) + 1;
    }
    return list;
}

RankedList top_k(const RankedList& list, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    RankedList result;
    result.method = list.method;
    result.tie_policy = list.tie_policy;
    const std::size_t count = std::min(list.entries.size(), static_cast<std::size_t>(k));
    result.entries.assign(list.entries.begin(), list.entries.begin() + count);
    return result;
}

double spearman_rho(const RankedList& a, const RankedList& b, MissingPolicy policy) {
    if (a.entries.empty() || b.entries.empty()) {
        throw std::invalid_argument("spearman rho requires two non-empty rankings");
    }
    const int append_a = static_cast<int>(a.entries.size()) + 1;
    const int append_b = static_cast<int>(b.entries.size()) + 1;

    std::map<std::string, std::pair<int, int>> ranks;
    for (const RankedEntry& e : a.entries) ranks[e.author_id] = {e.rank, append_b};
    for (const RankedEntry& e : b.entries) {
        auto [it, inserted] = ranks.try_emplace(e.author_id, append_a, e.rank);
        if (!inserted) it->second.second = e.rank;
    }
    if (policy == MissingPolicy::Strict) {
        for (const auto& [subject, pair] : ranks) {
            if (pair.first == append_a || pair.second == append_b) {
                throw std::invalid_argument("rankings disagree on membership (subject \"" + subject +
                                            "\")");
            }
        }
    }

    const std::size_t n = ranks.size();
    if (n < 2) {
        throw std::invalid_argument("spearman rho undefined for fewer than two subjects");
    }
    double sum_d2 = 0.0;
    for (const auto& [subject, pair] : ranks) {
        const double d = static_cast<double>(pair.first - pair.second);
        sum_d2 += d * d;
    }
    const double nn = static_cast<double>(n);
    return 1.0 - 6.0 * sum_d2 / (nn * (nn * nn - 1.0));
}

std::string format_score(double value) {
    char buf[64];
    if (std::isfinite(value) && value == std::floor(value) && std::fabs(value) < 1e15) {
        std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(value));
    } else {
        std::snprintf(buf, sizeof(buf), "%.6f", value);
    }
    return buf;
}

std::string ranked_list_to_csv(const RankedList& list) {
    std::ostringstream out;
    out << "rank,author_id,score\n";
    for (const RankedEntry& e : list.entries) {
        out << e.rank << ',' << e.author_id << ',' << format_score(e.score) << '\n';
    }
    return out.str();
}

std::string ranked_list_to_text(const RankedList& list) {
    std::size_t name_width = std::string_view("author_id").size();
    for (const RankedEntry& e : list.entries) name_width = std::max(name_width, e.author_id.size());

    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof(line), "%-4s  %-*s  %s\n", "rank", static_cast<int>(name_width),
                  "author_id", "score");
    out << line;
    for (const RankedEntry& e : list.entries) {
        std::snprintf(line, sizeof(line), "%-4d  %-*s  %s\n", e.rank, static_cast<int>(name_width),
                      e.author_id.c_str(), format_score(e.score).c_str());
        out << line;
    }
    return out.str();
}

}  // namespace blogrank
