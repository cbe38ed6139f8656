#include "blogrank/influence_flow.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace blogrank {

ConvergenceError::ConvergenceError(long iterations, double residual)
    : std::runtime_error("influence iteration did not converge after " + std::to_string(iterations) +
                         " sweeps (last residual " + std::to_string(residual) + ")"),
      iterations_(iterations),
      residual_(residual) {}

double length_weight(long length_chars, const InfluenceParams& params) {
    if (length_chars < 1) throw std::invalid_argument("length_chars must be >= 1");
    if (params.length_ref < 1) throw std::invalid_argument("length_ref must be >= 1");
    return std::min(1.0, static_cast<double>(length_chars) / static_cast<double>(params.length_ref));
}

long InfluenceGraph::unresolved_out(std::size_t node) const {
    return std::max(0L, outlink_counts[node] - static_cast<long>(cited[node].size()));
}

InfluenceGraph build_influence_graph(const Corpus& corpus, const InfluenceParams& params,
                                     std::vector<std::string>* warnings) {
    std::vector<std::string> missing;
    for (const PostRecord& p : corpus.posts) {
        if (!p.length_chars && !params.default_length) missing.push_back(p.post_id);
    }
    if (!missing.empty()) {
        std::ostringstream msg;
        msg << "length_chars missing and no default_length configured for " << missing.size()
            << " post(s):";
        for (const std::string& id : missing) msg << " \"" << id << "\"";
        throw CorpusError(msg.str());
    }

    InfluenceGraph graph;
    const std::size_t n = corpus.posts.size();
    graph.post_ids.reserve(n);
    for (const PostRecord& p : corpus.posts) graph.post_ids.push_back(p.post_id);
    std::sort(graph.post_ids.begin(), graph.post_ids.end());

    std::unordered_map<std::string, int> index_of;
    index_of.reserve(n);
    for (std::size_t i = 0; i < n; ++i) index_of.emplace(graph.post_ids[i], static_cast<int>(i));

    graph.comment_counts.resize(n);
    graph.lengths.resize(n);
    graph.outlink_counts.resize(n);
    graph.external_in.assign(n, 0);
    graph.citers.resize(n);
    graph.cited.resize(n);

    for (const PostRecord& p : corpus.posts) {
        const int v = index_of.at(p.post_id);
        graph.comment_counts[v] = p.comment_count;
        graph.lengths[v] = p.length_chars ? *p.length_chars : *params.default_length;
        graph.outlink_counts[v] = p.outlink_count;
        for (const InlinkRecord& link : p.inlinks) {
            if (link.source_post_id) {
                auto it = index_of.find(*link.source_post_id);
                if (it != index_of.end()) {
                    const int u = it->second;
                    if (u == v) {
                        if (warnings != nullptr) {
                            warnings->push_back("post \"" + p.post_id +
                                                "\" cites itself; self-link dropped");
                        }
                        continue;
                    }
                    graph.citers[v].push_back(u);
                    graph.cited[u].push_back(v);
                    continue;
                }
            }
            ++graph.external_in[v];
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::sort(graph.citers[i].begin(), graph.citers[i].end());
        std::sort(graph.cited[i].begin(), graph.cited[i].end());
    }
    return graph;
}

std::map<std::string, double> solve_influence(const InfluenceGraph& graph,
                                              const InfluenceParams& params) {
    if (params.tol <= 0.0) throw std::invalid_argument("tol must be positive");
    if (params.max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
    if (params.w_com < 0.0 || params.w_in < 0.0 || params.w_out < 0.0) {
        throw std::invalid_argument("influence weights must be non-negative");
    }

    const std::size_t n = graph.size();
    std::vector<double> weight(n), source(n);
    for (std::size_t p = 0; p < n; ++p) {
        weight[p] = length_weight(graph.lengths[p], params);
        source[p] = params.w_com * static_cast<double>(graph.comment_counts[p]) +
                    params.w_in * static_cast<double>(graph.external_in[p]) * params.external_influence -
                    params.w_out * static_cast<double>(graph.unresolved_out(p)) * params.external_influence;
    }

    std::vector<double> current(n, 0.0), next(n, 0.0);
    double residual = 0.0;
    for (long sweep = 0; sweep < params.max_iter; ++sweep) {
        residual = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            double incoming = 0.0;
            for (const int u : graph.citers[p]) incoming += current[u];
            double outgoing = 0.0;
            for (const int v : graph.cited[p]) outgoing += current[v];
            next[p] = weight[p] * (source[p] + params.w_in * incoming - params.w_out * outgoing);
            residual = std::max(residual, std::fabs(next[p] - current[p]));
        }
        current.swap(next);
        if (!std::isfinite(residual)) {
            throw ConvergenceError(sweep + 1, residual);
        }
        if (residual < params.tol) {
            std::map<std::string, double> scores;
            for (std::size_t p = 0; p < n; ++p) scores.emplace(graph.post_ids[p], current[p]);
            return scores;
        }
    }
    throw ConvergenceError(params.max_iter, residual);
}

double i_index(const std::string& author_id, const Corpus& corpus,
               const std::map<std::string, double>& solved) {
    const std::vector<std::string>& ids = corpus.posts_of(author_id);
    if (ids.empty()) throw std::invalid_argument("blogger \"" + author_id + "\" has no posts");
    double best = 0.0;
    bool first = true;
    for (const std::string& id : ids) {
        auto it = solved.find(id);
        if (it == solved.end()) {
            throw std::invalid_argument("no influence score for post \"" + id + "\"");
        }
        best = first ? it->second : std::max(best, it->second);
        first = false;
    }
    return best;
}

}  // namespace blogrank
