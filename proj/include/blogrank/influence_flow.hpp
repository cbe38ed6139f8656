#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "blogrank/corpus.hpp"

namespace blogrank {

/// Weights and solver controls for the recursive influence-flow score.
struct InfluenceParams {
    double w_com = 1.0;
    double w_in = 1.0;
    double w_out = 1.0;
    /// Post length at which the length weight saturates at 1.
    long length_ref = 1000;
    /// Fallback for posts without length_chars; building the graph fails
    /// when a length is missing and no default is configured.
    std::optional<long> default_length;
    /// Score contributed by each link whose endpoint is outside the corpus.
    double external_influence = 1.0;
    double tol = 1e-9;
    long max_iter = 10000;
};

/// The iteration stopped without reaching the tolerance. The recursion has
/// no general convergence guarantee, so callers must expect this.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(long iterations, double residual);
    long iterations() const { return iterations_; }
    double residual() const { return residual_; }

private:
    long iterations_;
    double residual_;
};

/// Length weight: min(1, length_chars / length_ref). Requires
/// length_chars >= 1 and length_ref >= 1.
double length_weight(long length_chars, const InfluenceParams& params);

/// Post-level citation graph. Nodes are ordered by post_id so identical
/// corpora produce bit-identical solver runs regardless of file order.
struct InfluenceGraph {
    std::vector<std::string> post_ids;
    std::vector<long> comment_counts;
    std::vector<long> lengths;
    std::vector<long> outlink_counts;
    /// Inlinks whose source post is not in the corpus.
    std::vector<long> external_in;
    /// citers[v] holds every u with an edge u -> v ("u cites v").
    std::vector<std::vector<int>> citers;
    /// cited[u] holds every v with an edge u -> v.
    std::vector<std::vector<int>> cited;

    std::size_t size() const { return post_ids.size(); }
    /// Declared outlinks beyond the resolved in-corpus edges.
    long unresolved_out(std::size_t node) const;
};

/// Resolves inlink sources to in-corpus edges; self-citations are dropped
/// with a warning and unresolvable sources count as external inlinks.
InfluenceGraph build_influence_graph(const Corpus& corpus, const InfluenceParams& params,
                                     std::vector<std::string>* warnings = nullptr);

/// Synchronous fixed-point iteration from all-zero scores:
///   I(p) = w(len_p) * (w_com*comments_p
///                      + w_in  * (sum of I over citers of p + external inlinks)
///                      - w_out * (sum of I over posts p cites + unresolved outlinks))
/// where external links contribute external_influence each. Stops when the
/// max-norm change drops below tol; throws ConvergenceError otherwise.
/// Scores may be negative.
std::map<std::string, double> solve_influence(const InfluenceGraph& graph, const InfluenceParams& params);

/// The blogger's best post score under the solved influence map.
double i_index(const std::string& author_id, const Corpus& corpus,
               const std::map<std::string, double>& solved);

}  // namespace blogrank
