#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "blogrank/corpus.hpp"
#include "blogrank/influence_flow.hpp"
#include "blogrank/metrics.hpp"
#include "blogrank/ranking.hpp"
#include "blogrank/temporal.hpp"

namespace {

using namespace blogrank;
using nlohmann::ordered_json;

struct RunConfig {
    std::string corpus_path;
    std::string as_of;
    std::string method;
    std::vector<std::string> methods;
    double gamma = 4.0;
    double delta = 1.0;
    double w_com = 1.0;
    double w_in = 1.0;
    double w_out = 1.0;
    long length_ref = 1000;
    int k = 10;
    std::string from_month;
    std::string to_month;
    std::string format = "text";
    std::string ranks_file;
    std::string out_path;
};

std::optional<Date> as_of_override(const RunConfig& cfg) {
    if (cfg.as_of.empty()) return std::nullopt;
    return Date::parse(cfg.as_of);
}

Corpus load_for(const RunConfig& cfg, std::vector<std::string>* warnings = nullptr) {
    return load_corpus(cfg.corpus_path, as_of_override(cfg), warnings);
}

RankOptions options_from(const RunConfig& cfg, const Corpus& corpus) {
    RankOptions options;
    options.score = ScoreParams{cfg.gamma, cfg.delta, corpus.as_of};
    options.influence.w_com = cfg.w_com;
    options.influence.w_in = cfg.w_in;
    options.influence.w_out = cfg.w_out;
    options.influence.length_ref = cfg.length_ref;
    return options;
}

void write_output(const RunConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw CorpusError("cannot open output file \"" + cfg.out_path + "\"");
    out << text;
}

void report_warnings(const std::vector<std::string>& warnings) {
    for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
}

std::string render_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& row : rows) {
        if (row.size() > width.size()) width.resize(row.size(), 0);
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    }
    std::string out;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out += "  ";
            out += row[i];
            if (i + 1 < row.size()) out.append(width[i] - row[i].size(), ' ');
        }
        out += '\n';
    }
    return out;
}

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string quoted = "\"";
    for (const char c : value) {
        quoted += c;
        if (c == '"') quoted += '"';
    }
    quoted += '"';
    return quoted;
}

std::string fixed6(double value) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

std::string fixed1(double value) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.1f", value);
    return buf;
}

struct BloggerStats {
    long long posts = 0;
    long long cited = 0;
    long long inlinks = 0;
    long long comments = 0;
    Date first;
    Date last;
    bool seen = false;
};

std::map<std::string, BloggerStats> collect_stats(const Corpus& corpus) {
    std::map<std::string, BloggerStats> stats;
    for (const PostRecord& p : corpus.posts) {
        BloggerStats& s = stats[p.author_id];
        ++s.posts;
        if (!p.inlinks.empty()) ++s.cited;
        s.inlinks += static_cast<long long>(p.inlinks.size());
        s.comments += p.comment_count;
        if (!s.seen || p.published_at < s.first) s.first = p.published_at;
        if (!s.seen || p.published_at > s.last) s.last = p.published_at;
        s.seen = true;
    }
    return stats;
}

std::string method_table(const Corpus& corpus, Method method, const RankedList& top) {
    const auto stats = collect_stats(corpus);
    std::vector<std::vector<std::string>> rows;
    switch (method) {
        case Method::Activity:
            rows.push_back({"rank", "author_id", "posts", "first", "last"});
            for (const RankedEntry& e : top.entries) {
                const BloggerStats& s = stats.at(e.author_id);
                rows.push_back({std::to_string(e.rank), e.author_id, format_score(e.score),
                                s.first.to_string(), s.last.to_string()});
            }
            break;
        case Method::HIndex:
            rows.push_back({"rank", "author_id", "h", "posts", "cited", "inlinks"});
            for (const RankedEntry& e : top.entries) {
                const BloggerStats& s = stats.at(e.author_id);
                rows.push_back({std::to_string(e.rank), e.author_id, format_score(e.score),
                                std::to_string(s.posts), std::to_string(s.cited),
                                std::to_string(s.inlinks)});
            }
            break;
        case Method::Meibi:
            rows.push_back({"rank", "author_id", "m", "comments"});
            for (const RankedEntry& e : top.entries) {
                rows.push_back({std::to_string(e.rank), e.author_id, format_score(e.score),
                                std::to_string(stats.at(e.author_id).comments)});
            }
            break;
        case Method::Meibix:
            rows.push_back({"rank", "author_id", "x"});
            for (const RankedEntry& e : top.entries) {
                rows.push_back({std::to_string(e.rank), e.author_id, format_score(e.score)});
            }
            break;
        case Method::InfluenceFlow:
            rows.push_back({"rank", "author_id", "iindex"});
            for (const RankedEntry& e : top.entries) {
                rows.push_back({std::to_string(e.rank), e.author_id, fixed6(e.score)});
            }
            break;
    }
    return render_table(rows);
}

int cmd_validate(const RunConfig& cfg) {
    std::vector<std::string> warnings;
    const Corpus corpus = load_for(cfg, &warnings);

    const long long posts = static_cast<long long>(corpus.posts.size());
    const long long bloggers = static_cast<long long>(corpus.blogger_index.size());

    std::string text;
    if (cfg.format == "csv") {
        std::ostringstream out;
        out << "key,value\n";
        out << "posts," << posts << '\n';
        out << "bloggers," << bloggers << '\n';
        out << "posts_with_inlinks," << corpus.posts_with_inlinks() << '\n';
        out << "inlinks," << corpus.total_inlinks() << '\n';
        out << "comments," << corpus.total_comments() << '\n';
        out << "as_of," << corpus.as_of.to_string() << '\n';
        out << "warnings," << warnings.size() << '\n';
        for (const std::string& w : warnings) out << "warning," << csv_field(w) << '\n';
        text = out.str();
    } else if (cfg.format == "jsonl") {
        ordered_json j;
        j["posts"] = posts;
        j["bloggers"] = bloggers;
        j["posts_with_inlinks"] = corpus.posts_with_inlinks();
        j["inlinks"] = corpus.total_inlinks();
        j["comments"] = corpus.total_comments();
        j["as_of"] = corpus.as_of.to_string();
        j["warnings"] = warnings;
        text = j.dump() + "\n";
    } else {
        std::vector<std::vector<std::string>> rows;
        rows.push_back({"posts", std::to_string(posts)});
        rows.push_back({"bloggers", std::to_string(bloggers)});
        rows.push_back({"posts with inlinks", std::to_string(corpus.posts_with_inlinks())});
        rows.push_back({"inlinks", std::to_string(corpus.total_inlinks())});
        rows.push_back({"comments", std::to_string(corpus.total_comments())});
        rows.push_back({"as-of", corpus.as_of.to_string()});
        rows.push_back({"warnings", std::to_string(warnings.size())});
        text = render_table(rows);
        for (const std::string& w : warnings) text += "warning: " + w + "\n";
    }
    write_output(cfg, text);
    return warnings.empty() ? 0 : 2;
}

int cmd_rank(const RunConfig& cfg) {
    std::vector<std::string> load_warnings;
    const Corpus corpus = load_for(cfg, &load_warnings);
    report_warnings(load_warnings);

    const Method method = *method_from_name(cfg.method);
    RankOptions options = options_from(cfg, corpus);
    std::vector<std::string> graph_warnings;
    options.warnings = &graph_warnings;
    const RankedList top = top_k(rank_bloggers(corpus, method, options), cfg.k);
    report_warnings(graph_warnings);

    std::string text;
    if (cfg.format == "csv") {
        text = ranked_list_to_csv(top);
    } else if (cfg.format == "jsonl") {
        std::ostringstream out;
        for (const RankedEntry& e : top.entries) {
            ordered_json j;
            j["rank"] = e.rank;
            j["author_id"] = e.author_id;
            j["score"] = e.score;
            out << j.dump() << '\n';
        }
        text = out.str();
    } else {
        text = method_table(corpus, method, top);
    }
    write_output(cfg, text);
    return 0;
}

std::vector<RankedList> load_ranks_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CorpusError("cannot open ranks file \"" + path + "\"");

    auto trim = [](const std::string& s) {
        const auto begin = s.find_first_not_of(" \t\r");
        if (begin == std::string::npos) return std::string();
        const auto end = s.find_last_not_of(" \t\r");
        return s.substr(begin, end - begin + 1);
    };

    std::vector<RankedList> lists;
    std::string raw;
    long line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const std::string where = path + ":" + std::to_string(line_no);
        if (line.front() == '[') {
            if (line.back() != ']') throw CorpusError(where + ": unterminated list header");
            const std::string label = trim(line.substr(1, line.size() - 2));
            if (label.empty()) throw CorpusError(where + ": empty list label");
            for (const RankedList& l : lists) {
                if (l.method == label) throw CorpusError(where + ": duplicate list \"" + label + "\"");
            }
            lists.push_back({label, "given", {}});
            continue;
        }
        if (lists.empty()) throw CorpusError(where + ": entry before any [list] header");
        RankedList& current = lists.back();
        for (const RankedEntry& e : current.entries) {
            if (e.author_id == line) {
                throw CorpusError(where + ": duplicate subject \"" + line + "\" in list \"" +
                                  current.method + "\"");
            }
        }
        current.entries.push_back({line, 0.0, static_cast<int>(current.entries.size()) + 1});
    }
    for (RankedList& list : lists) {
        if (list.entries.empty()) {
            throw CorpusError(path + ": list \"" + list.method + "\" is empty");
        }
        const double n = static_cast<double>(list.entries.size());
        for (RankedEntry& e : list.entries) e.score = n - static_cast<double>(e.rank) + 1.0;
    }
    if (lists.size() < 2) {
        throw CorpusError(path + ": at least two lists are required");
    }
    return lists;
}

int cmd_correlate(const RunConfig& cfg) {
    std::vector<RankedList> lists;
    if (!cfg.ranks_file.empty()) {
        lists = load_ranks_file(cfg.ranks_file);
    } else {
        if (cfg.corpus_path.empty() || cfg.methods.size() < 2) {
            std::cerr << "error: correlate needs --ranks-file, or --corpus plus at least two --method "
                         "values\n";
            return 1;
        }
        std::vector<std::string> load_warnings;
        const Corpus corpus = load_for(cfg, &load_warnings);
        report_warnings(load_warnings);
        for (const std::string& name : cfg.methods) {
            const Method method = *method_from_name(name);
            lists.push_back(top_k(rank_bloggers(corpus, method, options_from(cfg, corpus)), cfg.k));
        }
    }

    std::string text;
    if (cfg.format == "csv") {
        std::ostringstream out;
        out << "method_a,method_b,rho\n";
        for (std::size_t i = 0; i < lists.size(); ++i) {
            for (std::size_t j = i + 1; j < lists.size(); ++j) {
                out << csv_field(lists[i].method) << ',' << csv_field(lists[j].method) << ','
                    << fixed6(spearman_rho(lists[i], lists[j])) << '\n';
            }
        }
        text = out.str();
    } else if (cfg.format == "jsonl") {
        std::ostringstream out;
        for (std::size_t i = 0; i < lists.size(); ++i) {
            for (std::size_t j = i + 1; j < lists.size(); ++j) {
                ordered_json row;
                row["method_a"] = lists[i].method;
                row["method_b"] = lists[j].method;
                row["rho"] = spearman_rho(lists[i], lists[j]);
                out << row.dump() << '\n';
            }
        }
        text = out.str();
    } else {
        std::vector<std::vector<std::string>> rows;
        rows.push_back({"methods", "rho"});
        for (std::size_t i = 0; i < lists.size(); ++i) {
            for (std::size_t j = i + 1; j < lists.size(); ++j) {
                rows.push_back({lists[i].method + " -- " + lists[j].method,
                                fixed6(spearman_rho(lists[i], lists[j]))});
            }
        }
        text = render_table(rows);
    }
    write_output(cfg, text);
    return 0;
}

int cmd_evolve(const RunConfig& cfg) {
    std::vector<std::string> load_warnings;
    const Corpus corpus = load_for(cfg, &load_warnings);
    report_warnings(load_warnings);

    const Method method = *method_from_name(cfg.method);
    const auto windows = monthly_windows(YearMonth::parse(cfg.from_month), YearMonth::parse(cfg.to_month));
    const EvolutionMatrix matrix =
        evolution_matrix(corpus, method, options_from(cfg, corpus), windows, cfg.k);

    std::string text;
    if (cfg.format == "csv") {
        text = evolution_to_csv(matrix);
    } else if (cfg.format == "jsonl") {
        std::ostringstream out;
        for (std::size_t s = 0; s < matrix.subjects.size(); ++s) {
            ordered_json row;
            row["author_id"] = matrix.subjects[s];
            for (std::size_t j = 0; j < matrix.windows.size(); ++j) {
                const std::string label = window_label(matrix.windows[j]);
                if (matrix.cells[s][j] == kAbsentRank) {
                    row[label] = nullptr;
                } else {
                    row[label] = matrix.cells[s][j];
                }
            }
            out << row.dump() << '\n';
        }
        text = out.str();
    } else {
        std::vector<std::vector<std::string>> rows;
        std::vector<std::string> header{"author_id"};
        for (const DateWindow& w : matrix.windows) header.push_back(window_label(w));
        rows.push_back(std::move(header));
        for (std::size_t s = 0; s < matrix.subjects.size(); ++s) {
            std::vector<std::string> row{matrix.subjects[s]};
            for (std::size_t j = 0; j < matrix.windows.size(); ++j) {
                row.push_back(matrix.cells[s][j] == kAbsentRank ? "-"
                                                                : std::to_string(matrix.cells[s][j]));
            }
            rows.push_back(std::move(row));
        }
        text = render_table(rows);
    }
    write_output(cfg, text);
    return 0;
}

int cmd_histogram(const RunConfig& cfg) {
    std::vector<std::string> load_warnings;
    const Corpus corpus = load_for(cfg, &load_warnings);
    report_warnings(load_warnings);

    const AgeHistogram hist = inlink_age_histogram(corpus);
    const auto& labels = age_bucket_labels();

    std::string text;
    if (cfg.format == "csv") {
        std::ostringstream out;
        out << "age,inlinks,percentage\n";
        for (std::size_t b = 0; b < AgeHistogram::kBucketCount; ++b) {
            out << csv_field(std::string(labels[b])) << ',' << hist.counts[b] << ','
                << fixed1(hist.percentages[b]) << '\n';
        }
        text = out.str();
    } else if (cfg.format == "jsonl") {
        std::ostringstream out;
        for (std::size_t b = 0; b < AgeHistogram::kBucketCount; ++b) {
            ordered_json row;
            row["age"] = std::string(labels[b]);
            row["inlinks"] = hist.counts[b];
            row["percentage"] = hist.percentages[b];
            out << row.dump() << '\n';
        }
        text = out.str();
    } else {
        std::vector<std::vector<std::string>> rows;
        rows.push_back({"age", "inlinks", "percentage"});
        double rounded_sum = 0.0;
        for (std::size_t b = 0; b < AgeHistogram::kBucketCount; ++b) {
            rows.push_back({std::string(labels[b]), std::to_string(hist.counts[b]),
                            fixed1(hist.percentages[b])});
            rounded_sum += hist.percentages[b];
        }
        rows.push_back({"total", std::to_string(hist.total), fixed1(rounded_sum)});
        text = render_table(rows);
    }
    write_output(cfg, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"influence rankings for community blogs"};
    app.require_subcommand(1);
    RunConfig cfg;

    const std::vector<std::string> method_names = {"activity", "h-index", "meibi", "meibix",
                                                   "influence-flow"};

    auto add_corpus = [&](CLI::App* cmd, bool required) {
        CLI::Option* opt =
            cmd->add_option("--corpus", cfg.corpus_path, "corpus file, one JSON record per line");
        if (required) opt->required();
        cmd->add_option("--as-of", cfg.as_of, "analysis date override (YYYY-MM-DD)");
        return opt;
    };
    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", cfg.format, "output format (text, csv, jsonl)")
            ->check(CLI::IsMember({"text", "csv", "jsonl"}));
        cmd->add_option("--out", cfg.out_path, "write output to this file instead of stdout");
    };
    auto add_score = [&](CLI::App* cmd) {
        cmd->add_option("--gamma", cfg.gamma, "score scale factor")->check(CLI::PositiveNumber);
        cmd->add_option("--delta", cfg.delta, "age decay exponent")->check(CLI::PositiveNumber);
    };
    auto add_influence = [&](CLI::App* cmd) {
        cmd->add_option("--w-com", cfg.w_com, "influence-flow comment weight")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--w-in", cfg.w_in, "influence-flow inlink weight")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--w-out", cfg.w_out, "influence-flow outlink weight")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--length-ref", cfg.length_ref, "post length where the length weight saturates")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* validate = app.add_subcommand("validate", "load a corpus, report counts and defects");
    add_corpus(validate, true);
    add_format(validate);

    CLI::App* rank = app.add_subcommand("rank", "rank bloggers by one method");
    add_corpus(rank, true);
    add_format(rank);
    add_score(rank);
    add_influence(rank);
    rank->add_option("--method", cfg.method, "ranking method")
        ->required()
        ->check(CLI::IsMember(method_names));
    rank->add_option("--k", cfg.k, "number of rows to keep")->check(CLI::PositiveNumber);

    CLI::App* correlate = app.add_subcommand("correlate", "pairwise spearman rho between rankings");
    CLI::Option* correlate_corpus = add_corpus(correlate, false);
    add_format(correlate);
    add_score(correlate);
    add_influence(correlate);
    correlate->add_option("--method", cfg.methods, "method to include (repeatable)")
        ->check(CLI::IsMember(method_names));
    correlate->add_option("--k", cfg.k, "ranking length per method")->check(CLI::PositiveNumber);
    correlate->add_option("--ranks-file", cfg.ranks_file, "compare externally given rankings")
        ->excludes(correlate_corpus);

    CLI::App* evolve = app.add_subcommand("evolve", "monthly top-k evolution matrix");
    add_corpus(evolve, true);
    add_format(evolve);
    add_score(evolve);
    add_influence(evolve);
    evolve->add_option("--method", cfg.method, "ranking method")
        ->required()
        ->check(CLI::IsMember(method_names));
    evolve->add_option("--k", cfg.k, "top-k per window")->check(CLI::PositiveNumber);
    evolve->add_option("--from", cfg.from_month, "first month (YYYY-MM)")->required();
    evolve->add_option("--to", cfg.to_month, "last month (YYYY-MM)")->required();

    CLI::App* histogram = app.add_subcommand("histogram", "inlink age distribution");
    add_corpus(histogram, true);
    add_format(histogram);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (app.got_subcommand(validate)) return cmd_validate(cfg);
        if (app.got_subcommand(rank)) return cmd_rank(cfg);
        if (app.got_subcommand(correlate)) return cmd_correlate(cfg);
        if (app.got_subcommand(evolve)) return cmd_evolve(cfg);
        if (app.got_subcommand(histogram)) return cmd_histogram(cfg);
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
