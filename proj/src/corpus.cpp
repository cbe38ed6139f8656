#include "blogrank/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace blogrank {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void warn(std::vector<std::string>* sink, std::string message) {
    if (sink != nullptr) sink->push_back(std::move(message));
}

const json& require_field(const json& record, const char* key) {
    auto it = record.find(key);
    if (it == record.end() || it->is_null()) {
        throw CorpusError(std::string("missing field \"") + key + "\"");
    }
    return *it;
}

std::string get_string(const json& record, const char* key) {
    const json& field = require_field(record, key);
    if (!field.is_string()) {
        throw CorpusError(std::string("field \"") + key + "\" must be a string");
    }
    return field.get<std::string>();
}

std::optional<std::string> get_optional_string(const json& record, const char* key) {
    auto it = record.find(key);
    if (it == record.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) {
        throw CorpusError(std::string("field \"") + key + "\" must be a string");
    }
    return it->get<std::string>();
}

long get_count(const json& record, const char* key) {
    const json& field = require_field(record, key);
    if (!field.is_number_integer()) {
        throw CorpusError(std::string("field \"") + key + "\" must be an integer");
    }
    const long value = field.get<long>();
    if (value < 0) {
        throw CorpusError(std::string("field \"") + key + "\" must be non-negative");
    }
    return value;
}

Date get_date(const json& record, const char* key) {
    return Date::parse(get_string(record, key));
}

PostRecord record_from_json(const json& j) {
    if (!j.is_object()) {
        throw CorpusError("record must be an object");
    }
    PostRecord post;
    post.post_id = get_string(j, "post_id");
    post.author_id = get_string(j, "author_id");
    post.published_at = get_date(j, "published_at");
    post.comment_count = get_count(j, "comment_count");
    post.outlink_count = get_count(j, "outlink_count");
    if (auto it = j.find("length_chars"); it != j.end() && !it->is_null()) {
        if (!it->is_number_integer()) {
            throw CorpusError("field \"length_chars\" must be an integer");
        }
        post.length_chars = it->get<long>();
    }
    if (auto it = j.find("inlinks"); it != j.end() && !it->is_null()) {
        if (!it->is_array()) {
            throw CorpusError("field \"inlinks\" must be an array");
        }
        for (const json& entry : *it) {
            if (!entry.is_object()) {
                throw CorpusError("inlink entries must be objects");
            }
            InlinkRecord link;
            link.source_post_id = get_optional_string(entry, "source_post_id");
            link.source_author = get_optional_string(entry, "source_author");
            link.cited_at = get_date(entry, "cited_at");
            post.inlinks.push_back(std::move(link));
        }
    }
    return post;
}

ordered_json record_to_json(const PostRecord& post) {
    ordered_json j;
    j["post_id"] = post.post_id;
    j["author_id"] = post.author_id;
    j["published_at"] = post.published_at.to_string();
    j["comment_count"] = post.comment_count;
    j["outlink_count"] = post.outlink_count;
    if (post.length_chars) j["length_chars"] = *post.length_chars;
    if (!post.inlinks.empty()) {
        ordered_json links = ordered_json::array();
        for (const InlinkRecord& link : post.inlinks) {
            ordered_json entry;
            if (link.source_post_id) entry["source_post_id"] = *link.source_post_id;
            if (link.source_author) entry["source_author"] = *link.source_author;
            entry["cited_at"] = link.cited_at.to_string();
            links.push_back(std::move(entry));
        }
        j["inlinks"] = std::move(links);
    }
    return j;
}

}  // namespace

const PostRecord* Corpus::find_post(std::string_view post_id) const {
    auto it = id_index.find(std::string(post_id));
    if (it == id_index.end()) return nullptr;
    return &posts[it->second];
}

const PostRecord& Corpus::post(std::string_view post_id) const {
    const PostRecord* p = find_post(post_id);
    if (p == nullptr) {
        throw CorpusError("unknown post_id \"" + std::string(post_id) + "\"");
    }
    return *p;
}

const std::vector<std::string>& Corpus::posts_of(const std::string& author_id) const {
    auto it = blogger_index.find(author_id);
    if (it == blogger_index.end()) {
        throw std::invalid_argument("unknown blogger \"" + author_id + "\"");
    }
    return it->second;
}

long long Corpus::total_inlinks() const {
    long long n = 0;
    for (const PostRecord& p : posts) n += static_cast<long long>(p.inlinks.size());
    return n;
}

long long Corpus::total_comments() const {
    long long n = 0;
    for (const PostRecord& p : posts) n += p.comment_count;
    return n;
}

long long Corpus::posts_with_inlinks() const {
    long long n = 0;
    for (const PostRecord& p : posts) n += p.inlinks.empty() ? 0 : 1;
    return n;
}

Corpus make_corpus(std::vector<PostRecord> posts, std::optional<Date> as_of,
                   std::vector<std::string>* warnings) {
    Corpus corpus;
    corpus.posts = std::move(posts);

    for (std::size_t i = 0; i < corpus.posts.size(); ++i) {
        const PostRecord& p = corpus.posts[i];
        if (p.post_id.empty()) throw CorpusError("empty post_id");
        if (p.author_id.empty()) throw CorpusError("empty author_id (post \"" + p.post_id + "\")");
        if (!corpus.id_index.emplace(p.post_id, i).second) {
            throw CorpusError("duplicate post_id \"" + p.post_id + "\"");
        }
        if (p.comment_count < 0) {
            throw CorpusError("negative comment_count (post \"" + p.post_id + "\")");
        }
        if (p.outlink_count < 0) {
            throw CorpusError("negative outlink_count (post \"" + p.post_id + "\")");
        }
        if (p.length_chars && *p.length_chars < 1) {
            throw CorpusError("length_chars must be >= 1 (post \"" + p.post_id + "\")");
        }
    }

    if (corpus.posts.empty()) {
        if (!as_of) {
            throw CorpusError("an empty corpus requires an explicit as-of date");
        }
        corpus.as_of = *as_of;
        return corpus;
    }

    Date latest = corpus.posts.front().published_at;
    for (const PostRecord& p : corpus.posts) latest = std::max(latest, p.published_at);
    if (as_of) {
        if (*as_of < latest) {
            throw CorpusError("as-of date " + as_of->to_string() + " precedes latest publication " +
                              latest.to_string());
        }
        corpus.as_of = *as_of;
    } else {
        corpus.as_of = latest;
    }

    for (PostRecord& p : corpus.posts) {
        for (InlinkRecord& link : p.inlinks) {
            if (link.cited_at < p.published_at) {
                warn(warnings, "post \"" + p.post_id + "\": inlink dated " + link.cited_at.to_string() +
                                   " precedes publication " + p.published_at.to_string() +
                                   "; clamped to the publication date");
                link.cited_at = p.published_at;
            } else if (link.cited_at > corpus.as_of) {
                warn(warnings, "post \"" + p.post_id + "\": inlink dated " + link.cited_at.to_string() +
                                   " falls after the as-of date " + corpus.as_of.to_string());
            }
        }
        corpus.blogger_index[p.author_id].push_back(p.post_id);
    }
    return corpus;
}

Corpus parse_corpus(std::istream& in, std::string_view source_name, std::optional<Date> as_of,
                    std::vector<std::string>* warnings) {
    std::vector<PostRecord> records;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        try {
            records.push_back(record_from_json(json::parse(line)));
        } catch (const CorpusError& e) {
            throw CorpusError(std::string(source_name) + ":" + std::to_string(line_no) + ": " + e.what());
        } catch (const std::exception& e) {
            throw CorpusError(std::string(source_name) + ":" + std::to_string(line_no) +
                              ": malformed record: " + e.what());
        }
    }
    return make_corpus(std::move(records), as_of, warnings);
}

Corpus load_corpus(const std::string& path, std::optional<Date> as_of,
                   std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) {
        throw CorpusError("cannot open corpus file \"" + path + "\"");
    }
    return parse_corpus(in, path, as_of, warnings);
}

void save_corpus(const Corpus& corpus, std::ostream& out) {
    for (const PostRecord& post : corpus.posts) {
        out << record_to_json(post).dump() << '\n';
    }
}

Corpus filter_window(const Corpus& corpus, Date start, Date end) {
    if (start > end) {
        throw std::invalid_argument("window start " + start.to_string() + " falls after its end " +
                                    end.to_string());
    }
    if (end > corpus.as_of) {
        throw std::invalid_argument("window end " + end.to_string() + " exceeds the corpus as-of date " +
                                    corpus.as_of.to_string());
    }
    std::vector<PostRecord> kept;
    for (const PostRecord& p : corpus.posts) {
        if (p.published_at < start || p.published_at > end) continue;
        PostRecord copy = p;
        std::erase_if(copy.inlinks, [&](const InlinkRecord& link) { return link.cited_at > end; });
        kept.push_back(std::move(copy));
    }
    return make_corpus(std::move(kept), end);
}

const std::array<std::string_view, AgeHistogram::kBucketCount>& age_bucket_labels() {
    static const std::array<std::string_view, AgeHistogram::kBucketCount> labels = {
        "0 days",
        "1 day",
        "between 1 and 7 days",
        "between 7 and 30 days",
        "between 30 and 60 days",
        "between 60 and 365 days",
        "over 365 days",
    };
    return labels;
}

AgeHistogram inlink_age_histogram(const Corpus& corpus) {
    AgeHistogram hist;
    for (const PostRecord& p : corpus.posts) {
        for (const InlinkRecord& link : p.inlinks) {
            const long age = age_days(p.published_at, link.cited_at);
            std::size_t bucket;
            if (age == 0) {
                bucket = 0;
            } else if (age == 1) {
                bucket = 1;
            } else if (age <= 7) {
                bucket = 2;
            } else if (age <= 30) {
                bucket = 3;
            } else if (age <= 60) {
                bucket = 4;
            } else if (age <= 365) {
                bucket = 5;
            } else {
                bucket = 6;
            }
            ++hist.counts[bucket];
            ++hist.total;
        }
    }
    if (hist.total > 0) {
        for (std::size_t b = 0; b < AgeHistogram::kBucketCount; ++b) {
            hist.percentages[b] =
                std::round(static_cast<double>(hist.counts[b]) * 1000.0 / static_cast<double>(hist.total)) /
                10.0;
        }
    }
    return hist;
}

}  // namespace blogrank
