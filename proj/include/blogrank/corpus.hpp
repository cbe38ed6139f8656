#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "blogrank/date.hpp"

namespace blogrank {

/// Raised for unreadable, malformed or internally inconsistent corpus data.
class CorpusError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One incoming citation to a post. The source fields stay empty when the
/// citing post lives outside the corpus.
struct InlinkRecord {
    std::optional<std::string> source_post_id;
    std::optional<std::string> source_author;
    Date cited_at;

    bool operator==(const InlinkRecord&) const = default;
};

struct PostRecord {
    std::string post_id;
    std::string author_id;
    Date published_at;
    long comment_count = 0;
    long outlink_count = 0;
    std::optional<long> length_chars;
    std::vector<InlinkRecord> inlinks;

    bool operator==(const PostRecord&) const = default;
};

/// A validated collection of posts. Immutable once built: all accessors are
/// const, so any number of threads may read one corpus concurrently.
struct Corpus {
    std::vector<PostRecord> posts;
    /// author_id -> post ids, in corpus order. Every post appears in exactly
    /// one blogger's list.
    std::map<std::string, std::vector<std::string>> blogger_index;
    /// The "current time" anchor for all age computations. Never earlier
    /// than any publication date.
    Date as_of;
    /// Derived lookup (post_id -> index into posts); rebuilt by make_corpus.
    std::unordered_map<std::string, std::size_t> id_index;

    const PostRecord* find_post(std::string_view post_id) const;
    /// Throws CorpusError when the id is unknown.
    const PostRecord& post(std::string_view post_id) const;
    bool has_blogger(const std::string& author_id) const { return blogger_index.count(author_id) > 0; }
    /// Throws std::invalid_argument when the blogger is unknown.
    const std::vector<std::string>& posts_of(const std::string& author_id) const;

    long long total_inlinks() const;
    long long total_comments() const;
    long long posts_with_inlinks() const;

    bool operator==(const Corpus& other) const {
        return posts == other.posts && as_of == other.as_of;
    }
};

/// Validates records and assembles a Corpus:
///  - post ids must be unique, counts non-negative, length_chars >= 1;
///  - inlinks dated before their target's publication are clamped up to the
///    publication date (reported through *warnings*);
///  - inlinks dated after as_of are kept but reported as warnings;
///  - as_of defaults to the latest publication date and must not precede it
///    when given explicitly. An empty corpus requires an explicit as_of.
Corpus make_corpus(std::vector<PostRecord> posts, std::optional<Date> as_of = {},
                   std::vector<std::string>* warnings = nullptr);

/// Reads the line-oriented corpus format: one record per line, each record a
/// JSON object; '#' lines and blank lines are skipped. Errors carry
/// "<source>:<line>".
Corpus parse_corpus(std::istream& in, std::string_view source_name, std::optional<Date> as_of = {},
                    std::vector<std::string>* warnings = nullptr);

Corpus load_corpus(const std::string& path, std::optional<Date> as_of = {},
                   std::vector<std::string>* warnings = nullptr);

/// Writes the same line-oriented format parse_corpus reads; a saved corpus
/// reparses to an equal one.
void save_corpus(const Corpus& corpus, std::ostream& out);

/// Posts published within [start, end], each keeping only inlinks dated up
/// to the window end; the result's as_of is the window end. Requires
/// start <= end <= corpus.as_of. An empty selection is not an error.
Corpus filter_window(const Corpus& corpus, Date start, Date end);

/// Inlink ages relative to the cited post's publication date, bucketed as
/// {0}, {1}, (1,7], (7,30], (30,60], (60,365] and >365 days.
struct AgeHistogram {
    static constexpr std::size_t kBucketCount = 7;
    std::array<long long, kBucketCount> counts{};
    /// Share of all inlinks per bucket, rounded to one decimal; 0.0 when the
    /// corpus has no inlinks.
    std::array<double, kBucketCount> percentages{};
    long long total = 0;
};

/// Display labels for the seven age buckets.
const std::array<std::string_view, AgeHistogram::kBucketCount>& age_bucket_labels();

AgeHistogram inlink_age_histogram(const Corpus& corpus);

}  // namespace blogrank
