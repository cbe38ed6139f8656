// Generates the bundled synthetic community-blog corpus: ~50 bloggers with
// individual active periods, heavy-tailed productivity and popularity, and
// inlink ages drawn to hit a fixed seven-bucket age distribution. In-corpus
// citation edges always point from a later post to an earlier one, so the
// resulting citation graph is acyclic.
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "blogrank/corpus.hpp"

namespace {

using namespace blogrank;

struct Rng {
    std::mt19937_64 gen;

    explicit Rng(unsigned long long seed) : gen(seed) {}

    double u01() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
    long uniform(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(u01() * static_cast<double>(hi - lo + 1));
    }
    bool chance(double p) { return u01() < p; }
    double normal() {
        const double u1 = std::max(u01(), 1e-12);
        const double u2 = u01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }
    long geometric(double mean) {
        const double p = 1.0 / std::max(mean, 1.0);
        return static_cast<long>(std::log(std::max(u01(), 1e-12)) / std::log(1.0 - p));
    }
};

const char* kBloggerNames[] = {
    "ainsley",  "barker",   "calloway", "delacroix", "emberly",  "farnham",  "gatlin",
    "hollis",   "ingram",   "jerrick",  "kessler",   "lachlan",  "merritt",  "norwood",
    "oakley",   "pembroke", "quimby",   "rafferty",  "sheridan", "thatcher", "underhill",
    "vasquez",  "whitlock", "xanders",  "yardley",   "zabel",    "ashcroft", "bellamy",
    "crowley",  "dunmore",  "eastwick", "fenwick",   "goulding", "harlowe",  "iverson",
    "jocelyn",  "kirkland", "lockhart", "mansfield", "naylor",   "ostrander","prescott",
    "quillon",  "redmond",  "stanhope", "tillman",   "unwin",    "vandell",  "westbrook",
    "yeardley", "zimmer",   "alcott",   "bretton",   "corwin",   "dalton",   "ellsworth",
};

const char* kExternalBlogs[] = {
    "pixelforge", "macadamia",  "tabletalk",  "gadgetry",   "overclocked", "suntails",
    "widgetbay",  "loopwire",   "brightcast", "nightbuild", "paperjam",    "kernelpanic",
};

struct Bucket {
    long lo;
    long hi;
    double share;  // percent
};

// target age distribution (percent of all inlinks per bucket)
const Bucket kBuckets[] = {
    {0, 0, 49.2},  {1, 1, 25.1},   {2, 7, 12.4},      {8, 30, 4.5},
    {31, 60, 1.7}, {61, 365, 4.7}, {366, 100000, 2.3},
};

struct Draft {
    std::string author;
    long day = 0;  // offset from the first day
    long comments = 0;
    long length = 0;
    bool citable = false;
    double popularity = 0.0;
    std::vector<InlinkRecord> inlinks;
    long cites_made = 0;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generate a synthetic community-blog corpus"};
    std::string out_path;
    unsigned long long seed = 7;
    long n_posts = 2000;
    int n_bloggers = 50;
    long n_inlinks = 5400;
    std::string anchor_str = "2008-12-05";
    std::string first_day_str = "2007-01-01";
    app.add_option("--out", out_path, "output corpus path")->required();
    app.add_option("--seed", seed, "random seed");
    app.add_option("--posts", n_posts, "number of posts")->check(CLI::PositiveNumber);
    app.add_option("--bloggers", n_bloggers, "number of bloggers")
        ->check(CLI::Range(1, (int)(sizeof(kBloggerNames) / sizeof(kBloggerNames[0]))));
    app.add_option("--inlinks", n_inlinks, "total inlinks")->check(CLI::PositiveNumber);
    app.add_option("--anchor", anchor_str, "last corpus day (YYYY-MM-DD)");
    app.add_option("--first-day", first_day_str, "first corpus day (YYYY-MM-DD)");
    CLI11_PARSE(app, argc, argv);

    const Date first_day = Date::parse(first_day_str);
    const Date anchor = Date::parse(anchor_str);
    const long horizon = age_days(first_day, anchor);

    Rng rng(seed);

    // blogger activity spans and productivity weights
    std::vector<long> active_start(n_bloggers), active_end(n_bloggers);
    std::vector<double> productivity(n_bloggers);
    for (int b = 0; b < n_bloggers; ++b) {
        active_start[b] = rng.uniform(0, (horizon * 3) / 4);
        active_end[b] = std::min(horizon, active_start[b] + 90 + rng.uniform(0, horizon));
        productivity[b] = std::exp(1.2 * rng.normal());
    }
    active_start[0] = rng.uniform(0, horizon / 4);
    active_end[0] = horizon;  // keeps the anchor date inhabited

    // assign post counts: one per blogger, the rest by weight
    std::vector<long> posts_per_blogger(n_bloggers, 1);
    const double weight_sum = std::accumulate(productivity.begin(), productivity.end(), 0.0);
    for (long i = n_bloggers; i < n_posts - 1; ++i) {
        double pick = rng.u01() * weight_sum;
        int b = 0;
        while (b + 1 < n_bloggers && pick > productivity[b]) pick -= productivity[b], ++b;
        ++posts_per_blogger[b];
    }

    std::vector<Draft> drafts;
    drafts.reserve(n_posts);
    for (int b = 0; b < n_bloggers; ++b) {
        for (long i = 0; i < posts_per_blogger[b]; ++i) {
            Draft d;
            d.author = kBloggerNames[b];
            d.day = rng.uniform(active_start[b], active_end[b]);
            d.comments = rng.chance(0.10) ? 0 : 1 + rng.geometric(14.0);
            d.comments = std::min(d.comments, 500L);
            d.length = static_cast<long>(std::exp(rng.u01() * (std::log(9500.0) - std::log(120.0)) +
                                                  std::log(120.0)));
            d.citable = rng.chance(0.30);
            const double recency_boost = (d.day > horizon - 365) ? 6.0 : 1.0;
            d.popularity = std::exp(1.8 * rng.normal()) * recency_boost;
            drafts.push_back(std::move(d));
        }
    }
    {
        Draft d;  // the anchor-day post pins the default as-of date
        d.author = kBloggerNames[0];
        d.day = horizon;
        d.comments = 1 + rng.geometric(14.0);
        d.length = 2200;
        d.citable = true;
        d.popularity = 2.0;
        drafts.push_back(std::move(d));
    }

    std::sort(drafts.begin(), drafts.end(), [](const Draft& a, const Draft& b) {
        if (a.day != b.day) return a.day < b.day;
        return a.author < b.author;
    });

    // posts published on each day, for resolving citing posts
    std::map<long, std::vector<std::size_t>> by_day;
    for (std::size_t i = 0; i < drafts.size(); ++i) by_day[drafts[i].day].push_back(i);

    // distribute inlinks over the age buckets
    const double share_sum = std::accumulate(std::begin(kBuckets), std::end(kBuckets), 0.0,
                                             [](double acc, const Bucket& b) { return acc + b.share; });
    long assigned = 0;
    long external_sources = 0;
    long resolved_sources = 0;
    for (const Bucket& bucket : kBuckets) {
        const long want = std::llround(static_cast<double>(n_inlinks) * bucket.share / share_sum);

        std::vector<std::size_t> candidates;
        std::vector<double> prefix;
        double acc = 0.0;
        for (std::size_t i = 0; i < drafts.size(); ++i) {
            if (!drafts[i].citable) continue;
            if (horizon - drafts[i].day < bucket.lo) continue;  // not enough headroom
            candidates.push_back(i);
            acc += drafts[i].popularity;
            prefix.push_back(acc);
        }
        if (candidates.empty()) {
            std::cerr << "no candidate posts for ages " << bucket.lo << ".." << bucket.hi << "\n";
            return 1;
        }
        for (long link = 0; link < want; ++link) {
            const double pick = rng.u01() * acc;
            const std::size_t slot =
                std::lower_bound(prefix.begin(), prefix.end(), pick) - prefix.begin();
            Draft& target = drafts[candidates[std::min(slot, candidates.size() - 1)]];
            const long headroom = horizon - target.day;
            const long age = rng.uniform(bucket.lo, std::min(bucket.hi, headroom));
            const long cited_day = target.day + age;

            InlinkRecord inlink;
            inlink.cited_at = first_day.plus_days(cited_day);
            if (age >= 1 && rng.chance(0.4)) {
                const auto it = by_day.find(cited_day);
                if (it != by_day.end()) {
                    // cite from a post published that day (never the target itself)
                    std::vector<std::size_t> sources = it->second;
                    const std::size_t chosen = sources[rng.uniform(0, sources.size() - 1)];
                    if (&drafts[chosen] != &target) {
                        // hold the source index until final ids are assigned
                        inlink.source_post_id = "idx:" + std::to_string(chosen);
                        inlink.source_author = drafts[chosen].author;
                        ++drafts[chosen].cites_made;
                        ++resolved_sources;
                    }
                }
            }
            if (!inlink.source_post_id) {
                if (rng.chance(0.5)) {
                    inlink.source_author = kExternalBlogs[rng.uniform(
                        0, sizeof(kExternalBlogs) / sizeof(kExternalBlogs[0]) - 1)];
                }
                ++external_sources;
            }
            target.inlinks.push_back(std::move(inlink));
            ++assigned;
        }
    }

    // final ids in date order, then patch the provisional source references
    std::vector<std::string> ids(drafts.size());
    for (std::size_t i = 0; i < drafts.size(); ++i) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "p%05zu", i + 1);
        ids[i] = buf;
    }
    std::vector<PostRecord> records;
    records.reserve(drafts.size());
    for (std::size_t i = 0; i < drafts.size(); ++i) {
        Draft& d = drafts[i];
        PostRecord post;
        post.post_id = ids[i];
        post.author_id = d.author;
        post.published_at = first_day.plus_days(d.day);
        post.comment_count = d.comments;
        post.outlink_count = d.cites_made + rng.uniform(0, 3);
        post.length_chars = d.length;
        for (InlinkRecord& link : d.inlinks) {
            if (link.source_post_id && link.source_post_id->rfind("idx:", 0) == 0) {
                const std::size_t src = std::stoul(link.source_post_id->substr(4));
                link.source_post_id = ids[src];
            }
            post.inlinks.push_back(std::move(link));
        }
        records.push_back(std::move(post));
    }

    std::vector<std::string> warnings;
    const Corpus corpus = make_corpus(std::move(records), {}, &warnings);
    for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';

    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot open " << out_path << '\n';
        return 1;
    }
    out << "# synthetic community-blog corpus (seed " << seed << ")\n";
    save_corpus(corpus, out);

    const AgeHistogram hist = inlink_age_histogram(corpus);
    std::cerr << "posts " << corpus.posts.size() << ", bloggers " << corpus.blogger_index.size()
              << ", inlinks " << assigned << " (" << resolved_sources << " resolved / "
              << external_sources << " external), as-of " << corpus.as_of.to_string() << '\n';
    for (std::size_t b = 0; b < AgeHistogram::kBucketCount; ++b) {
        std::cerr << "  " << age_bucket_labels()[b] << ": " << hist.counts[b] << " ("
                  << hist.percentages[b] << "%)\n";
    }
    return 0;
}
