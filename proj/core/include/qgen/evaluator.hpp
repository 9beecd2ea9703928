#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qgen/capabilities.hpp"
#include "qgen/generators.hpp"
#include "qgen/index.hpp"
#include "qgen/matcher.hpp"
#include "qgen/noise.hpp"

namespace qgen {

/// When to request the next result page of a query.
struct FollowPolicy {
    enum class Kind { AllPages, FirstPageOnly, PrecisionThreshold };

    Kind kind = Kind::AllPages;
    double threshold = 0.0;  // PrecisionThreshold: stop once a page's precision is below this

    static FollowPolicy all_pages() { return {Kind::AllPages, 0.0}; }
    static FollowPolicy first_page_only() { return {Kind::FirstPageOnly, 0.0}; }
    static FollowPolicy precision_threshold(double theta) { return {Kind::PrecisionThreshold, theta}; }
};

/// "all-pages", "first-page-only" or "precision-threshold:<theta>".
std::string to_string(const FollowPolicy& policy);
FollowPolicy parse_follow_policy(std::string_view text);

/// Sorted set of index entities.
class EntitySet {
public:
    EntitySet() = default;
    explicit EntitySet(std::vector<EntityRef> refs);

    bool contains(EntityRef ref) const { return std::binary_search(refs_.begin(), refs_.end(), ref); }
    std::size_t size() const noexcept { return refs_.size(); }
    bool empty() const noexcept { return refs_.empty(); }
    std::span<const EntityRef> refs() const noexcept { return refs_; }

private:
    std::vector<EntityRef> refs_;
};

struct PageFetch {
    int request = 0;  // 1-based, sequential over the whole run
    int page = 1;
    std::vector<EntityRef> entities;
    bool has_next = false;
};

struct QueryExecution {
    std::string query;  // textual form
    std::vector<PageFetch> pages;
};

struct RunRecord {
    std::string dataset_id;
    std::string generator_id;
    std::string engine_profile;
    std::vector<QueryExecution> queries;
    int total_requests = 0;
    double wall_time_ms = 0.0;
    std::uint64_t seed = 0;

    /// T: distinct returned entities in first-seen order.
    std::vector<EntityRef> returned() const;
    /// Distinct entities returned on the first page of some query.
    EntitySet first_page_returned() const;
};

/// Runs every planned query page by page under the follow policy. The
/// precision-threshold policy needs the ground-truth relevant set.
RunRecord execute_plan(const QueryPlan& plan, const EngineIndex& index, const EngineCapabilities& caps,
                       const FollowPolicy& policy, const EntitySet* relevant = nullptr);

/// T_rel(S): every index entity whose provenance source is in S.
EntitySet t_rel(std::span<const std::string> source_ids, const IndexProvenance& provenance);

/// Exact fraction; value() is 0 for a zero denominator.
struct Ratio {
    std::int64_t num = 0;
    std::int64_t den = 0;

    double value() const { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Ratio&, const Ratio&) = default;
};

struct MeasureReport {
    Ratio coverage;                // |domain(M)| / |S|
    std::optional<Ratio> recall;   // |range(M)| / |T_rel|; undefined when T_rel is empty
    Ratio precision;               // |range(M)| / |T|; 0 when T is empty
    Ratio efficiency_all;          // |domain(M)| / #requests
    Ratio efficiency_first;        // |domain(M1)| / #queries, M1 restricted to first pages
    std::size_t s_size = 0;
    std::size_t t_size = 0;
    std::size_t t_rel_size = 0;
    std::size_t m_size = 0;
    std::size_t domain_size = 0;
    std::size_t range_size = 0;
    std::size_t queries = 0;
    std::size_t total_requests = 0;
    std::size_t false_matches = 0;  // |range(M) \ T_rel|

    friend bool operator==(const MeasureReport&, const MeasureReport&) = default;
};

/// `t` lists the returned entities that MatchPair::t positions refer to.
MeasureReport compute_measures(const RunRecord& record, const MatchMapping& mapping, std::size_t s_size,
                               std::span<const EntityRef> t, const EntitySet& t_rel);

struct PagePrecisionSample {
    std::string run_id;
    std::size_t query = 0;  // position in RunRecord::queries
    int page = 1;
    double page_precision = 0.0;
    bool next_offered = false;
    std::optional<double> next_page_precision;  // set iff the next page was fetched
};

/// One sample per fetched page of the record. Empty pages have precision 0.
std::vector<PagePrecisionSample> page_samples(const RunRecord& record, const EntitySet& relevant);

struct CutoffRow {
    double cutoff = 0.0;
    std::size_t samples = 0;             // pages with current precision < cutoff and a fetched successor
    std::optional<double> mean_next_precision;
};

struct NextLinkSummary {
    std::size_t pages = 0;
    std::size_t pages_offering_next = 0;
    double next_link_fraction = 0.0;
    std::vector<CutoffRow> by_cutoff;  // cutoffs 0.05, 0.10, ..., 1.00
};

NextLinkSummary summarize_next_links(std::span<const PagePrecisionSample> all_pages);

struct NextLinkAnalysis {
    std::vector<PagePrecisionSample> samples;  // pages with a fetched successor
    NextLinkSummary summary;
};

/// relevant[i] is the ground truth of records[i].
NextLinkAnalysis next_link_analysis(std::span<const RunRecord> records, std::span<const EntitySet> relevant);

}  // namespace qgen
