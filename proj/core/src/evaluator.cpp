#include "qgen/evaluator.hpp"

#include <chrono>
#include <cstdio>
#include <unordered_set>

#include "qgen/engine.hpp"
#include "qgen/error.hpp"
#include "qgen/random.hpp"

namespace qgen {

std::string to_string(const FollowPolicy& policy) {
    switch (policy.kind) {
        case FollowPolicy::Kind::AllPages: return "all-pages";
        case FollowPolicy::Kind::FirstPageOnly: return "first-page-only";
        case FollowPolicy::Kind::PrecisionThreshold: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "precision-threshold:%g", policy.threshold);
            return buf;
        }
    }
    return "?";
}

FollowPolicy parse_follow_policy(std::string_view text) {
    if (text == "all-pages") return FollowPolicy::all_pages();
    if (text == "first-page-only") return FollowPolicy::first_page_only();
    constexpr std::string_view prefix = "precision-threshold:";
    if (text.substr(0, prefix.size()) == prefix) {
        const std::string number(text.substr(prefix.size()));
        std::size_t used = 0;
        double theta = 0.0;
        try {
            theta = std::stod(number, &used);
        } catch (const std::logic_error&) {
            used = 0;
        }
        if (used == 0 || used != number.size() || !(theta >= 0.0 && theta <= 1.0)) {
            throw Error("precision threshold must be a number in [0, 1], got '" + number + "'");
        }
        return FollowPolicy::precision_threshold(theta);
    }
    throw Error("unknown follow policy '" + std::string(text) +
                "' (expected all-pages, first-page-only or precision-threshold:<theta>)");
}

EntitySet::EntitySet(std::vector<EntityRef> refs) : refs_(std::move(refs)) {
    std::sort(refs_.begin(), refs_.end());
    refs_.erase(std::unique(refs_.begin(), refs_.end()), refs_.end());
}

std::vector<EntityRef> RunRecord::returned() const {
    std::vector<EntityRef> out;
    std::unordered_set<EntityRef> seen;
    for (const auto& q : queries) {
        for (const auto& page : q.pages) {
            for (auto ref : page.entities) {
                if (seen.insert(ref).second) out.push_back(ref);
            }
        }
    }
    return out;
}

EntitySet RunRecord::first_page_returned() const {
    std::vector<EntityRef> refs;
    for (const auto& q : queries) {
        for (const auto& page : q.pages) {
            if (page.page == 1) refs.insert(refs.end(), page.entities.begin(), page.entities.end());
        }
    }
    return EntitySet(std::move(refs));
}

namespace {

double precision_of(const std::vector<EntityRef>& entities, const EntitySet& relevant) {
    if (entities.empty()) return 0.0;
    const auto hits = std::count_if(entities.begin(), entities.end(), [&](EntityRef r) { return relevant.contains(r); });
    return static_cast<double>(hits) / static_cast<double>(entities.size());
}

}  // namespace

RunRecord execute_plan(const QueryPlan& plan, const EngineIndex& index, const EngineCapabilities& caps,
                       const FollowPolicy& policy, const EntitySet* relevant) {
    if (policy.kind == FollowPolicy::Kind::PrecisionThreshold && relevant == nullptr) {
        throw Error("the precision-threshold follow policy needs the relevant entity set");
    }
    const auto started = std::chrono::steady_clock::now();
    RunRecord record;
    record.generator_id = plan.generator_id;
    record.engine_profile = caps.profile;
    for (const auto& planned : plan.queries) {
        QueryExecution exec;
        exec.query = to_string(planned.query);
        std::vector<RankedEntity> ranked;
        try {
            ranked = rank_matches(index, planned.query, caps);
        } catch (const RejectedQuery& e) {
            throw Error(std::string(e.what()) + ": " + exec.query);
        }
        const auto query_id = fnv1a64(exec.query);
        for (int page = 1;; ++page) {
            auto result = slice_page(ranked, query_id, page, caps);
            PageFetch fetch;
            fetch.request = ++record.total_requests;
            fetch.page = page;
            fetch.has_next = result.has_next;
            fetch.entities = std::move(result.entities);
            const bool follow = [&] {
                if (!fetch.has_next) return false;
                switch (policy.kind) {
                    case FollowPolicy::Kind::AllPages: return true;
                    case FollowPolicy::Kind::FirstPageOnly: return false;
                    case FollowPolicy::Kind::PrecisionThreshold:
                        return precision_of(fetch.entities, *relevant) >= policy.threshold;
                }
                return false;
            }();
            exec.pages.push_back(std::move(fetch));
            if (!follow) break;
        }
        record.queries.push_back(std::move(exec));
    }
    record.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    return record;
}

EntitySet t_rel(std::span<const std::string> source_ids, const IndexProvenance& provenance) {
    const std::unordered_set<std::string> wanted(source_ids.begin(), source_ids.end());
    std::vector<EntityRef> refs;
    for (std::size_t i = 0; i < provenance.size(); ++i) {
        const auto& src = provenance.source(static_cast<EntityRef>(i));
        if (src && wanted.count(*src)) refs.push_back(static_cast<EntityRef>(i));
    }
    return EntitySet(std::move(refs));
}

MeasureReport compute_measures(const RunRecord& record, const MatchMapping& mapping, std::size_t s_size,
                               std::span<const EntityRef> t, const EntitySet& t_rel) {
    const auto domain = mapping.domain();
    const auto range = mapping.range();
    const auto first_pages = record.first_page_returned();

    std::vector<std::size_t> first_domain;
    for (const auto& p : mapping.pairs) {
        if (first_pages.contains(t[p.t])) first_domain.push_back(p.s);
    }
    std::sort(first_domain.begin(), first_domain.end());
    first_domain.erase(std::unique(first_domain.begin(), first_domain.end()), first_domain.end());

    MeasureReport r;
    r.s_size = s_size;
    r.t_size = t.size();
    r.t_rel_size = t_rel.size();
    r.m_size = mapping.pairs.size();
    r.domain_size = domain.size();
    r.range_size = range.size();
    r.queries = record.queries.size();
    r.total_requests = static_cast<std::size_t>(record.total_requests);
    r.false_matches = static_cast<std::size_t>(
        std::count_if(range.begin(), range.end(), [&](std::size_t pos) { return !t_rel.contains(t[pos]); }));

    const auto i64 = [](std::size_t v) { return static_cast<std::int64_t>(v); };
    r.coverage = {i64(r.domain_size), i64(s_size)};
    if (!t_rel.empty()) r.recall = Ratio{i64(r.range_size), i64(r.t_rel_size)};
    r.precision = {i64(r.range_size), i64(r.t_size)};
    r.efficiency_all = {i64(r.domain_size), i64(r.total_requests)};
    r.efficiency_first = {i64(first_domain.size()), i64(r.queries)};
    return r;
}

std::vector<PagePrecisionSample> page_samples(const RunRecord& record, const EntitySet& relevant) {
    std::vector<PagePrecisionSample> out;
    const auto run_id = record.dataset_id + "/" + record.generator_id;
    for (std::size_t q = 0; q < record.queries.size(); ++q) {
        const auto& pages = record.queries[q].pages;
        for (std::size_t i = 0; i < pages.size(); ++i) {
            PagePrecisionSample s;
            s.run_id = run_id;
            s.query = q;
            s.page = pages[i].page;
            s.page_precision = precision_of(pages[i].entities, relevant);
            s.next_offered = pages[i].has_next;
            if (s.next_offered && i + 1 < pages.size()) s.next_page_precision = precision_of(pages[i + 1].entities, relevant);
            out.push_back(std::move(s));
        }
    }
    return out;
}

NextLinkSummary summarize_next_links(std::span<const PagePrecisionSample> all_pages) {
    NextLinkSummary summary;
    summary.pages = all_pages.size();
    summary.pages_offering_next = static_cast<std::size_t>(
        std::count_if(all_pages.begin(), all_pages.end(), [](const auto& s) { return s.next_offered; }));
    summary.next_link_fraction =
        summary.pages == 0 ? 0.0 : static_cast<double>(summary.pages_offering_next) / static_cast<double>(summary.pages);
    for (int step = 1; step <= 20; ++step) {
        CutoffRow row;
        row.cutoff = step / 20.0;
        double total = 0.0;
        for (const auto& s : all_pages) {
            if (!s.next_page_precision || !(s.page_precision < row.cutoff)) continue;
            ++row.samples;
            total += *s.next_page_precision;
        }
        if (row.samples > 0) row.mean_next_precision = total / static_cast<double>(row.samples);
        summary.by_cutoff.push_back(row);
    }
    return summary;
}

NextLinkAnalysis next_link_analysis(std::span<const RunRecord> records, std::span<const EntitySet> relevant) {
    if (records.size() != relevant.size()) throw Error("next-link analysis needs one relevant set per record");
    std::vector<PagePrecisionSample> all;
    for (std::size_t i = 0; i < records.size(); ++i) {
        auto samples = page_samples(records[i], relevant[i]);
        all.insert(all.end(), std::make_move_iterator(samples.begin()), std::make_move_iterator(samples.end()));
    }
    NextLinkAnalysis analysis;
    analysis.summary = summarize_next_links(all);
    for (auto& s : all) {
        if (s.next_page_precision) analysis.samples.push_back(std::move(s));
    }
    return analysis;
}

}  // namespace qgen
