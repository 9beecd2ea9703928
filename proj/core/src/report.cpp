#include "qgen/report.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "qgen/csv.hpp"
#include "qgen/error.hpp"
#include "qgen/warehouse.hpp"

namespace qgen {

std::string_view to_string(ReportKind kind) {
    switch (kind) {
        case ReportKind::CoverageByCategory: return "coverage-by-category";
        case ReportKind::CoverageRecallRatio: return "coverage-recall-ratio";
        case ReportKind::EfficiencyByCategory: return "efficiency-by-category";
        case ReportKind::NextlinkScatter: return "nextlink-scatter";
    }
    return "?";
}

ReportKind parse_report_kind(std::string_view name) {
    for (auto k : {ReportKind::CoverageByCategory, ReportKind::CoverageRecallRatio, ReportKind::EfficiencyByCategory,
                   ReportKind::NextlinkScatter}) {
        if (to_string(k) == name) return k;
    }
    throw Error("unknown report kind '" + std::string(name) +
                "' (expected coverage-by-category, coverage-recall-ratio, efficiency-by-category or nextlink-scatter)");
}

namespace {

struct Mean {
    double sum = 0.0;
    std::size_t n = 0;

    void add(double v) {
        sum += v;
        ++n;
    }
    std::optional<double> value() const { return n == 0 ? std::nullopt : std::optional<double>(sum / static_cast<double>(n)); }
};

std::string cell(const std::optional<double>& v) { return v ? format_fixed(*v) : "NA"; }

/// Generator ids in order of first appearance.
std::vector<std::string> generators(const std::vector<MeasureRow>& rows) {
    std::vector<std::string> out;
    for (const auto& r : rows) {
        if (std::find(out.begin(), out.end(), r.generator_id) == out.end()) out.push_back(r.generator_id);
    }
    return out;
}

void coverage_by_category(const std::vector<MeasureRow>& rows, std::ostream& out) {
    std::map<std::pair<std::string, Category>, Mean> means;
    for (const auto& r : rows) means[{r.generator_id, r.category}].add(r.coverage);
    std::vector<std::string> header{"generator_id"};
    for (auto c : kAllCategories) header.emplace_back(to_string(c));
    write_csv_row(out, header);
    for (const auto& g : generators(rows)) {
        std::vector<std::string> row{g};
        for (auto c : kAllCategories) row.push_back(cell(means[{g, c}].value()));
        write_csv_row(out, row);
    }
}

void coverage_recall_ratio(const std::vector<MeasureRow>& rows, std::ostream& out) {
    std::map<std::string, std::pair<Mean, Mean>> means;  // coverage, recall over cells with defined recall
    for (const auto& r : rows) {
        if (!r.recall) continue;
        means[r.generator_id].first.add(r.coverage);
        means[r.generator_id].second.add(*r.recall);
    }
    write_csv_row(out, {"generator_id", "coverage_pct", "recall_pct"});
    for (const auto& g : generators(rows)) {
        const auto& [coverage, recall] = means[g];
        std::optional<double> ratio;
        if (coverage.value() && *coverage.value() > 0.0) ratio = 100.0 * *recall.value() / *coverage.value();
        write_csv_row(out, {g, format_fixed(100.0), cell(ratio)});
    }
}

void efficiency_by_category(const std::vector<MeasureRow>& rows, std::ostream& out) {
    std::map<std::pair<std::string, Category>, std::pair<Mean, Mean>> means;  // first, all
    for (const auto& r : rows) {
        auto& m = means[{r.generator_id, r.category}];
        m.first.add(r.efficiency_first);
        m.second.add(r.efficiency_all);
    }
    std::vector<std::string> header{"generator_id"};
    for (auto c : kAllCategories) {
        header.push_back(std::string(to_string(c)) + "_first");
        header.push_back(std::string(to_string(c)) + "_all");
    }
    write_csv_row(out, header);
    for (const auto& g : generators(rows)) {
        std::vector<std::string> row{g};
        for (auto c : kAllCategories) {
            const auto& m = means[{g, c}];
            row.push_back(cell(m.first.value()));
            row.push_back(cell(m.second.value()));
        }
        write_csv_row(out, row);
    }
}

void nextlink_scatter(const std::filesystem::path& warehouse, std::ostream& out) {
    write_csv_row(out, {"page_precision", "next_page_precision"});
    for (const auto& p : read_pages(warehouse)) {
        if (p.next_page_precision) write_csv_row(out, {format_fixed(p.page_precision), format_fixed(*p.next_page_precision)});
    }
}

}  // namespace

void write_report(ReportKind kind, const std::filesystem::path& warehouse, std::ostream& out, std::optional<int> size) {
    auto rows = read_measures(warehouse);
    if (rows.empty()) throw Error("warehouse " + warehouse.string() + " holds no measures");
    if (size) std::erase_if(rows, [&](const MeasureRow& r) { return r.size != *size; });
    switch (kind) {
        case ReportKind::CoverageByCategory: coverage_by_category(rows, out); break;
        case ReportKind::CoverageRecallRatio: coverage_recall_ratio(rows, out); break;
        case ReportKind::EfficiencyByCategory: efficiency_by_category(rows, out); break;
        case ReportKind::NextlinkScatter: nextlink_scatter(warehouse, out); break;
    }
}

}  // namespace qgen
