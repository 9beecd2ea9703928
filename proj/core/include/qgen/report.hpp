#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>

namespace qgen {

enum class ReportKind { CoverageByCategory, CoverageRecallRatio, EfficiencyByCategory, NextlinkScatter };

std::string_view to_string(ReportKind kind);
/// Throws qgen::Error on unknown kinds.
ReportKind parse_report_kind(std::string_view name);

/// Emits a plot-ready CSV derived from the warehouse files alone.
/// `size` restricts measure-based reports to datasets of that size.
///
///   coverage-by-category    generator_id, Author, Title, Venue, Random   (mean coverage)
///   coverage-recall-ratio   generator_id, coverage_pct, recall_pct       (coverage = 100)
///   efficiency-by-category  generator_id, <Category>_first, <Category>_all per category
///   nextlink-scatter        page_precision, next_page_precision
///
/// Throws qgen::Error when the warehouse holds no measures.
void write_report(ReportKind kind, const std::filesystem::path& warehouse, std::ostream& out,
                  std::optional<int> size = std::nullopt);

}  // namespace qgen
