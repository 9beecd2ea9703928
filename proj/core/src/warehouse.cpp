#include "qgen/warehouse.hpp"

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "qgen/csv.hpp"
#include "qgen/error.hpp"
#include "qgen/random.hpp"

namespace qgen {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::optional<std::string> Manifest::get(std::string_view key) const {
    for (const auto& [k, v] : entries) {
        if (k == key) return v;
    }
    return std::nullopt;
}

std::string Manifest::content_hash() const {
    std::string text;
    for (const auto& [k, v] : entries) text += k + "=" + v + "\n";
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(text)));
    return buf;
}

namespace {

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << "format=" << kWarehouseFormat << '\n';
    return out;
}

std::ifstream open_input(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::string header;
    std::getline(in, header);
    if (header != "format=" + std::string(kWarehouseFormat)) {
        throw ParseError(path.string(), 1, "expected 'format=" + std::string(kWarehouseFormat) + "'");
    }
    return in;
}

ordered_json ratio_json(const Ratio& r) { return ordered_json{{"num", r.num}, {"den", r.den}}; }

ordered_json cell_json(const CellResult& cell, const EngineIndex& index) {
    ordered_json queries = ordered_json::array();
    for (const auto& q : cell.record.queries) {
        ordered_json pages = ordered_json::array();
        for (const auto& p : q.pages) {
            ordered_json ids = ordered_json::array();
            for (auto ref : p.entities) ids.push_back(index.entity(ref).id);
            pages.push_back({{"request", p.request}, {"page", p.page}, {"entities", ids}, {"has_next", p.has_next}});
        }
        queries.push_back({{"query", q.query}, {"pages", pages}});
    }

    ordered_json mapping = ordered_json::array();
    for (const auto& pair : cell.mapping.pairs) {
        mapping.push_back({{"s", pair.s},
                           {"t", index.entity(cell.returned[pair.t]).id},
                           {"author_sim", pair.author_sim},
                           {"title_sim", pair.title_sim},
                           {"year_sim", pair.year_sim}});
    }

    const auto& m = cell.measures;
    ordered_json measures = {{"coverage", ratio_json(m.coverage)},
                             {"recall", m.recall ? ratio_json(*m.recall) : ordered_json(nullptr)},
                             {"precision", ratio_json(m.precision)},
                             {"efficiency_all", ratio_json(m.efficiency_all)},
                             {"efficiency_first", ratio_json(m.efficiency_first)},
                             {"s", m.s_size},
                             {"t", m.t_size},
                             {"t_rel", m.t_rel_size},
                             {"m", m.m_size},
                             {"domain", m.domain_size},
                             {"range", m.range_size},
                             {"false_matches", m.false_matches}};

    return {{"dataset_id", cell.dataset_id},
            {"generator_id", cell.generator_id},
            {"engine_profile", cell.record.engine_profile},
            {"seed", cell.record.seed},
            {"total_requests", cell.record.total_requests},
            {"queries", queries},
            {"mapping", mapping},
            {"measures", measures}};
}

std::optional<double> parse_optional(const std::string& field) {
    if (field.empty() || field == "NA") return std::nullopt;
    return std::stod(field);
}

}  // namespace

bool write_warehouse(const fs::path& dir, const ExperimentResult& result, const EngineIndex& index,
                     const Manifest& manifest) {
    const auto hash = manifest.content_hash();
    if (fs::exists(dir / "manifest")) {
        const auto existing = read_manifest(dir);
        if (existing.get("content_hash") == hash) return false;
        throw Error("warehouse " + dir.string() + " already holds a run with different inputs; choose another --out");
    }
    fs::create_directories(dir);

    {
        auto out = open_output(dir / "runs.jsonl");
        for (const auto& cell : result.cells) {
            if (cell.ok) out << cell_json(cell, index).dump() << '\n';
        }
    }
    {
        auto out = open_output(dir / "measures.csv");
        write_csv_row(out, {"dataset_id", "category", "size", "generator_id", "coverage", "recall", "precision",
                            "efficiency_all", "efficiency_first", "total_requests", "queries", "seed"});
        for (const auto& cell : result.cells) {
            if (!cell.ok) continue;
            const auto& m = cell.measures;
            write_csv_row(out, {cell.dataset_id, std::string(to_string(cell.category)), std::to_string(cell.size),
                                cell.generator_id, format_fixed(m.coverage.value()),
                                m.recall ? format_fixed(m.recall->value()) : "NA", format_fixed(m.precision.value()),
                                format_fixed(m.efficiency_all.value()), format_fixed(m.efficiency_first.value()),
                                std::to_string(m.total_requests), std::to_string(m.queries),
                                std::to_string(cell.record.seed)});
        }
    }
    {
        auto out = open_output(dir / "pages.csv");
        write_csv_row(out, {"run_id", "query", "page", "page_precision", "next_offered", "next_page_precision"});
        for (const auto& cell : result.cells) {
            for (const auto& s : cell.pages) {
                write_csv_row(out, {s.run_id, std::to_string(s.query), std::to_string(s.page),
                                    format_fixed(s.page_precision), s.next_offered ? "1" : "0",
                                    s.next_page_precision ? format_fixed(*s.next_page_precision) : ""});
            }
        }
    }
    {
        auto out = open_output(dir / "failures.csv");
        write_csv_row(out, {"dataset_id", "generator_id", "error"});
        for (const auto& cell : result.cells) {
            if (!cell.ok) write_csv_row(out, {cell.dataset_id, cell.generator_id, cell.error});
        }
    }
    {
        auto out = open_output(dir / "timings.csv");
        write_csv_row(out, {"dataset_id", "generator_id", "wall_time_ms"});
        for (const auto& cell : result.cells) {
            if (cell.ok) write_csv_row(out, {cell.dataset_id, cell.generator_id, format_fixed(cell.record.wall_time_ms, 3)});
        }
    }
    {
        auto out = open_output(dir / "manifest");
        for (const auto& [k, v] : manifest.entries) out << k << '=' << v << '\n';
        out << "content_hash=" << hash << '\n';
    }
    return true;
}

std::vector<MeasureRow> read_measures(const fs::path& dir) {
    const auto path = dir / "measures.csv";
    auto in = open_input(path);
    std::string line;
    std::getline(in, line);  // column header
    std::vector<MeasureRow> rows;
    std::size_t line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = parse_csv_line(line);
        if (f.size() != 12) throw ParseError(path.string(), line_no, "expected 12 columns");
        try {
            MeasureRow r;
            r.dataset_id = f[0];
            r.category = parse_category(f[1]);
            r.size = std::stoi(f[2]);
            r.generator_id = f[3];
            r.coverage = std::stod(f[4]);
            r.recall = parse_optional(f[5]);
            r.precision = std::stod(f[6]);
            r.efficiency_all = std::stod(f[7]);
            r.efficiency_first = std::stod(f[8]);
            r.total_requests = std::stoi(f[9]);
            r.queries = std::stoi(f[10]);
            r.seed = std::stoull(f[11]);
            rows.push_back(std::move(r));
        } catch (const std::logic_error&) {
            throw ParseError(path.string(), line_no, "malformed number");
        } catch (const Error& e) {
            throw ParseError(path.string(), line_no, e.what());
        }
    }
    return rows;
}

std::vector<PageRow> read_pages(const fs::path& dir) {
    const auto path = dir / "pages.csv";
    auto in = open_input(path);
    std::string line;
    std::getline(in, line);
    std::vector<PageRow> rows;
    std::size_t line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = parse_csv_line(line);
        if (f.size() != 6) throw ParseError(path.string(), line_no, "expected 6 columns");
        try {
            PageRow r;
            r.run_id = f[0];
            r.query = std::stoul(f[1]);
            r.page = std::stoi(f[2]);
            r.page_precision = std::stod(f[3]);
            r.next_offered = f[4] == "1";
            r.next_page_precision = parse_optional(f[5]);
            rows.push_back(std::move(r));
        } catch (const std::logic_error&) {
            throw ParseError(path.string(), line_no, "malformed number");
        }
    }
    return rows;
}

Manifest read_manifest(const fs::path& dir) {
    auto in = open_input(dir / "manifest");
    Manifest m;
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        m.add(line.substr(0, eq), line.substr(eq + 1));
    }
    return m;
}

}  // namespace qgen
