#include "qgen/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <map>
#include <ostream>
#include <set>

#include "qgen/random.hpp"
#include "qgen/record_format.hpp"
#include "qgen/text.hpp"

namespace qgen {

void validate_publication(const Publication& pub) {
    if (trim(pub.id).empty()) throw Error("publication id must not be empty");
    if (pub.authors.empty()) throw Error("publication '" + pub.id + "' has no authors");
    for (const auto& a : pub.authors) {
        if (trim(a).empty()) throw Error("publication '" + pub.id + "' has an empty author name");
    }
    if (pub.year < kMinYear || pub.year > kMaxYear) {
        throw Error("publication '" + pub.id + "' has year " + std::to_string(pub.year) + " outside [1900, 2100]");
    }
}

Corpus::Corpus(std::vector<Publication> publications) : pubs_(std::move(publications)) {
    by_id_.reserve(pubs_.size());
    for (std::size_t i = 0; i < pubs_.size(); ++i) {
        validate_publication(pubs_[i]);
        if (!by_id_.emplace(pubs_[i].id, i).second) throw Error("duplicate publication id '" + pubs_[i].id + "'");
    }
}

std::optional<std::size_t> Corpus::index_of(std::string_view id) const {
    const auto it = by_id_.find(std::string(id));
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
}

const Publication* Corpus::find(std::string_view id) const {
    const auto i = index_of(id);
    return i ? &pubs_[*i] : nullptr;
}

Corpus read_corpus(std::istream& in, const std::string& source) {
    const auto file = read_records(in, kCorpusFormat, source);
    std::vector<Publication> pubs;
    std::set<std::string> seen;
    pubs.reserve(file.records.size());
    for (const auto& r : file.records) {
        Publication p;
        p.id = r.get("id");
        p.authors = r.get_list("authors");
        p.title = r.get("title");
        p.year = static_cast<int>(r.get_int("year"));
        p.venue = r.get_or("venue", "");
        try {
            validate_publication(p);
        } catch (const Error& e) {
            r.fail(e.what());
        }
        if (!seen.insert(p.id).second) r.fail("duplicate publication id '" + p.id + "'");
        pubs.push_back(std::move(p));
    }
    return Corpus(std::move(pubs));
}

Corpus load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open corpus " + path.string());
    return read_corpus(in, path.string());
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
    RecordWriter w(out, kCorpusFormat);
    for (const auto& p : corpus) {
        w.field("id", p.id).list("authors", p.authors).field("title", p.title).field("year", p.year).field("venue", p.venue);
        w.end_record();
    }
}

void save_corpus(const std::filesystem::path& path, const Corpus& corpus) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    write_corpus(out, corpus);
    if (!out) throw Error("I/O error writing " + path.string());
}

std::string_view to_string(Category c) {
    switch (c) {
        case Category::Author: return "Author";
        case Category::Title: return "Title";
        case Category::Venue: return "Venue";
        case Category::Random: return "Random";
    }
    return "?";
}

Category parse_category(std::string_view name) {
    const auto lower = to_lower(trim(name));
    for (auto c : kAllCategories) {
        if (to_lower(to_string(c)) == lower) return c;
    }
    throw Error("unknown dataset category '" + std::string(name) + "'");
}

InfeasibleCell::InfeasibleCell(Category category, int size, const std::string& reason)
    : Error("cannot build a " + std::string(to_string(category)) + " dataset of size " + std::to_string(size) + ": " +
            reason),
      category_(category),
      size_(size) {}

namespace {

using Groups = std::map<std::string, std::vector<std::size_t>>;

std::set<std::string> author_keys(const Publication& p) {
    std::set<std::string> keys;
    for (const auto& a : p.authors) keys.insert(author_key(a));
    return keys;
}

std::set<std::string> title_keys(const Publication& p) {
    const auto tokens = content_tokens(p.title, stopword_list("default"));
    return {tokens.begin(), tokens.end()};
}

std::string venue_key(const Publication& p) { return p.venue + "\x1f" + std::to_string(p.year); }

Groups group_corpus(const Corpus& corpus, Category category) {
    Groups groups;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& p = corpus[i];
        switch (category) {
            case Category::Author:
                for (const auto& k : author_keys(p)) groups[k].push_back(i);
                break;
            case Category::Title:
                for (const auto& k : title_keys(p)) groups[k].push_back(i);
                break;
            case Category::Venue:
                groups[venue_key(p)].push_back(i);
                break;
            case Category::Random:
                break;
        }
    }
    return groups;
}

std::vector<std::size_t> sample_without_replacement(std::vector<std::size_t> pool, std::size_t k, Rng& rng) {
    for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

constexpr int kDistinctRetries = 20;

}  // namespace

std::vector<Dataset> generate_datasets(const Corpus& corpus, std::span<const int> sizes,
                                       std::span<const Category> categories, int reps, std::uint64_t seed) {
    if (reps < 1) throw Error("reps must be at least 1");
    std::map<Category, Groups> grouped;
    std::vector<Dataset> out;

    for (const int size : sizes) {
        if (size < 1) throw Error("dataset size must be at least 1");
        const auto want = static_cast<std::size_t>(size);
        for (const auto category : categories) {
            std::vector<const std::vector<std::size_t>*> eligible;
            std::vector<std::size_t> everything;
            if (category == Category::Random) {
                if (corpus.size() < want) throw InfeasibleCell(category, size, "corpus has only " + std::to_string(corpus.size()) + " entities");
                everything.resize(corpus.size());
                for (std::size_t i = 0; i < everything.size(); ++i) everything[i] = i;
            } else {
                if (!grouped.count(category)) grouped.emplace(category, group_corpus(corpus, category));
                for (const auto& [key, members] : grouped.at(category)) {
                    if (members.size() >= want) eligible.push_back(&members);
                }
                if (eligible.empty()) {
                    throw InfeasibleCell(category, size, "no group has that many publications");
                }
            }

            std::vector<std::vector<std::size_t>> cell_sets;
            for (int rep = 0; rep < reps; ++rep) {
                Dataset d;
                d.category = category;
                d.size = size;
                d.id = to_lower(to_string(category)) + "-" + std::to_string(size) + "-" + std::to_string(rep + 1);
                d.seed = split_seed(seed, "dataset/" + d.id);
                Rng rng(d.seed);

                std::vector<std::size_t> chosen;
                for (int attempt = 0; attempt < kDistinctRetries; ++attempt) {
                    if (category == Category::Random) {
                        chosen = sample_without_replacement(everything, want, rng);
                    } else {
                        std::uniform_int_distribution<std::size_t> pick(0, eligible.size() - 1);
                        chosen = sample_without_replacement(*eligible[pick(rng)], want, rng);
                    }
                    if (std::find(cell_sets.begin(), cell_sets.end(), chosen) == cell_sets.end()) break;
                }
                cell_sets.push_back(chosen);
                for (auto i : chosen) d.members.push_back(corpus[i].id);
                out.push_back(std::move(d));
            }
        }
    }
    return out;
}

bool satisfies_category(const Corpus& corpus, const Dataset& dataset) {
    if (dataset.members.size() != static_cast<std::size_t>(dataset.size)) return false;
    std::vector<const Publication*> pubs;
    std::set<std::string> ids;
    for (const auto& id : dataset.members) {
        const auto* p = corpus.find(id);
        if (p == nullptr || !ids.insert(id).second) return false;
        pubs.push_back(p);
    }
    if (pubs.empty()) return dataset.category == Category::Random;

    const auto intersect_all = [&](auto key_fn) {
        auto common = key_fn(*pubs.front());
        for (std::size_t i = 1; i < pubs.size() && !common.empty(); ++i) {
            const auto keys = key_fn(*pubs[i]);
            std::set<std::string> next;
            std::set_intersection(common.begin(), common.end(), keys.begin(), keys.end(),
                                  std::inserter(next, next.begin()));
            common = std::move(next);
        }
        return !common.empty();
    };

    switch (dataset.category) {
        case Category::Author: return intersect_all(author_keys);
        case Category::Title: return intersect_all(title_keys);
        case Category::Venue:
            return std::all_of(pubs.begin(), pubs.end(), [&](const Publication* p) {
                return p->venue == pubs.front()->venue && p->year == pubs.front()->year;
            });
        case Category::Random: return true;
    }
    return false;
}

std::vector<Publication> resolve_members(const Corpus& corpus, const Dataset& dataset) {
    std::vector<Publication> out;
    out.reserve(dataset.members.size());
    for (const auto& id : dataset.members) {
        const auto* p = corpus.find(id);
        if (p == nullptr) throw Error("dataset '" + dataset.id + "' references unknown publication '" + id + "'");
        out.push_back(*p);
    }
    return out;
}

std::vector<Dataset> read_datasets(std::istream& in, const std::string& source) {
    const auto file = read_records(in, kDatasetFormat, source);
    std::vector<Dataset> out;
    for (const auto& r : file.records) {
        Dataset d;
        d.id = r.get("id");
        try {
            d.category = parse_category(r.get("category"));
        } catch (const Error& e) {
            r.fail(e.what());
        }
        d.size = static_cast<int>(r.get_int("size"));
        try {
            d.seed = static_cast<std::uint64_t>(std::stoull(r.get("seed")));
        } catch (const std::logic_error&) {
            r.fail("field 'seed' is not an unsigned integer");
        }
        d.members = r.get_list("members");
        if (d.members.size() != static_cast<std::size_t>(d.size)) r.fail("member count does not match size");
        out.push_back(std::move(d));
    }
    return out;
}

std::vector<Dataset> load_datasets(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open dataset manifest " + path.string());
    return read_datasets(in, path.string());
}

void write_datasets(std::ostream& out, std::span<const Dataset> datasets) {
    RecordWriter w(out, kDatasetFormat);
    for (const auto& d : datasets) {
        w.field("id", d.id)
            .field("category", to_string(d.category))
            .field("size", d.size)
            .field("seed", std::to_string(d.seed))
            .list("members", d.members);
        w.end_record();
    }
}

void save_datasets(const std::filesystem::path& path, std::span<const Dataset> datasets) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    write_datasets(out, datasets);
}

}  // namespace qgen
