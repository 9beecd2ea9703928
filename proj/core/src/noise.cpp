#include "qgen/noise.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <ostream>
#include <random>

#include "qgen/error.hpp"
#include "qgen/random.hpp"
#include "qgen/record_format.hpp"
#include "qgen/text.hpp"

namespace qgen {

NoiseProfile NoiseProfile::zero() { return NoiseProfile{}; }

NoiseProfile NoiseProfile::defaults() {
    NoiseProfile p;
    p.duplicate_probability = 0.35;
    p.max_duplicates = 2;
    p.title_typo_rate = 1.5;
    p.author_misspell_probability = 0.25;
    p.year_shift_probability = 0.1;
    p.drop_cutoff_year = 1995;
    p.drop_probability_old = 0.6;
    p.distractor_count = 1000;
    return p;
}

void NoiseProfile::validate() const {
    const auto check_probability = [](double p, const char* name) {
        if (!(p >= 0.0 && p <= 1.0)) throw Error(std::string("noise.") + name + " must lie in [0, 1]");
    };
    check_probability(duplicate_probability, "duplicate_probability");
    check_probability(author_misspell_probability, "author_misspell_probability");
    check_probability(year_shift_probability, "year_shift_probability");
    check_probability(drop_probability_old, "drop_probability_old");
    if (max_duplicates < 0) throw Error("noise.max_duplicates must be non-negative");
    if (!(title_typo_rate >= 0.0)) throw Error("noise.title_typo_rate must be non-negative");
    if (distractor_count < 0) throw Error("noise.distractor_count must be non-negative");
}

std::size_t IndexProvenance::distractor_count() const {
    return static_cast<std::size_t>(std::count(sources_.begin(), sources_.end(), std::nullopt));
}

namespace {

bool is_letter(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

char other_letter(char original, Rng& rng) {
    std::uniform_int_distribution<int> pick(0, 24);
    const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(original)));
    char c = static_cast<char>('a' + pick(rng));
    if (c >= lower) ++c;  // skip the original letter
    return std::isupper(static_cast<unsigned char>(original)) ? static_cast<char>(std::toupper(c)) : c;
}

std::vector<std::size_t> letter_positions(std::string_view s, std::size_t begin = 0) {
    std::vector<std::size_t> out;
    for (std::size_t i = begin; i < s.size(); ++i) {
        if (is_letter(s[i])) out.push_back(i);
    }
    return out;
}

std::string add_typos(std::string title, double rate, Rng& rng) {
    const double mean = rate * static_cast<double>(decode_utf8(title).size()) / 100.0;
    if (mean <= 0.0) return title;
    const int edits = std::poisson_distribution<int>(mean)(rng);
    for (int e = 0; e < edits; ++e) {
        const auto positions = letter_positions(title);
        if (positions.size() < 2) break;
        const auto pos = positions[std::uniform_int_distribution<std::size_t>(0, positions.size() - 1)(rng)];
        if (std::bernoulli_distribution(0.5)(rng)) {
            title[pos] = other_letter(title[pos], rng);
        } else {
            title.erase(pos, 1);
        }
    }
    return title;
}

std::string misspell_last_name(std::string name, Rng& rng) {
    const auto t = trim(name);
    const auto last_start = t.find_last_of(" \t");
    const auto offset = name.find(t) + (last_start == std::string::npos ? 0 : last_start + 1);
    const auto positions = letter_positions(name, offset);
    if (positions.empty()) return name;
    const auto pos = positions[std::uniform_int_distribution<std::size_t>(0, positions.size() - 1)(rng)];
    name[pos] = other_letter(name[pos], rng);
    return name;
}

/// Samples from a frequency table with probability proportional to counts.
class FrequencyTable {
public:
    void add(const std::string& item) { ++counts_[item]; }
    bool empty() const { return counts_.empty(); }

    void freeze() {
        std::vector<double> weights;
        for (const auto& [item, count] : counts_) {
            items_.push_back(item);
            weights.push_back(static_cast<double>(count));
        }
        dist_ = std::discrete_distribution<std::size_t>(weights.begin(), weights.end());
    }

    const std::string& sample(Rng& rng) { return items_[dist_(rng)]; }

private:
    std::map<std::string, int> counts_;
    std::vector<std::string> items_;
    std::discrete_distribution<std::size_t> dist_;
};

std::vector<Publication> make_distractors(const Corpus& corpus, int count, Rng& rng) {
    if (count == 0) return {};
    if (corpus.empty()) throw Error("distractors need a non-empty corpus to sample from");
    FrequencyTable names, tokens;
    for (const auto& p : corpus) {
        for (const auto& a : p.authors) names.add(a);
        for (const auto& t : tokenize(p.title)) tokens.add(t);
    }
    names.freeze();
    tokens.freeze();

    std::uniform_int_distribution<std::size_t> any_pub(0, corpus.size() - 1);
    std::uniform_int_distribution<int> author_count(1, 4);
    std::uniform_int_distribution<int> title_length(3, 8);
    std::vector<Publication> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int n = 1; n <= count; ++n) {
        Publication d;
        d.id = "x" + std::to_string(n);
        const int authors = author_count(rng);
        for (int a = 0; a < authors; ++a) {
            const auto& name = names.sample(rng);
            if (std::find(d.authors.begin(), d.authors.end(), name) == d.authors.end()) d.authors.push_back(name);
        }
        const int length = title_length(rng);
        for (int k = 0; k < length; ++k) {
            if (k > 0) d.title += ' ';
            d.title += tokens.sample(rng);
        }
        d.title[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(d.title[0])));
        const auto& donor = corpus[any_pub(rng)];
        d.year = donor.year;
        d.venue = corpus[any_pub(rng)].venue;
        out.push_back(std::move(d));
    }
    return out;
}

}  // namespace

SimulatedIndex build_index(const Corpus& corpus, const NoiseProfile& profile) {
    profile.validate();
    Rng rng(profile.seed);
    std::bernoulli_distribution drop_old(profile.drop_probability_old);
    std::bernoulli_distribution duplicate(profile.duplicate_probability);
    std::bernoulli_distribution misspell(profile.author_misspell_probability);
    std::bernoulli_distribution shift_year(profile.year_shift_probability);
    std::uniform_real_distribution<double> faithful_pop(0.3, 1.0);
    std::uniform_real_distribution<double> duplicate_pop(0.1, 0.7);
    std::uniform_real_distribution<double> distractor_pop(0.0, 0.6);

    std::vector<Publication> entries;
    std::vector<double> popularity;
    std::vector<std::optional<std::string>> sources;
    for (const auto& pub : corpus) {
        if (pub.year < profile.drop_cutoff_year && drop_old(rng)) continue;
        entries.push_back(pub);
        popularity.push_back(faithful_pop(rng));
        sources.emplace_back(pub.id);
        if (profile.max_duplicates == 0 || !duplicate(rng)) continue;

        const int copies = std::uniform_int_distribution<int>(1, profile.max_duplicates)(rng);
        for (int k = 1; k <= copies; ++k) {
            Publication dup = pub;
            dup.id = pub.id + "~d" + std::to_string(k);
            dup.title = add_typos(dup.title, profile.title_typo_rate, rng);
            if (misspell(rng)) {
                const auto which = std::uniform_int_distribution<std::size_t>(0, dup.authors.size() - 1)(rng);
                dup.authors[which] = misspell_last_name(dup.authors[which], rng);
            }
            if (shift_year(rng)) {
                const int delta = std::bernoulli_distribution(0.5)(rng) ? 1 : -1;
                dup.year = std::clamp(dup.year + delta, kMinYear, kMaxYear);
            }
            entries.push_back(std::move(dup));
            popularity.push_back(duplicate_pop(rng));
            sources.emplace_back(pub.id);
        }
    }
    for (auto& d : make_distractors(corpus, profile.distractor_count, rng)) {
        entries.push_back(std::move(d));
        popularity.push_back(distractor_pop(rng));
        sources.emplace_back(std::nullopt);
    }
    return {EngineIndex(std::move(entries), popularity), IndexProvenance(std::move(sources))};
}

void write_index(std::ostream& out, const SimulatedIndex& built) {
    RecordWriter w(out, kIndexFormat);
    for (std::size_t i = 0; i < built.index.size(); ++i) {
        const auto ref = static_cast<EntityRef>(i);
        const auto& p = built.index.entity(ref);
        w.field("id", p.id).list("authors", p.authors).field("title", p.title).field("year", p.year).field("venue", p.venue);
        if (const auto& src = built.provenance.source(ref)) w.field("source", *src);
        w.field("rank", static_cast<long long>(built.index.static_rank(ref)));
        w.end_record();
    }
}

SimulatedIndex read_index(std::istream& in, const std::string& source) {
    const auto file = read_records(in, kIndexFormat, source);
    std::vector<Publication> entries;
    std::vector<double> popularity;
    std::vector<std::optional<std::string>> sources;
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
        entries.push_back(std::move(p));
        popularity.push_back(-static_cast<double>(r.get_int("rank")));
        sources.push_back(r.has("source") ? std::optional<std::string>(r.get("source")) : std::nullopt);
    }
    try {
        return {EngineIndex(std::move(entries), popularity), IndexProvenance(std::move(sources))};
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw Error(source + ": " + e.what());
    }
}

}  // namespace qgen
