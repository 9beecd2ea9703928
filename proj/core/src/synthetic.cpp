#include "qgen/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "qgen/random.hpp"
#include "qgen/text.hpp"

namespace qgen {

namespace {

// clang-format off
constexpr std::array kVocabulary = {
    "data", "query", "database", "systems", "web", "efficient", "learning", "mining", "processing", "management",
    "search", "model", "approach", "analysis", "framework", "distributed", "information", "networks", "xml",
    "queries", "optimization", "evaluation", "semantic", "integration", "algorithms", "large", "scalable",
    "index", "retrieval", "graph", "streams", "matching", "adaptive", "parallel", "clustering", "design",
    "schema", "performance", "efficiently", "dynamic", "mobile", "probabilistic", "fast", "knowledge",
    "techniques", "transactions", "storage", "applications", "discovery", "ranking", "spatial", "services",
    "peer", "similarity", "incremental", "patterns", "structures", "support", "time", "estimation", "online",
    "relational", "architecture", "sensor", "views", "uncertain", "frequent", "objects", "keyword", "top",
    "joins", "top-k", "quality", "engine", "caching", "context", "detection", "classification", "workflow",
    "temporal", "language", "aware", "continuous", "sampling", "compression", "entity", "resolution",
    "privacy", "preserving", "cost", "based", "access", "control", "views", "federated", "workload",
    "benchmark", "tuning", "automatic", "mapping", "ontology", "warehouse", "olap", "cube", "aggregation",
    "histograms", "selectivity", "cardinality", "plans", "execution", "concurrency", "recovery", "logging",
    "replication", "consistency", "cloud", "mapreduce", "hadoop", "columnar", "memory", "main", "flash",
    "hardware", "multicore", "gpu", "vectorized", "compilation", "code", "generation", "declarative",
    "programming", "datalog", "recursive", "rules", "constraints", "dependencies", "functional", "inference",
    "reasoning", "uncertainty", "lineage", "provenance", "annotation", "curation", "cleaning", "duplicate",
    "record", "linkage", "deduplication", "fusion", "conflicts", "trust", "reputation", "social", "media",
    "blogs", "tagging", "folksonomies", "recommendation", "collaborative", "filtering", "personalized",
    "user", "preferences", "skyline", "nearest", "neighbor", "high", "dimensional", "metric", "space",
    "trees", "hashing", "bloom", "filters", "sketches", "approximate", "answering", "synopses", "wavelets",
    "sliding", "windows", "event", "complex", "publish", "subscribe", "routing", "overlay", "gossip",
    "protocols", "wireless", "energy", "trajectories", "moving", "location", "road", "geographic",
    "multimedia", "image", "video", "audio", "feature", "extraction", "text", "documents", "summarization",
    "question", "natural", "interfaces", "visual", "exploration", "visualization", "interactive", "browsing",
    "faceted", "navigation", "deep", "hidden", "crawling", "crawler", "focused", "link", "pagerank", "spam",
    "hypertext", "ranking", "relevance", "feedback", "expansion", "evaluation", "metrics", "test",
    "collections", "inverted", "files", "posting", "lists", "string", "sequence", "alignment", "biological",
    "genomic", "protein", "scientific", "experiments", "simulation", "sensor", "monitoring", "anomaly",
    "outlier", "fraud", "security", "authentication", "encryption", "secure", "multiparty", "outsourced",
    "verification", "integrity", "auditing", "compliance", "policies", "enterprise", "business", "process",
    "modeling", "uml", "conceptual", "entity-relationship", "object-oriented", "types", "algebra",
    "calculus", "semantics", "complexity", "bounds", "lower", "decidability", "containment", "equivalence",
    "rewriting", "views", "materialized", "maintenance", "materialization", "partitioning", "sharding",
    "load", "balancing", "scheduling", "resource", "allocation", "elastic", "virtualization", "grid",
    "computing", "service", "oriented", "composition", "mashups", "wrappers", "extraction", "tables",
    "spreadsheets", "lists", "forms", "generators", "generator", "objects", "versioning", "evolution",
    "migration", "legacy", "reverse", "engineering", "metadata", "repository", "catalog", "registry",
    "lineage", "sessions", "logs", "usage", "traffic", "prediction", "forecasting", "regression", "bayesian",
    "markov", "random", "walks", "spectral", "kernel", "support", "vector", "machines", "neural",
    "decision", "ensemble", "boosting", "active", "semi-supervised", "transfer", "multi-task", "labeling",
    "crowdsourcing", "games", "incentives", "auctions", "markets", "pricing", "economics", "mechanism",
    "theory", "logic", "proof", "verification", "testing", "debugging", "explanation", "why-not",
    "sensitivity", "robust", "fault", "tolerance", "availability", "durability", "snapshot", "isolation",
    "locking", "optimistic", "multiversion", "timestamp", "ordering", "commit", "consensus", "paxos",
    "byzantine", "blockchain", "ledger", "hierarchical", "nested", "semistructured", "json", "rdf",
    "sparql", "linked", "open", "wiki", "encyclopedia", "taxonomy", "hierarchies", "categories", "labels",
    "names", "people", "expert", "finding", "citation", "bibliographic", "digital", "libraries", "archives",
    "preservation", "scholarly", "publications", "authors", "venues", "conferences", "journals", "trends",
};

constexpr std::array kFirstNames = {
    "Alice", "Andreas", "Anna", "Boris", "Carla", "Chen", "Daniel", "David", "Elena", "Erhard", "Eva",
    "Felix", "Fatima", "Georg", "Hana", "Hiroshi", "Ines", "Ivan", "Jakob", "Jana", "Jun", "Karl", "Kim",
    "Lars", "Laura", "Li", "Luis", "Maria", "Marco", "Mei", "Michael", "Nadia", "Nils", "Olga", "Omar",
    "Paul", "Petra", "Qing", "Rahul", "Rosa", "Sanjay", "Sara", "Stefan", "Tarek", "Thomas", "Ulrike",
    "Uwe", "Vera", "Victor", "Wei", "Wolfgang", "Xin", "Yuki", "Yusuf", "Zoe", "Zhang", "Amir", "Bianca",
    "Cem", "Dario", "Emma", "Frank", "Greta", "Hugo", "Ida", "Jonas", "Katrin", "Leon", "Mia", "Noah",
    "Oskar", "Pia", "Quentin", "Rita", "Sven", "Tina", "Ugo", "Vanessa", "Willem", "Yara",
};

constexpr std::array kSyllables = {
    "ber", "ka", "lin", "mo", "ra", "sen", "to", "vi", "dor", "gan", "hel", "jun", "mar", "nov", "pet",
    "quin", "ros", "sto", "wal", "zel", "an", "el", "ur", "is", "ok", "ba", "ce", "di", "fu", "go",
    "ha", "ki", "lu", "ne", "pa", "ri", "su", "ta", "we", "ya",
};

constexpr std::array kSurnameSuffix = {"", "", "", "er", "son", "ski", "mann", "ez", "ova", "ini", "berg", "sen"};

constexpr std::array kConferences = {
    "VLDB", "SIGMOD Conference", "ICDE", "EDBT", "CIKM", "KDD", "WWW", "SIGIR", "ICDM", "PODS", "DASFAA",
    "DEXA", "BTW", "ER", "CAiSE", "WISE", "ECIR", "ICDT", "SSDBM", "WebDB", "IIWeb", "CIDR", "JCDL", "SDM",
};

constexpr std::array kJournals = {
    "VLDB J.", "ACM Trans. Database Syst.", "IEEE Trans. Knowl. Data Eng.", "Inf. Syst.", "SIGMOD Record",
    "Data Knowl. Eng.", "Datenbank-Spektrum", "World Wide Web", "Inf. Retr.", "J. Web Sem.",
};

constexpr std::array kConnectors = {"of", "for", "in", "on", "with", "and", "to", "the", "a", "using", "via", "over", "from"};
// clang-format on

constexpr int kLastYear = 2008;
constexpr int kFirstYear = 1980;

std::string capitalize(std::string word) {
    if (!word.empty() && word[0] >= 'a' && word[0] <= 'z') word[0] = static_cast<char>(word[0] - 'a' + 'A');
    for (std::size_t i = 1; i + 1 < word.size(); ++i) {
        if (word[i] == '-' && word[i + 1] >= 'a' && word[i + 1] <= 'z') word[i + 1] = static_cast<char>(word[i + 1] - 'a' + 'A');
    }
    return word;
}

std::vector<double> zipf_weights(std::size_t n, double exponent) {
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = 1.0 / std::pow(static_cast<double>(i + 1), exponent);
    return w;
}

struct Author {
    std::string name;
};

std::vector<Author> make_authors(std::size_t count, Rng& rng) {
    std::uniform_int_distribution<std::size_t> first(0, kFirstNames.size() - 1);
    std::uniform_int_distribution<std::size_t> syl(0, kSyllables.size() - 1);
    std::uniform_int_distribution<std::size_t> suffix(0, kSurnameSuffix.size() - 1);
    std::uniform_int_distribution<int> syllable_count(2, 3);
    std::unordered_set<std::string> used_last;
    std::vector<Author> authors;
    authors.reserve(count);
    while (authors.size() < count) {
        std::string last;
        const int n = syllable_count(rng);
        for (int i = 0; i < n; ++i) last += kSyllables[syl(rng)];
        last += kSurnameSuffix[suffix(rng)];
        if (!used_last.insert(last).second) continue;
        authors.push_back({std::string(kFirstNames[first(rng)]) + " " + capitalize(last)});
    }
    return authors;
}

struct Volume {
    std::string venue;
    int year;
    std::size_t size;
};

std::vector<Volume> make_volumes(std::size_t total, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::exponential_distribution<double> age(1.0 / 6.0);
    std::uniform_int_distribution<std::size_t> conference(0, kConferences.size() - 1);
    std::uniform_int_distribution<std::size_t> journal(0, kJournals.size() - 1);
    std::set<std::pair<std::string, int>> used;
    std::vector<Volume> volumes;
    std::size_t assigned = 0;
    while (assigned < total) {
        const bool is_journal = unit(rng) < 0.3;
        const int year = std::max(kFirstYear, kLastYear - static_cast<int>(age(rng)));
        std::string venue;
        if (is_journal) {
            const std::size_t j = journal(rng);
            // Journals count volumes from a per-journal start year.
            venue = std::string(kJournals[j]) + " Vol. " + std::to_string(year - 1975 + static_cast<int>(j));
        } else {
            venue = std::string(kConferences[conference(rng)]) + " " + std::to_string(year);
        }
        if (!used.insert({venue, year}).second) continue;
        const auto size = static_cast<std::size_t>(std::lround(8.0 * std::pow(150.0 / 8.0, unit(rng))));
        const std::size_t take = std::min(size, total - assigned);
        volumes.push_back({std::move(venue), year, take});
        assigned += take;
    }
    return volumes;
}

std::vector<std::string> vocabulary() {
    std::vector<std::string> words;
    std::unordered_set<std::string> seen;
    for (const char* w : kVocabulary) {
        if (seen.insert(w).second) words.emplace_back(w);
    }
    return words;
}

std::string make_title(Rng& rng, const std::vector<std::string>& vocab,
                       std::discrete_distribution<std::size_t>& word_pick) {
    static constexpr std::array<int, 5> kContentWeights = {3, 4, 4, 3, 2};  // 3..7 content words
    std::discrete_distribution<int> content_count(kContentWeights.begin(), kContentWeights.end());
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> connector(0, kConnectors.size() - 1);

    const int n = 3 + content_count(rng);
    std::vector<std::string> words;
    std::set<std::string> seen;
    while (static_cast<int>(words.size()) < n) {
        std::string w = vocab[word_pick(rng)];
        if (seen.insert(w).second) words.push_back(std::move(w));
    }

    std::string title;
    const double prefix = unit(rng);
    if (prefix < 0.08) {
        title = "A ";
    } else if (prefix < 0.14) {
        title = "On ";
    } else if (prefix < 0.18) {
        title = "The ";
    }
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i > 0) {
            title += ' ';
            if (unit(rng) < 0.3) {
                title += kConnectors[connector(rng)];
                title += ' ';
            }
        }
        title += capitalize(words[i]);
        if (i + 1 == words.size() / 2 && unit(rng) < 0.12) title += ':';
    }
    return title;
}

}  // namespace

Corpus generate_corpus(std::size_t size, std::uint64_t seed) {
    Rng rng(split_seed(seed, "corpus"));
    const std::size_t author_pool = std::max<std::size_t>(20, size * 6 / 10);
    const auto authors = make_authors(author_pool, rng);
    const auto author_weights = zipf_weights(author_pool, 0.7);
    std::discrete_distribution<std::size_t> author_pick(author_weights.begin(), author_weights.end());
    const auto vocab = vocabulary();
    const auto word_weights = zipf_weights(vocab.size(), 0.8);
    std::discrete_distribution<std::size_t> word_pick(word_weights.begin(), word_weights.end());
    static constexpr std::array<int, 5> kAuthorCountWeights = {15, 30, 30, 15, 10};  // 1..5 authors
    std::discrete_distribution<int> author_count(kAuthorCountWeights.begin(), kAuthorCountWeights.end());

    const auto volumes = make_volumes(size, rng);
    std::unordered_set<std::string> used_titles;
    std::vector<Publication> pubs;
    pubs.reserve(size);
    const auto width = std::to_string(size).size();
    for (const auto& volume : volumes) {
        for (std::size_t k = 0; k < volume.size; ++k) {
            Publication p;
            auto number = std::to_string(pubs.size() + 1);
            p.id = "p" + std::string(width > number.size() ? width - number.size() : 0, '0') + number;
            const int n_authors = 1 + author_count(rng);
            std::set<std::size_t> chosen;
            while (static_cast<int>(chosen.size()) < std::min<int>(n_authors, static_cast<int>(author_pool))) {
                const auto a = author_pick(rng);
                if (chosen.insert(a).second) p.authors.push_back(authors[a].name);
            }
            do {
                p.title = make_title(rng, vocab, word_pick);
            } while (!used_titles.insert(normalize_text(p.title)).second);
            p.year = volume.year;
            p.venue = volume.venue;
            pubs.push_back(std::move(p));
        }
    }
    return Corpus(std::move(pubs));
}

}  // namespace qgen
