#include "qgen/matcher.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

#include "qgen/error.hpp"

namespace qgen {

void MatchConfig::validate() const {
    for (double t : {author_threshold, title_threshold, year_threshold}) {
        if (!(t >= 0.0 && t <= 1.0)) throw Error("match thresholds must lie in [0, 1]");
    }
}

double year_sim(int y1, int y2) {
    const int diff = std::min(std::abs(y1 - y2), 10);
    return static_cast<double>(10 - diff) / 10.0;
}

namespace {

bool names_agree(const PersonName& a, const PersonName& b) {
    if (a.last.empty() || a.last != b.last) return false;
    return a.initial.empty() || b.initial.empty() || a.initial == b.initial;
}

/// Size of a maximum bipartite matching (augmenting paths).
std::size_t max_matching(std::span<const PersonName> a, std::span<const PersonName> b) {
    std::vector<int> owner(b.size(), -1);
    std::vector<char> visited;
    std::function<bool(std::size_t)> augment = [&](std::size_t i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (visited[j] || !names_agree(a[i], b[j])) continue;
            visited[j] = 1;
            if (owner[j] < 0 || augment(static_cast<std::size_t>(owner[j]))) {
                owner[j] = static_cast<int>(i);
                return true;
            }
        }
        return false;
    };
    std::size_t matched = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        visited.assign(b.size(), 0);
        if (augment(i)) ++matched;
    }
    return matched;
}

std::vector<PersonName> parse_names(std::span<const std::string> names) {
    std::vector<PersonName> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(parse_name(n));
    return out;
}

}  // namespace

double author_sim(std::span<const PersonName> a, std::span<const PersonName> b) {
    const auto longer = std::max(a.size(), b.size());
    if (longer == 0) return 0.0;
    return static_cast<double>(max_matching(a, b)) / static_cast<double>(longer);
}

double author_sim(std::span<const std::string> a, std::span<const std::string> b) {
    const auto pa = parse_names(a);
    const auto pb = parse_names(b);
    return author_sim(std::span<const PersonName>(pa), std::span<const PersonName>(pb));
}

std::vector<std::uint64_t> trigram_multiset(std::string_view normalized) {
    const auto cps = decode_utf8(normalized);
    std::vector<std::uint64_t> grams;
    const auto pack = [&](std::size_t i, std::size_t n) {
        std::uint64_t g = 0;
        for (std::size_t k = 0; k < n; ++k) g = (g << 21) | static_cast<std::uint64_t>(cps[i + k] & 0x1FFFFF);
        return g;
    };
    if (cps.empty()) return grams;
    if (cps.size() < 3) {
        // Tag short grams so they never collide with a full trigram.
        grams.push_back((std::uint64_t{1} << 63) | (static_cast<std::uint64_t>(cps.size()) << 42) | pack(0, cps.size()));
        return grams;
    }
    grams.reserve(cps.size() - 2);
    for (std::size_t i = 0; i + 3 <= cps.size(); ++i) grams.push_back(pack(i, 3));
    std::sort(grams.begin(), grams.end());
    return grams;
}

double dice(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    if (a.empty() && b.empty()) return 1.0;
    std::size_t common = 0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            ++i;
        } else if (b[j] < a[i]) {
            ++j;
        } else {
            ++common;
            ++i;
            ++j;
        }
    }
    return 2.0 * static_cast<double>(common) / static_cast<double>(a.size() + b.size());
}

double title_sim(std::string_view a, std::string_view b) {
    const auto na = normalize_text(a);
    const auto nb = normalize_text(b);
    if (na == nb) return 1.0;
    return dice(trigram_multiset(na), trigram_multiset(nb));
}

MatchProfile make_profile(const Publication& pub) {
    MatchProfile p;
    p.year = pub.year;
    p.names = parse_names(pub.authors);
    p.normalized_title = normalize_text(pub.title);
    p.trigrams = trigram_multiset(p.normalized_title);
    return p;
}

std::vector<MatchProfile> make_profiles(std::span<const Publication> pubs) {
    std::vector<MatchProfile> out;
    out.reserve(pubs.size());
    for (const auto& p : pubs) out.push_back(make_profile(p));
    return out;
}

std::vector<std::size_t> MatchMapping::domain() const {
    std::vector<std::size_t> out;
    for (const auto& p : pairs) out.push_back(p.s);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::size_t> MatchMapping::range() const {
    std::vector<std::size_t> out;
    for (const auto& p : pairs) out.push_back(p.t);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

template <class Lookup>
MatchMapping match_impl(std::span<const MatchProfile> s, std::size_t t_size, Lookup t_at, const MatchConfig& config) {
    MatchMapping m;
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = 0; j < t_size; ++j) {
            const MatchProfile& t = t_at(j);
            const double ys = year_sim(s[i].year, t.year);
            if (ys < config.year_threshold) continue;
            const double as = author_sim(s[i].names, t.names);
            if (as < config.author_threshold) continue;
            const double ts = s[i].normalized_title == t.normalized_title ? 1.0 : dice(s[i].trigrams, t.trigrams);
            if (ts < config.title_threshold) continue;
            m.pairs.push_back({i, j, as, ts, ys});
        }
    }
    return m;
}

}  // namespace

MatchMapping match(std::span<const MatchProfile> s, std::span<const MatchProfile> t, const MatchConfig& config) {
    return match_impl(s, t.size(), [&](std::size_t j) -> const MatchProfile& { return t[j]; }, config);
}

MatchMapping match(std::span<const MatchProfile> s, std::span<const MatchProfile* const> t, const MatchConfig& config) {
    return match_impl(s, t.size(), [&](std::size_t j) -> const MatchProfile& { return *t[j]; }, config);
}

MatchMapping match(std::span<const Publication> s, std::span<const Publication> t, const MatchConfig& config) {
    const auto ps = make_profiles(s);
    const auto pt = make_profiles(t);
    return match(ps, pt, config);
}

}  // namespace qgen
