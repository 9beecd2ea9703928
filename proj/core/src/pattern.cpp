#include "qgen/pattern.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "qgen/text.hpp"

namespace qgen {

namespace {

bool window_matches(const std::vector<std::string>& tokens, const std::vector<PatternItem>& pattern) {
    if (pattern.empty() || pattern.size() > tokens.size()) return false;
    for (std::size_t start = 0; start + pattern.size() <= tokens.size(); ++start) {
        bool ok = true;
        for (std::size_t i = 0; i < pattern.size() && ok; ++i) {
            if (pattern[i] && *pattern[i] != tokens[start + i]) ok = false;
        }
        if (ok) return true;
    }
    return false;
}

}  // namespace

TitleContext::TitleContext(const Corpus& corpus) {
    std::set<std::vector<std::string>> seen;
    for (const auto& p : corpus) {
        auto tokens = tokenize(p.title);
        if (tokens.empty() || !seen.insert(tokens).second) continue;
        const auto id = titles_.size();
        for (const auto& t : std::set<std::string>(tokens.begin(), tokens.end())) postings_[t].push_back(id);
        titles_.push_back(std::move(tokens));
    }
}

std::size_t TitleContext::document_frequency(std::string_view token) const {
    const auto it = postings_.find(std::string(token));
    return it == postings_.end() ? 0 : it->second.size();
}

std::size_t TitleContext::count_matches(const std::vector<PatternItem>& pattern, std::size_t limit) const {
    const std::vector<std::size_t>* candidates = nullptr;
    for (const auto& item : pattern) {
        if (!item) continue;
        const auto it = postings_.find(*item);
        if (it == postings_.end()) return 0;
        if (candidates == nullptr || it->second.size() < candidates->size()) candidates = &it->second;
    }
    if (candidates == nullptr) return 0;
    std::size_t count = 0;
    for (auto id : *candidates) {
        if (window_matches(titles_[id], pattern) && ++count >= limit) break;
    }
    return count;
}

std::vector<PatternItem> trim_pattern(std::vector<PatternItem> items) {
    const auto first = std::find_if(items.begin(), items.end(), [](const PatternItem& i) { return i.has_value(); });
    if (first == items.end()) return {};
    const auto last = std::find_if(items.rbegin(), items.rend(), [](const PatternItem& i) { return i.has_value(); });
    return {first, last.base()};
}

GeneratedPattern gen_pattern(std::string_view title, const TitleContext& context) {
    const auto tokens = tokenize(title);
    if (tokens.empty()) throw Error("cannot build a pattern for a title without tokens");

    std::vector<std::size_t> order(tokens.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return context.document_frequency(tokens[a]) < context.document_frequency(tokens[b]);
    });

    std::vector<PatternItem> items(tokens.size());
    for (auto pos : order) {
        items[pos] = tokens[pos];
        auto candidate = trim_pattern(items);
        if (context.count_matches(candidate, 2) == 1) {
            return {SearchValue::make_pattern(std::move(candidate)), false};
        }
    }
    return {SearchValue::make_pattern(std::vector<PatternItem>(tokens.begin(), tokens.end())), true};
}

}  // namespace qgen
