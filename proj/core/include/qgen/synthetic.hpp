#pragma once

#include <cstddef>
#include <cstdint>

#include "qgen/corpus.hpp"

namespace qgen {

/// Generates a bibliographic corpus standing in for a DBLP extract.
///
/// Authors are drawn with Zipf-like productivity (exponent 0.7) from a pool of
/// 0.6 * size people with distinct last names. Title words follow a Zipf law
/// (exponent 0.8) over a fixed computer-science vocabulary; every title holds
/// 3-7 content words and titles are pairwise distinct after normalization.
/// Venues come in (venue, year) volumes whose sizes are log-uniform in [8, 150].
Corpus generate_corpus(std::size_t size, std::uint64_t seed);

}  // namespace qgen
