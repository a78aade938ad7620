#pragma once

#include <random>
#include <string>
#include <vector>

#include "sfconj/parse.hpp"
#include "sfconj/words.hpp"

namespace testutil {

inline sfconj::Word W(const sfconj::Alphabet& a, const std::string& text) {
  return sfconj::parse_word(text, a);
}

/// Random word, not necessarily reduced.
inline sfconj::Word random_word(std::size_t rank, std::size_t length, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, 2 * rank - 1);
  std::vector<sfconj::Letter> out;
  for (std::size_t i = 0; i < length; ++i) {
    const std::size_t k = pick(rng);
    out.push_back({static_cast<std::uint32_t>(k / 2), k % 2 == 1});
  }
  return sfconj::Word(std::move(out));
}

inline std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace testutil
