#pragma once

#include <string>
#include <vector>

#include "modspec/module.hpp"

namespace modspec {

struct CorpusEntry {
  std::string name;
  FgModule module;
};

/// Invariant-factor chains e_1 | … | e_k (k ≤ max_factors, Π e_i ≤ max_order)
/// with every e_i a divisor > 1 of one of `sources`. Includes the empty chain.
std::vector<IntVector> invariant_chains(const std::vector<Int>& sources, std::size_t max_factors, const Int& max_order);

/// The standard corpus: chains from the divisors of {4, 6, 8, 12, 36} with at
/// most three factors and |M| ≤ 256 over Z; the chains with e_t | n over Z/n
/// for n ∈ {4, 6, 12, 36}; the Prüfer groups for p = 2, 3, 5.
std::vector<CorpusEntry> generate_corpus();

/// The finite members of a corpus.
std::vector<CorpusEntry> finite_part(const std::vector<CorpusEntry>& corpus);

}  // namespace modspec
