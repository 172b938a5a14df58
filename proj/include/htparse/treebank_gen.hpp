#pragma once

#include <cstdint>
#include <vector>

#include "htparse/conll.hpp"

namespace htparse {

// Deterministic synthetic treebank: projective labeled trees over a fixed
// ~200-form vocabulary (12 POS tags, 10 relations).  Attachment of a second
// prepositional phrase depends on whether the object noun already absorbed
// one, so correct parses require tracking built structure, not just surface
// word identity.  Same seed => identical corpus.
std::vector<Sentence> generate_treebank(std::uint64_t seed, std::size_t count);

}  // namespace htparse
