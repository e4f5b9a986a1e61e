#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "madic/geodesics.hpp"
#include "madic/prodense.hpp"
#include "madic/projections.hpp"
#include "madic/word.hpp"

namespace madic {

using json = nlohmann::json;

// Letters as [[index, exponent], ...].
json word_to_json(const Word& w);
Word word_from_json(const json& j);

// {"m": .., "s": .., "word": [[index, exponent], ...]}
json word_record(const GroupParams& params, const Word& w);

struct WordRecord {
  GroupParams params;
  Word word;
};
WordRecord parse_word_record(const json& j);

json witness_to_json(const NormalizationWitness& w);
NormalizationWitness witness_from_json(const GroupParams& params, const json& j);

json report_to_json(const LemmaReport& r);

json transcript_to_json(const Transcript& t);
Transcript transcript_from_json(const json& j);

}  // namespace madic
