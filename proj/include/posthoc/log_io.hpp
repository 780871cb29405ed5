#pragma once

#include <string>
#include <vector>

#include "posthoc/types.hpp"

namespace posthoc {

// Line-delimited JSON, one interaction per line. Doubles survive a round
// trip bit-exactly (shortest-roundtrip decimal serialization).
void write_interaction_log(const std::string& path, const std::vector<Interaction>& log);
std::vector<Interaction> read_interaction_log(const std::string& path);

}  // namespace posthoc
