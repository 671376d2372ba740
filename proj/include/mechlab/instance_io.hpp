#pragma once

#include <stdexcept>
#include <string>

#include "mechlab/model.hpp"

namespace mechlab {

/// Malformed instance document; message carries "line:column" of the
/// offending byte when the parser can locate it.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Document format: {"candidates": [real, ...],
///                   "agents": [{"id": int, "group": int,
///                               "location": real}, ...]}
/// Slot ids are assigned by sorted candidate position at load time; group
/// ids are normalized to 1..k.
Instance parse_instance(const std::string& json_text);
Instance load_instance(const std::string& path);

/// Serialization round-trips exactly: candidates in slot order, agents in
/// stored order with normalized groups.
std::string instance_to_json(const Instance& inst);
void save_instance(const Instance& inst, const std::string& path);

}  // namespace mechlab
