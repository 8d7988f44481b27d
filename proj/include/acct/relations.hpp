#pragma once

// Derived relations over a model: informed, constructed, responsible,
// and the ego system's sensing blind spot. All results are sorted sets.

#include <string>
#include <vector>

#include "acct/model.hpp"

namespace acctlib {

// Principals holding an account in which some event about the component is
// recorded.
std::vector<std::string> informed(const Model& model, const std::string& component);

// The principal that configured the component (at most one).
std::vector<std::string> constructed(const Model& model, const std::string& component);

// Principals informed about the component that also hold a correction action
// for it.
std::vector<std::string> responsible(const Model& model, const std::string& component);

// Declared events absent from the ego CPS's own logs. Throws QueryError with
// kind MissingSts when no ego is declared.
std::vector<std::string> missed_by_ego(const Model& model);

}  // namespace acctlib
