#pragma once

// The `caused` interface, two ways: pass-through of explicitly declared
// causal facts, and a counterfactual oracle over a boolean structural model.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "acct/model.hpp"

namespace acctlib {

// Declared causal facts for an event, or nullopt when none were declared
// (caused is a partial function). Throws QueryError on unknown events.
std::optional<std::vector<std::string>> explicit_causes(const Model& model,
                                                        const std::string& event);

// Evaluates all variables. Overridden variables take the override value and
// their equations are ignored (intervention semantics).
std::map<std::string, bool> evaluate(const StructuralModel& sm,
                                     const std::map<std::string, bool>& overrides);

// Components whose single counterfactual flip prevents the event.
// Requires the event's variable to hold without intervention.
std::vector<std::string> but_for_causes(const StructuralModel& sm, const std::string& event);

// All inclusion-minimal sets of component-mapped variables whose joint flip
// prevents the event, mapped to component sets, sorted by (size, lexicographic).
std::vector<std::vector<std::string>> minimal_cause_sets(const StructuralModel& sm,
                                                         const std::string& event);

// Combined view used by the CLI `causes` command.
struct CauseResult {
    std::string event;
    std::optional<std::vector<std::string>> explicit_causes;
    std::optional<std::vector<std::string>> computed_causes;  // but-for, when computable
    std::vector<std::vector<std::string>> minimal_sets;       // filled on request
    std::string computed_error;  // why computation was unavailable, if it was
    bool conflict = false;       // explicit and computed both present and differ
};

CauseResult resolve_causes(const Model& model, const std::string& event, bool with_minimal);

}  // namespace acctlib
