#pragma once

// Core domain types and validated model construction.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace acctlib {

namespace detail {
class Builder;
}

enum class PrincipalKind { Person, LegalEntity };
enum class BeingKind { Human, Animal };
enum class EventKind { System, Environment };

// One recorded observation: the event-about-component appears in the account.
struct ObservationFact {
    std::string event;
    std::string component;
    std::string account;

    auto operator<=>(const ObservationFact&) const = default;
};

// Boolean expression over variable names (and/or/not), used by structural models.
struct BoolExpr {
    enum class Op { Var, Not, And, Or };

    Op op = Op::Var;
    std::string var;              // Op::Var only
    std::vector<BoolExpr> kids;   // Not: 1 child; And/Or: 2 children

    bool operator==(const BoolExpr&) const = default;

    static BoolExpr make_var(std::string name);
    static BoolExpr make_not(BoolExpr e);
    static BoolExpr make_and(BoolExpr a, BoolExpr b);
    static BoolExpr make_or(BoolExpr a, BoolExpr b);
};

// Boolean exogenous variables plus acyclic equations, with mappings from
// variables to the events/components they stand for.
struct StructuralModel {
    std::map<std::string, bool> exogenous;
    std::map<std::string, BoolExpr> equations;
    std::map<std::string, std::string> event_map;      // variable -> event id
    std::map<std::string, std::string> component_map;  // variable -> component id

    bool operator==(const StructuralModel&) const = default;
};

// One cyber-physical system: its components, per-CPS log, principals and setups.
struct CpsDecl {
    std::string id;
    std::set<std::string> components;
    std::set<std::string> principals;
    std::map<std::string, std::string> setups;  // component -> principal
    std::set<ObservationFact> logs;

    bool operator==(const CpsDecl&) const = default;
};

// The socio-technical system: ego CPS, foreign CPS sequence, and the
// surrounding principal/being sets.
struct StsDecl {
    std::string ego;  // empty when no ego is declared
    std::vector<std::string> foreign;
    std::set<std::string> principals;
    std::set<std::string> beings;

    bool has_ego() const { return !ego.empty(); }
    bool operator==(const StsDecl&) const = default;
};

// Raw declaration list consumed by build_model. The parser produces one of
// these from a scenario file; tests and embedders may fill it directly.
struct Declarations {
    struct Correction {
        std::string principal;
        std::string component;
        std::string action;
    };
    struct Caused {
        std::string event;
        std::vector<std::string> components;
    };
    struct Cps {
        std::string id;
        std::vector<std::string> components;
        std::vector<std::string> principals;
        std::vector<std::pair<std::string, std::string>> setups;  // component, principal
        std::vector<ObservationFact> logs;
    };

    std::string scenario_name;
    std::vector<std::string> components;
    std::vector<std::pair<std::string, PrincipalKind>> principals;
    std::vector<std::pair<std::string, BeingKind>> beings;
    std::vector<std::pair<std::string, EventKind>> events;
    std::vector<std::string> accounts;
    std::vector<std::string> actions;
    std::vector<ObservationFact> observations;
    std::vector<std::pair<std::string, std::string>> has_account;  // account, principal
    std::vector<Correction> corrections;
    std::vector<Caused> caused;
    std::vector<Cps> cps;
    std::optional<std::string> ego;
    std::optional<StructuralModel> structural;

    // Programmatic-only refinements; no scenario syntax exists for these.
    // When absent, the mechanism's account scope defaults to all declared
    // accounts and the STS is derived from the cps/ego declarations.
    std::optional<std::set<std::string>> am_accounts;
    std::optional<std::set<std::string>> missed_by_ego;  // declared override, checked by AM-5
    std::optional<StsDecl> sts;
};

struct BuildError {
    enum class Kind {
        UnknownEntity,
        DuplicateDeclaration,
        KindConflict,
        EmptyCausedSet,
        MissingEgo,
        EgoUnknown,
        CyclicModel,
        UnknownVariable,
        TooManyVariables,
    };

    Kind kind;
    std::string name;   // offending identifier
    std::string where;  // context, e.g. "observation event"

    std::string to_string() const;
    bool operator==(const BuildError&) const = default;
};

// Immutable after construction; safe to share across concurrent readers.
class Model {
public:
    const std::string& scenario_name() const { return scenario_name_; }
    const std::set<std::string>& components() const { return components_; }
    const std::map<std::string, PrincipalKind>& principals() const { return principals_; }
    const std::map<std::string, BeingKind>& beings() const { return beings_; }
    const std::map<std::string, EventKind>& events() const { return events_; }
    const std::set<std::string>& accounts() const { return accounts_; }
    const std::set<std::string>& actions() const { return actions_; }

    // Global observation set: top-level observations plus every CPS log entry.
    const std::set<ObservationFact>& observations() const { return observations_; }
    // Only the observations declared outside any cps block.
    const std::set<ObservationFact>& extra_observations() const { return extra_observations_; }

    const std::map<std::string, std::string>& component_configuration() const {
        return component_configuration_;
    }
    const std::set<std::pair<std::string, std::string>>& has_account() const {
        return has_account_;
    }
    const std::map<std::pair<std::string, std::string>, std::string>& correction_actions() const {
        return correction_actions_;
    }
    const std::map<std::string, std::set<std::string>>& caused_facts() const {
        return caused_facts_;
    }

    const std::map<std::string, CpsDecl>& cps() const { return cps_; }
    const StsDecl& sts() const { return sts_; }
    const std::optional<StructuralModel>& structural() const { return structural_; }

    // The accountability mechanism's account scope (declared accounts unless
    // narrowed programmatically).
    const std::set<std::string>& am_accounts() const { return am_accounts_; }
    const std::optional<std::set<std::string>>& declared_missed_by_ego() const {
        return declared_missed_by_ego_;
    }

    bool has_component(const std::string& id) const { return components_.contains(id); }
    bool has_event(const std::string& id) const { return events_.contains(id); }

    bool operator==(const Model&) const = default;

private:
    friend std::variant<Model, std::vector<BuildError>> build_model(const Declarations&);
    friend class detail::Builder;

    std::string scenario_name_;
    std::set<std::string> components_;
    std::map<std::string, PrincipalKind> principals_;
    std::map<std::string, BeingKind> beings_;
    std::map<std::string, EventKind> events_;
    std::set<std::string> accounts_;
    std::set<std::string> actions_;
    std::set<ObservationFact> observations_;
    std::set<ObservationFact> extra_observations_;
    std::map<std::string, std::string> component_configuration_;
    std::set<std::pair<std::string, std::string>> has_account_;
    std::map<std::pair<std::string, std::string>, std::string> correction_actions_;
    std::map<std::string, std::set<std::string>> caused_facts_;
    std::map<std::string, CpsDecl> cps_;
    StsDecl sts_;
    std::optional<StructuralModel> structural_;
    std::set<std::string> am_accounts_;
    std::optional<std::set<std::string>> declared_missed_by_ego_;
};

using BuildResult = std::variant<Model, std::vector<BuildError>>;

// Validates referential integrity and produces an immutable Model.
// On failure returns every error found, not just the first. Deterministic:
// the declaration order never changes the resulting Model.
BuildResult build_model(const Declarations& decls);

// Thrown by query operations on unknown ids or missing structure.
class QueryError : public std::runtime_error {
public:
    enum class Kind {
        UnknownComponent,
        UnknownEvent,
        UnknownCps,
        UnknownVariable,
        MissingSts,
        EventNotMapped,
        EventNotOccurring,
        SearchSpaceTooLarge,
        NoCausalInformation,
    };

    QueryError(Kind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

bool valid_identifier(const std::string& name);

}  // namespace acctlib
