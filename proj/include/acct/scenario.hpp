#pragma once

// The line-oriented `.acct` scenario format: parsing into an AST,
// resolution into a Model, and canonical serialization.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "acct/model.hpp"

namespace acctlib {

struct ParseError {
    int line = 1;  // 1-based
    int column = 1;
    std::string expected;
    std::string found;

    std::string to_string() const;
    bool operator==(const ParseError&) const = default;
};

namespace ast {

struct Scenario { std::string name; };
struct Component { std::string id; };
struct Principal { std::string id; PrincipalKind kind; };
struct Being { std::string id; BeingKind kind; };
struct Event { std::string id; EventKind kind; };
struct Account { std::string id; };
struct Action { std::string id; };
struct Cps { Declarations::Cps decl; };
struct Ego { std::string id; };
struct Observation { ObservationFact fact; };
struct HasAccount { std::string account; std::string principal; };
struct Correction { Declarations::Correction decl; };
struct Caused { Declarations::Caused decl; };
struct Structural { StructuralModel model; };

using Node = std::variant<Scenario, Component, Principal, Being, Event, Account, Action,
                          Cps, Ego, Observation, HasAccount, Correction, Caused, Structural>;

}  // namespace ast

struct Statement {
    int line = 1;
    int column = 1;
    ast::Node node;
};

struct ScenarioAst {
    std::string scenario_name;
    std::vector<Statement> statements;
};

struct ParseResult {
    std::optional<ScenarioAst> ast;  // present iff errors is empty
    std::vector<ParseError> errors;
};

// Never throws on arbitrary input; invalid UTF-8 yields a single error and
// malformed lines recover at the next line.
ParseResult parse_scenario(const std::string& text);

// Resolves the AST into a validated Model via build_model.
BuildResult resolve(const ScenarioAst& ast);

// Canonical form: declarations sorted within kind, kinds in fixed order.
// Parsing and resolving the output reproduces the model.
std::string serialize(const Model& model);

}  // namespace acctlib
