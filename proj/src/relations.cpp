#include "acct/relations.hpp"

#include <set>

namespace acctlib {

namespace {

void require_component(const Model& model, const std::string& component) {
    if (!model.has_component(component))
        throw QueryError(QueryError::Kind::UnknownComponent,
                         "unknown component '" + component + "'");
}

}  // namespace

std::vector<std::string> informed(const Model& model, const std::string& component) {
    require_component(model, component);
    std::set<std::string> result;
    for (const auto& obs : model.observations()) {
        if (obs.component != component) continue;
        for (const auto& [account, principal] : model.has_account())
            if (account == obs.account) result.insert(principal);
    }
    return {result.begin(), result.end()};
}

std::vector<std::string> constructed(const Model& model, const std::string& component) {
    require_component(model, component);
    auto it = model.component_configuration().find(component);
    if (it == model.component_configuration().end()) return {};
    return {it->second};
}

std::vector<std::string> responsible(const Model& model, const std::string& component) {
    require_component(model, component);
    std::vector<std::string> result;
    for (const auto& p : informed(model, component))
        if (model.correction_actions().contains({p, component})) result.push_back(p);
    return result;
}

std::vector<std::string> missed_by_ego(const Model& model) {
    if (!model.sts().has_ego())
        throw QueryError(QueryError::Kind::MissingSts, "no ego cps is declared");
    const CpsDecl& ego = model.cps().at(model.sts().ego);
    std::set<std::string> logged;
    for (const auto& obs : ego.logs) logged.insert(obs.event);
    std::vector<std::string> result;
    for (const auto& [event, kind] : model.events())
        if (!logged.contains(event)) result.push_back(event);
    return result;
}

}  // namespace acctlib
