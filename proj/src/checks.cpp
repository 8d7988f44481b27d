#include "acct/checks.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "acct/relations.hpp"

namespace acctlib {

namespace {

std::string join(const std::set<std::string>& items) {
    std::string out;
    for (const auto& s : items) {
        if (!out.empty()) out += ", ";
        out += s;
    }
    return out.empty() ? "(none)" : out;
}

bool subset(const std::set<std::string>& a, const std::set<std::string>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

const char* to_string(Severity s) {
    return s == Severity::Error ? "error" : "warning";
}

std::vector<Violation> check_cps(const Model& model, const std::string& cps_id, CheckMode mode) {
    auto it = model.cps().find(cps_id);
    if (it == model.cps().end())
        throw QueryError(QueryError::Kind::UnknownCps, "unknown cps '" + cps_id + "'");
    const CpsDecl& cps = it->second;

    std::vector<Violation> out;
    std::set<std::string> logged;
    for (const auto& obs : cps.logs) logged.insert(obs.component);

    bool cps1_ok = mode == CheckMode::Strict ? logged == cps.components
                                             : subset(logged, cps.components);
    if (!cps1_ok)
        out.push_back({"CPS-1", Severity::Error, {cps_id},
                       "components in logs {" + join(logged) + "} do not match system {" +
                           join(cps.components) + "}"});

    if (cps.components.empty() || cps.principals.empty() || cps.setups.empty())
        out.push_back({"CPS-2", Severity::Error, {cps_id},
                       "system, principals and setups must all be non-empty"});

    std::set<std::string> setup_principals;
    std::set<std::string> setup_components;
    for (const auto& [c, p] : cps.setups) {
        setup_components.insert(c);
        setup_principals.insert(p);
    }
    if (!subset(setup_principals, cps.principals))
        out.push_back({"CPS-3", Severity::Error, {cps_id},
                       "setup principals {" + join(setup_principals) +
                           "} are not all cps principals"});

    bool cps4_ok = mode == CheckMode::Strict ? setup_components == cps.components
                                             : subset(cps.components, setup_components);
    if (!cps4_ok)
        out.push_back({"CPS-4", Severity::Error, {cps_id},
                       "setup domain {" + join(setup_components) + "} does not match system {" +
                           join(cps.components) + "}"});
    return out;
}

std::vector<Violation> check_sts(const Model& model, CheckMode mode) {
    (void)mode;
    const StsDecl& sts = model.sts();
    std::vector<Violation> out;
    if (!sts.has_ego()) {
        out.push_back({"STS-MISSING", Severity::Error, {},
                       "no ego cps is declared; the sts is empty"});
        return out;
    }

    std::set<std::string> foreign(sts.foreign.begin(), sts.foreign.end());
    if (foreign.size() != sts.foreign.size())
        out.push_back({"STS-0", Severity::Error, {}, "foreign cps ids are not unique"});
    if (foreign.contains(sts.ego))
        out.push_back({"STS-1", Severity::Error, {sts.ego},
                       "the ego cps appears among the foreign cps"});

    const CpsDecl& ego = model.cps().at(sts.ego);
    if (!subset(ego.principals, sts.principals))
        out.push_back({"STS-2", Severity::Error, {sts.ego},
                       "ego principals {" + join(ego.principals) +
                           "} are not all sts principals"});
    for (const auto& id : foreign) {
        auto it = model.cps().find(id);
        if (it == model.cps().end()) continue;  // caught at build time
        if (!subset(it->second.principals, sts.principals))
            out.push_back({"STS-3", Severity::Error, {id},
                           "foreign cps principals {" + join(it->second.principals) +
                               "} are not all sts principals"});
    }
    return out;
}

std::vector<Violation> check_am(const Model& model, CheckMode mode) {
    const std::set<std::string>& accounts = model.am_accounts();
    std::vector<Violation> out;

    auto log_accounts = [](const CpsDecl& cps) {
        std::set<std::string> accs;
        for (const auto& obs : cps.logs) accs.insert(obs.account);
        return accs;
    };

    const StsDecl& sts = model.sts();
    if (sts.has_ego()) {
        auto ego_accs = log_accounts(model.cps().at(sts.ego));
        if (!subset(ego_accs, accounts))
            out.push_back({"AM-1", Severity::Error, {sts.ego},
                           "ego log accounts {" + join(ego_accs) +
                               "} are not all mechanism accounts"});
        for (const auto& id : sts.foreign) {
            auto it = model.cps().find(id);
            if (it == model.cps().end()) continue;
            auto accs = log_accounts(it->second);
            if (!subset(accs, accounts))
                out.push_back({"AM-2", Severity::Error, {id},
                               "foreign cps log accounts {" + join(accs) +
                                   "} are not all mechanism accounts"});
        }
    }

    std::set<std::string> known;  // accounts appearing in hasAccount
    for (const auto& [a, p] : model.has_account()) known.insert(a);
    if (!subset(known, accounts))
        out.push_back({"AM-3", Severity::Error, {},
                       "hasAccount mentions accounts {" + join(known) +
                           "} outside the mechanism accounts"});
    // Strict-subset reading: some account must stay outside hasAccount.
    if (subset(accounts, known))
        out.push_back({"AM-4", Severity::Warning, {},
                       "every mechanism account appears in hasAccount; known accounts "
                       "are not a strict subset"});

    if (model.declared_missed_by_ego() && sts.has_ego()) {
        auto computed = missed_by_ego(model);
        std::set<std::string> recomputed(computed.begin(), computed.end());
        if (recomputed != *model.declared_missed_by_ego())
            out.push_back({"AM-5", Severity::Error, {},
                           "declared missedByEgo {" + join(*model.declared_missed_by_ego()) +
                               "} differs from the recomputed set {" + join(recomputed) + "}"});
    }

    if (mode == CheckMode::Strict) {
        // Observation must be functional on (event, component).
        std::map<std::pair<std::string, std::string>, std::set<std::string>> by_key;
        for (const auto& obs : model.observations())
            by_key[{obs.event, obs.component}].insert(obs.account);
        for (const auto& [key, accs] : by_key)
            if (accs.size() > 1)
                out.push_back({"OBS-1", Severity::Warning, {key.first, key.second},
                               "observation (" + key.first + ", " + key.second +
                                   ") is recorded in several accounts {" + join(accs) + "}"});
    }
    return out;
}

std::vector<Violation> check_all(const Model& model, CheckMode mode) {
    std::vector<Violation> out;

    std::set<std::string> checked;
    const StsDecl& sts = model.sts();
    if (sts.has_ego()) checked.insert(sts.ego);
    for (const auto& id : sts.foreign)
        if (model.cps().contains(id)) checked.insert(id);
    for (const auto& id : checked) {
        auto vs = check_cps(model, id, mode);
        out.insert(out.end(), vs.begin(), vs.end());
    }

    auto sts_vs = check_sts(model, mode);
    out.insert(out.end(), sts_vs.begin(), sts_vs.end());
    auto am_vs = check_am(model, mode);
    out.insert(out.end(), am_vs.begin(), am_vs.end());

    std::stable_sort(out.begin(), out.end(), [](const Violation& a, const Violation& b) {
        if (a.rule != b.rule) return a.rule < b.rule;
        return a.subjects < b.subjects;
    });
    return out;
}

}  // namespace acctlib
