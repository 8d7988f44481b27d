#include "acct/accountability.hpp"

#include <algorithm>
#include <set>

#include "acct/causality.hpp"
#include "acct/relations.hpp"

namespace acctlib {

std::vector<std::string> hall_accountable(const Model& model) {
    std::vector<std::string> result;
    for (const auto& c : model.components())
        if (!informed(model, c).empty()) result.push_back(c);
    return result;
}

std::vector<std::string> lindberg_accountable(const Model& model, const std::string& component) {
    auto in = informed(model, component);
    auto resp = responsible(model, component);
    auto cons = constructed(model, component);
    std::vector<std::string> result;
    for (const auto& p : in) {
        bool is_resp = std::find(resp.begin(), resp.end(), p) != resp.end();
        bool is_cons = std::find(cons.begin(), cons.end(), p) != cons.end();
        if (is_resp || is_cons) result.push_back(p);
    }
    return result;
}

std::vector<std::string> raci_accountable(const Model& model, const std::string& event,
                                          const std::vector<std::string>& causes) {
    if (!model.has_event(event))
        throw QueryError(QueryError::Kind::UnknownEvent, "unknown event '" + event + "'");
    std::set<std::string> result;
    for (const auto& c : causes)
        for (const auto& p : responsible(model, c)) result.insert(p);
    return {result.begin(), result.end()};
}

NotionReport compare_notions(const Model& model) {
    NotionReport report;
    report.hall = hall_accountable(model);
    for (const auto& c : model.components())
        report.lindberg.emplace(c, lindberg_accountable(model, c));

    for (const auto& [event, kind] : model.events()) {
        NotionReport::RaciEntry entry;
        auto causes = explicit_causes(model, event);
        if (causes) {
            entry.source = "explicit";
        } else if (model.structural()) {
            try {
                causes = but_for_causes(*model.structural(), event);
                entry.source = "computed";
            } catch (const QueryError&) {
                // stays unavailable
            }
        }
        if (causes) {
            entry.available = true;
            entry.causes = *causes;
            entry.principals = raci_accountable(model, event, *causes);
        }
        report.raci.emplace(event, std::move(entry));
    }

    auto hall_has = [&](const std::string& c) {
        return std::find(report.hall.begin(), report.hall.end(), c) != report.hall.end();
    };
    for (const auto& c : model.components()) {
        NotionReport::Row row;
        row.subject = c;
        row.kind = "component";
        const auto& lb = report.lindberg.at(c);
        if (hall_has(c)) row.notions.push_back("hall");
        if (!lb.empty()) row.notions.push_back("lindberg");
        row.principals = lb;
        if (hall_has(c) && lb.empty())
            row.note = "hall-accountable via informedness only; no correction or "
                       "configuration ties a principal to it";
        report.rows.push_back(std::move(row));
    }
    for (const auto& [event, entry] : report.raci) {
        NotionReport::Row row;
        row.subject = event;
        row.kind = "event";
        if (entry.available) {
            if (!entry.principals.empty()) row.notions.push_back("raci");
            row.principals = entry.principals;
            // raci prose wants a single accountable party; flag, don't reject
            if (entry.principals.size() > 1)
                row.note = "RACI-UNIQ: more than one raci-accountable principal";
        } else {
            row.note = "unavailable: no causal information";
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace acctlib
