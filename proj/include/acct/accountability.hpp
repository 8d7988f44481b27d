#pragma once

// The three formal notions of accountability and their comparison report.

#include <map>
#include <string>
#include <vector>

#include "acct/model.hpp"

namespace acctlib {

// Components about which at least one principal is informed.
std::vector<std::string> hall_accountable(const Model& model);

// Principals informed about the component that are also its responsible
// party or constructor.
std::vector<std::string> lindberg_accountable(const Model& model, const std::string& component);

// Union of responsible(c) over the event's causes. The caller chooses the
// cause source (declared facts or the structural oracle).
std::vector<std::string> raci_accountable(const Model& model, const std::string& event,
                                          const std::vector<std::string>& causes);

struct NotionReport {
    struct RaciEntry {
        bool available = false;
        std::string source;  // "explicit" or "computed", empty when unavailable
        std::vector<std::string> causes;
        std::vector<std::string> principals;

        bool operator==(const RaciEntry&) const = default;
    };
    // One row per component or event, flagging which notions name someone.
    struct Row {
        std::string subject;
        std::string kind;  // "component" or "event"
        std::vector<std::string> notions;
        std::vector<std::string> principals;
        std::string note;

        bool operator==(const Row&) const = default;
    };

    std::vector<std::string> hall;
    std::map<std::string, std::vector<std::string>> lindberg;  // every component
    std::map<std::string, RaciEntry> raci;                     // every event
    std::vector<Row> rows;

    bool operator==(const NotionReport&) const = default;
};

// Evaluates all three notions over the whole model. Missing causal
// information never fails; the affected raci rows are marked unavailable.
NotionReport compare_notions(const Model& model);

}  // namespace acctlib
