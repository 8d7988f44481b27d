// Command-line front end: load scenarios, run checks, answer accountability
// queries, emit reports.
//
// Exit codes: 0 success, 1 error-severity violations, 2 input errors,
// 3 insufficient causal/model information, 64 usage.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "acct/accountability.hpp"
#include "acct/causality.hpp"
#include "acct/checks.hpp"
#include "acct/model.hpp"
#include "acct/relations.hpp"
#include "acct/scenario.hpp"

namespace {

using acctlib::Model;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitInput = 2;
constexpr int kExitNoCausalInfo = 3;
constexpr int kExitUsage = 64;

// Reads, parses and resolves a scenario file; on failure prints diagnostics
// to stderr and returns nullopt.
std::optional<Model> load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << path << ": cannot read file\n";
        return std::nullopt;
    }
    std::ostringstream buf;
    buf << in.rdbuf();

    auto parsed = acctlib::parse_scenario(buf.str());
    if (!parsed.ast) {
        for (const auto& e : parsed.errors) std::cerr << path << ": " << e.to_string() << "\n";
        return std::nullopt;
    }
    auto resolved = acctlib::resolve(*parsed.ast);
    if (auto* errs = std::get_if<std::vector<acctlib::BuildError>>(&resolved)) {
        for (const auto& e : *errs) std::cerr << path << ": " << e.to_string() << "\n";
        return std::nullopt;
    }
    return std::get<Model>(resolved);
}

json violations_to_json(const std::vector<acctlib::Violation>& violations) {
    json arr = json::array();
    for (const auto& v : violations) {
        json item;
        item["rule"] = v.rule;
        item["severity"] = acctlib::to_string(v.severity);
        item["subjects"] = v.subjects;
        item["message"] = v.message;
        arr.push_back(std::move(item));
    }
    return arr;
}

void print_violations_text(const std::vector<acctlib::Violation>& violations) {
    for (const auto& v : violations) {
        std::cout << v.rule << " " << acctlib::to_string(v.severity);
        if (!v.subjects.empty()) {
            std::cout << " [";
            for (std::size_t i = 0; i < v.subjects.size(); ++i)
                std::cout << (i ? ", " : "") << v.subjects[i];
            std::cout << "]";
        }
        std::cout << ": " << v.message << "\n";
    }
}

bool has_errors(const std::vector<acctlib::Violation>& violations) {
    return std::any_of(violations.begin(), violations.end(), [](const acctlib::Violation& v) {
        return v.severity == acctlib::Severity::Error;
    });
}

int cmd_validate(const std::string& path, acctlib::CheckMode mode, const std::string& format) {
    auto model = load_model(path);
    if (!model) return kExitInput;
    auto violations = acctlib::check_all(*model, mode);
    if (format == "json") {
        std::cout << violations_to_json(violations).dump(2) << "\n";
    } else {
        print_violations_text(violations);
        if (violations.empty()) std::cout << "no violations\n";
    }
    return has_errors(violations) ? kExitViolations : kExitOk;
}

int cmd_query(const std::string& path, const std::string& notion, const std::string& component,
              const std::string& event, const std::string& format) {
    auto model = load_model(path);
    if (!model) return kExitInput;

    std::vector<std::string> result;
    json subject;
    try {
        if (notion == "hall") {
            result = acctlib::hall_accountable(*model);
        } else if (notion == "lindberg") {
            subject = component;
            result = acctlib::lindberg_accountable(*model, component);
        } else {
            subject = event;
            auto causes = acctlib::resolve_causes(*model, event, false);
            const auto& source = causes.explicit_causes ? causes.explicit_causes
                                                        : causes.computed_causes;
            if (!source) {
                std::cerr << "no causal information for event '" << event << "'\n";
                return kExitNoCausalInfo;
            }
            result = acctlib::raci_accountable(*model, event, *source);
        }
    } catch (const acctlib::QueryError& e) {
        std::cerr << e.what() << "\n";
        return kExitInput;
    }

    if (format == "json") {
        json out;
        out["notion"] = notion;
        out["subject"] = subject;
        out["result"] = result;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << json(result).dump() << "\n";
    }
    return kExitOk;
}

json notions_to_json(const Model& model, const acctlib::NotionReport& report) {
    json out;
    out["hall"] = report.hall;
    json lb = json::object();
    for (const auto& [c, ps] : report.lindberg) lb[c] = ps;
    out["lindberg"] = std::move(lb);
    json raci = json::object();
    for (const auto& [e, entry] : report.raci) {
        json item;
        item["available"] = entry.available;
        if (entry.available) {
            item["source"] = entry.source;
            item["causes"] = entry.causes;
            item["result"] = entry.principals;
        }
        raci[e] = std::move(item);
    }
    out["raci"] = std::move(raci);
    return out;
}

void print_notions_text(const acctlib::NotionReport& report) {
    std::cout << "hall_accountable: " << json(report.hall).dump() << "\n";
    for (const auto& [c, ps] : report.lindberg)
        std::cout << "lindberg_accountable(" << c << "): " << json(ps).dump() << "\n";
    for (const auto& [e, entry] : report.raci) {
        std::cout << "raci_accountable(" << e << "): ";
        if (entry.available)
            std::cout << json(entry.principals).dump() << " (causes " << json(entry.causes).dump()
                      << ", " << entry.source << ")\n";
        else
            std::cout << "unavailable\n";
    }
}

int cmd_report(const std::string& path, acctlib::CheckMode mode, const std::string& format) {
    auto model = load_model(path);
    if (!model) return kExitInput;

    auto violations = acctlib::check_all(*model, mode);
    auto notions = acctlib::compare_notions(*model);

    std::optional<std::vector<std::string>> missed;
    if (model->sts().has_ego()) missed = acctlib::missed_by_ego(*model);

    if (format == "json") {
        json out;
        out["scenario"] = model->scenario_name();
        out["mode"] = mode == acctlib::CheckMode::Strict ? "strict" : "lenient";
        out["violations"] = violations_to_json(violations);
        json informed = json::object(), constructed = json::object(),
             responsible = json::object();
        for (const auto& c : model->components()) {
            informed[c] = acctlib::informed(*model, c);
            constructed[c] = acctlib::constructed(*model, c);
            responsible[c] = acctlib::responsible(*model, c);
        }
        out["informed"] = std::move(informed);
        out["constructed"] = std::move(constructed);
        out["responsible"] = std::move(responsible);
        if (missed) out["missed_by_ego"] = *missed;
        else out["missed_by_ego"] = nullptr;
        out["notions"] = notions_to_json(*model, notions);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "scenario: " << model->scenario_name() << "\n\n";
        std::cout << "violations (" << (mode == acctlib::CheckMode::Strict ? "strict" : "lenient")
                  << "):\n";
        print_violations_text(violations);
        if (violations.empty()) std::cout << "none\n";
        std::cout << "\nderived relations:\n";
        for (const auto& c : model->components()) {
            std::cout << c << ": informed " << json(acctlib::informed(*model, c)).dump()
                      << ", constructed " << json(acctlib::constructed(*model, c)).dump()
                      << ", responsible " << json(acctlib::responsible(*model, c)).dump() << "\n";
        }
        std::cout << "\nmissed_by_ego: "
                  << (missed ? json(*missed).dump() : std::string("unavailable (no ego cps)"))
                  << "\n\nnotions:\n";
        print_notions_text(notions);
    }
    return has_errors(violations) ? kExitViolations : kExitOk;
}

int cmd_causes(const std::string& path, const std::string& event, bool minimal,
               const std::string& format) {
    auto model = load_model(path);
    if (!model) return kExitInput;

    acctlib::CauseResult result;
    try {
        result = acctlib::resolve_causes(*model, event, minimal);
    } catch (const acctlib::QueryError& e) {
        std::cerr << e.what() << "\n";
        return kExitInput;
    }
    if (!result.explicit_causes && !result.computed_causes) {
        std::cerr << "no causal information for event '" << event << "'";
        if (!result.computed_error.empty()) std::cerr << " (" << result.computed_error << ")";
        std::cerr << "\n";
        return kExitNoCausalInfo;
    }

    if (format == "json") {
        json out;
        out["event"] = event;
        out["explicit"] = result.explicit_causes ? json(*result.explicit_causes) : json(nullptr);
        out["computed"] = result.computed_causes ? json(*result.computed_causes) : json(nullptr);
        if (minimal) out["minimal"] = result.minimal_sets;
        out["conflict"] = result.conflict;
        std::cout << out.dump(2) << "\n";
    } else {
        if (result.explicit_causes)
            std::cout << "explicit: " << json(*result.explicit_causes).dump() << "\n";
        if (result.computed_causes)
            std::cout << "computed: " << json(*result.computed_causes).dump() << "\n";
        if (minimal) std::cout << "minimal: " << json(result.minimal_sets).dump() << "\n";
        if (result.conflict)
            std::cout << "warning CAUSE-CONFLICT: explicit and computed causes disagree\n";
    }
    return kExitOk;
}

int cmd_compare(const std::string& path, const std::string& format) {
    auto model = load_model(path);
    if (!model) return kExitInput;
    auto report = acctlib::compare_notions(*model);
    if (format == "json") {
        json out = notions_to_json(*model, report);
        json rows = json::array();
        for (const auto& row : report.rows) {
            json r;
            r["subject"] = row.subject;
            r["kind"] = row.kind;
            r["notions"] = row.notions;
            r["principals"] = row.principals;
            r["note"] = row.note;
            rows.push_back(std::move(r));
        }
        out["rows"] = std::move(rows);
        std::cout << out.dump(2) << "\n";
    } else {
        print_notions_text(report);
        std::cout << "\n";
        for (const auto& row : report.rows) {
            std::cout << row.kind << " " << row.subject << ": notions "
                      << json(row.notions).dump() << ", principals "
                      << json(row.principals).dump();
            if (!row.note.empty()) std::cout << " -- " << row.note;
            std::cout << "\n";
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"accountability model engine"};
    app.require_subcommand(1);

    std::string file, format = "text", notion, component, event;
    bool strict = false, minimal = false;

    auto add_common = [&](CLI::App* cmd, bool with_mode) {
        cmd->add_option("file", file, "scenario file (.acct)")->required();
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"text", "json"}));
        if (with_mode) cmd->add_flag("--strict", strict, "use strict schema checking");
    };

    auto* validate = app.add_subcommand("validate", "run the schema checks");
    add_common(validate, true);

    auto* query = app.add_subcommand("query", "evaluate one accountability notion");
    add_common(query, false);
    query->add_option("--notion", notion, "hall|lindberg|raci")
        ->required()
        ->check(CLI::IsMember({"hall", "lindberg", "raci"}));
    query->add_option("--component", component, "component id (lindberg)");
    query->add_option("--event", event, "event id (raci)");

    auto* report = app.add_subcommand("report", "emit the full report");
    add_common(report, true);

    auto* causes = app.add_subcommand("causes", "explicit and computed causes of an event");
    add_common(causes, false);
    causes->add_option("--event", event, "event id")->required();
    causes->add_flag("--minimal", minimal, "also compute minimal cause sets");

    auto* compare = app.add_subcommand("compare", "compare the three notions");
    add_common(compare, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    const acctlib::CheckMode mode = strict ? acctlib::CheckMode::Strict : acctlib::CheckMode::Lenient;

    if (validate->parsed()) return cmd_validate(file, mode, format);
    if (query->parsed()) {
        // selector flags must match the notion
        if (notion == "hall" && (!component.empty() || !event.empty())) {
            std::cerr << "usage: --notion hall takes no selector\n";
            return kExitUsage;
        }
        if (notion == "lindberg" && (component.empty() || !event.empty())) {
            std::cerr << "usage: --notion lindberg requires --component and no --event\n";
            return kExitUsage;
        }
        if (notion == "raci" && (event.empty() || !component.empty())) {
            std::cerr << "usage: --notion raci requires --event and no --component\n";
            return kExitUsage;
        }
        return cmd_query(file, notion, component, event, format);
    }
    if (report->parsed()) return cmd_report(file, mode, format);
    if (causes->parsed()) return cmd_causes(file, event, minimal, format);
    if (compare->parsed()) return cmd_compare(file, format);
    return kExitUsage;
}
