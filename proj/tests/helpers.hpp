#pragma once

// Shared test utilities: bundled-scenario loading and random model/structural
// generators used by the property and acceptance suites.

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "acct/model.hpp"
#include "acct/scenario.hpp"

namespace testutil {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::string scenario_path(const std::string& name) {
    return std::string(ACCT_SCENARIO_DIR) + "/" + name;
}

inline acctlib::Model load_scenario(const std::string& name) {
    auto parsed = acctlib::parse_scenario(read_file(scenario_path(name)));
    if (!parsed.ast) throw std::runtime_error(name + ": parse failed");
    auto resolved = acctlib::resolve(*parsed.ast);
    if (auto* errs = std::get_if<std::vector<acctlib::BuildError>>(&resolved))
        throw std::runtime_error(name + ": " + (*errs)[0].to_string());
    return std::get<acctlib::Model>(resolved);
}

inline acctlib::Model must_build(const acctlib::Declarations& d) {
    auto result = acctlib::build_model(d);
    if (auto* errs = std::get_if<std::vector<acctlib::BuildError>>(&result))
        throw std::runtime_error("build failed: " + (*errs)[0].to_string());
    return std::get<acctlib::Model>(result);
}

// -------------------------------------------------------------- generators

using Rng = std::mt19937;

inline int uniform(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool chance(Rng& rng, double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
    return items[uniform(rng, 0, static_cast<int>(items.size()) - 1)];
}

// Random model over <= 6 entities per kind; relations only (no cps blocks).
// Used by the definitional-invariant suite.
inline acctlib::Declarations random_relational_decls(Rng& rng) {
    acctlib::Declarations d;
    d.scenario_name = "generated";
    auto names = [&](const char* prefix, int n) {
        std::vector<std::string> out;
        for (int i = 0; i < n; ++i) out.push_back(std::string(prefix) + std::to_string(i));
        return out;
    };
    auto components = names("C", uniform(rng, 1, 6));
    auto principals = names("P", uniform(rng, 1, 6));
    auto events = names("E", uniform(rng, 1, 6));
    auto accounts = names("A", uniform(rng, 1, 6));
    auto actions = names("ACT", uniform(rng, 1, 3));

    d.components = components;
    for (const auto& p : principals)
        d.principals.emplace_back(p, testutil::chance(rng, 0.5) ? acctlib::PrincipalKind::Person
                                                                : acctlib::PrincipalKind::LegalEntity);
    for (const auto& e : events)
        d.events.emplace_back(e, chance(rng, 0.7) ? acctlib::EventKind::System
                                                  : acctlib::EventKind::Environment);
    d.accounts = accounts;
    d.actions = actions;

    int n_obs = uniform(rng, 0, 8);
    for (int i = 0; i < n_obs; ++i)
        d.observations.push_back(
            {pick(rng, events), pick(rng, components), pick(rng, accounts)});
    int n_has = uniform(rng, 0, 6);
    for (int i = 0; i < n_has; ++i)
        d.has_account.emplace_back(pick(rng, accounts), pick(rng, principals));
    int n_corr = uniform(rng, 0, 5);
    for (int i = 0; i < n_corr; ++i) {
        std::string p = pick(rng, principals), c = pick(rng, components);
        // keep the correction map functional
        bool dup = false;
        for (const auto& corr : d.corrections)
            if (corr.principal == p && corr.component == c) dup = true;
        if (!dup) d.corrections.push_back({p, c, pick(rng, actions)});
    }
    for (const auto& e : events) {
        if (!chance(rng, 0.4)) continue;
        acctlib::Declarations::Caused cf;
        cf.event = e;
        int n = uniform(rng, 1, static_cast<int>(components.size()));
        for (int i = 0; i < n; ++i) cf.components.push_back(pick(rng, components));
        d.caused.push_back(cf);
    }
    return d;
}

inline acctlib::BoolExpr random_expr(Rng& rng, const std::vector<std::string>& vars, int depth) {
    if (depth <= 0 || chance(rng, 0.4)) return acctlib::BoolExpr::make_var(pick(rng, vars));
    switch (uniform(rng, 0, 2)) {
        case 0:
            return acctlib::BoolExpr::make_not(random_expr(rng, vars, depth - 1));
        case 1:
            return acctlib::BoolExpr::make_and(random_expr(rng, vars, depth - 1),
                                            random_expr(rng, vars, depth - 1));
        default:
            return acctlib::BoolExpr::make_or(random_expr(rng, vars, depth - 1),
                                           random_expr(rng, vars, depth - 1));
    }
}

// Random full model including cps blocks, ego and sometimes a structural
// block; exercises every serializable feature for the round-trip property.
inline acctlib::Declarations random_full_decls(Rng& rng) {
    acctlib::Declarations d = random_relational_decls(rng);

    int n_cps = uniform(rng, 0, 3);
    std::vector<std::string> cps_ids;
    for (int i = 0; i < n_cps; ++i) {
        acctlib::Declarations::Cps cps;
        cps.id = "CPS" + std::to_string(i);
        cps_ids.push_back(cps.id);
        int nc = uniform(rng, 0, static_cast<int>(d.components.size()));
        for (int k = 0; k < nc; ++k) cps.components.push_back(pick(rng, d.components));
        int np = uniform(rng, 0, static_cast<int>(d.principals.size()));
        for (int k = 0; k < np; ++k) cps.principals.push_back(pick(rng, d.principals).first);
        for (const auto& c : cps.components)
            if (chance(rng, 0.7)) {
                std::string p = pick(rng, d.principals).first;
                bool dup = false;
                for (const auto& [sc, sp] : cps.setups)
                    if (sc == c) dup = true;
                for (const auto& other : d.cps)
                    for (const auto& [sc, sp] : other.setups)
                        if (sc == c && sp != p) dup = true;
                if (!dup) cps.setups.emplace_back(c, p);
            }
        int nl = uniform(rng, 0, 3);
        for (int k = 0; k < nl; ++k) {
            std::vector<std::string> events;
            for (const auto& [e, kind] : d.events) events.push_back(e);
            cps.logs.push_back({pick(rng, events), pick(rng, d.components),
                                pick(rng, d.accounts)});
        }
        d.cps.push_back(std::move(cps));
    }
    if (!cps_ids.empty()) d.ego = pick(rng, cps_ids);

    if (chance(rng, 0.4)) {
        acctlib::StructuralModel sm;
        int n_vars = uniform(rng, 1, 8);
        std::vector<std::string> vars;
        for (int i = 0; i < n_vars; ++i) vars.push_back("V" + std::to_string(i));
        for (int i = 0; i < n_vars; ++i) {
            // reference only earlier variables, so the model stays acyclic
            if (i == 0 || chance(rng, 0.4)) {
                sm.exogenous[vars[i]] = chance(rng, 0.5);
            } else {
                std::vector<std::string> earlier(vars.begin(), vars.begin() + i);
                sm.equations[vars[i]] = random_expr(rng, earlier, 2);
            }
        }
        for (const auto& v : vars) {
            if (chance(rng, 0.4)) sm.component_map[v] = pick(rng, d.components);
            if (chance(rng, 0.2)) sm.event_map[v] = d.events[0].first;
        }
        d.structural = std::move(sm);
    }
    return d;
}

// Random acyclic structural model with <= max_vars variables, every variable
// component-mapped with probability ~0.6 and the last variable as the event.
inline acctlib::StructuralModel random_structural(Rng& rng, int max_vars,
                                               const std::string& event,
                                               std::vector<std::string>* components_out) {
    acctlib::StructuralModel sm;
    int n = uniform(rng, 1, max_vars);
    std::vector<std::string> vars;
    for (int i = 0; i < n; ++i) vars.push_back("V" + std::to_string(i));
    for (int i = 0; i < n; ++i) {
        if (i == 0 || chance(rng, 0.45)) {
            sm.exogenous[vars[i]] = chance(rng, 0.5);
        } else {
            std::vector<std::string> earlier(vars.begin(), vars.begin() + i);
            sm.equations[vars[i]] = random_expr(rng, earlier, 3);
        }
    }
    for (int i = 0; i < n; ++i)
        if (chance(rng, 0.6)) {
            std::string comp = "COMP" + std::to_string(i);
            sm.component_map[vars[i]] = comp;
            if (components_out) components_out->push_back(comp);
        }
    sm.event_map[vars[n - 1]] = event;
    return sm;
}

}  // namespace testutil
