#include "acct/causality.hpp"

#include <algorithm>
#include <functional>

namespace acctlib {

namespace {

constexpr std::size_t kMaxMappedVariables = 20;

bool eval_expr(const BoolExpr& e, const std::map<std::string, bool>& env) {
    switch (e.op) {
        case BoolExpr::Op::Var: {
            auto it = env.find(e.var);
            if (it == env.end())
                throw QueryError(QueryError::Kind::UnknownVariable,
                                 "unknown structural variable '" + e.var + "'");
            return it->second;
        }
        case BoolExpr::Op::Not:
            return !eval_expr(e.kids[0], env);
        case BoolExpr::Op::And:
            return eval_expr(e.kids[0], env) && eval_expr(e.kids[1], env);
        case BoolExpr::Op::Or:
            return eval_expr(e.kids[0], env) || eval_expr(e.kids[1], env);
    }
    return false;
}

void collect_vars(const BoolExpr& e, std::set<std::string>& out) {
    if (e.op == BoolExpr::Op::Var) {
        out.insert(e.var);
        return;
    }
    for (const auto& k : e.kids) collect_vars(k, out);
}

// Finds the unique variable mapped to the event and checks it holds in the
// unintervened model.
std::string event_variable(const StructuralModel& sm, const std::string& event) {
    std::string found;
    for (const auto& [v, e] : sm.event_map) {
        if (e != event) continue;
        if (!found.empty())
            throw QueryError(QueryError::Kind::EventNotMapped,
                             "event '" + event + "' is mapped by more than one variable");
        found = v;
    }
    if (found.empty())
        throw QueryError(QueryError::Kind::EventNotMapped,
                         "no structural variable maps to event '" + event + "'");
    return found;
}

struct FlipSearch {
    const StructuralModel& sm;
    std::string event_var;
    std::map<std::string, bool> baseline;
    std::vector<std::string> mapped;  // component-mapped variables, sorted

    FlipSearch(const StructuralModel& s, const std::string& event) : sm(s) {
        event_var = event_variable(sm, event);
        baseline = evaluate(sm, {});
        if (!baseline.at(event_var))
            throw QueryError(QueryError::Kind::EventNotOccurring,
                             "event variable '" + event_var + "' does not hold");
        for (const auto& [v, c] : sm.component_map) mapped.push_back(v);
        std::sort(mapped.begin(), mapped.end());
        if (mapped.size() > kMaxMappedVariables)
            throw QueryError(QueryError::Kind::SearchSpaceTooLarge,
                             "more than 20 component-mapped variables");
    }

    // Jointly flip the given variables relative to their unintervened values.
    bool flips(const std::vector<std::size_t>& idx) const {
        std::map<std::string, bool> overrides;
        for (auto i : idx) overrides[mapped[i]] = !baseline.at(mapped[i]);
        return !evaluate(sm, overrides).at(event_var);
    }
};

std::vector<std::string> to_components(const StructuralModel& sm,
                                       const std::vector<std::size_t>& idx,
                                       const std::vector<std::string>& mapped) {
    std::set<std::string> comps;
    for (auto i : idx) comps.insert(sm.component_map.at(mapped[i]));
    return {comps.begin(), comps.end()};
}

}  // namespace

std::optional<std::vector<std::string>> explicit_causes(const Model& model,
                                                        const std::string& event) {
    if (!model.has_event(event))
        throw QueryError(QueryError::Kind::UnknownEvent, "unknown event '" + event + "'");
    auto it = model.caused_facts().find(event);
    if (it == model.caused_facts().end()) return std::nullopt;
    return std::vector<std::string>(it->second.begin(), it->second.end());
}

std::map<std::string, bool> evaluate(const StructuralModel& sm,
                                     const std::map<std::string, bool>& overrides) {
    for (const auto& [v, x] : overrides)
        if (!sm.exogenous.contains(v) && !sm.equations.contains(v))
            throw QueryError(QueryError::Kind::UnknownVariable,
                             "unknown structural variable '" + v + "'");

    std::map<std::string, bool> env;
    std::function<bool(const std::string&)> value = [&](const std::string& v) -> bool {
        if (auto it = env.find(v); it != env.end()) return it->second;
        bool x;
        if (auto ov = overrides.find(v); ov != overrides.end()) {
            x = ov->second;  // intervention cuts the equation
        } else if (auto ex = sm.exogenous.find(v); ex != sm.exogenous.end()) {
            x = ex->second;
        } else if (auto eq = sm.equations.find(v); eq != sm.equations.end()) {
            std::set<std::string> used;
            collect_vars(eq->second, used);
            std::map<std::string, bool> sub;
            for (const auto& u : used) sub[u] = value(u);
            x = eval_expr(eq->second, sub);
        } else {
            throw QueryError(QueryError::Kind::UnknownVariable,
                             "unknown structural variable '" + v + "'");
        }
        env[v] = x;
        return x;
    };
    for (const auto& [v, x] : sm.exogenous) value(v);
    for (const auto& [v, eq] : sm.equations) value(v);
    for (const auto& [v, x] : overrides) value(v);
    return env;
}

std::vector<std::string> but_for_causes(const StructuralModel& sm, const std::string& event) {
    FlipSearch search(sm, event);
    std::set<std::string> result;
    for (std::size_t i = 0; i < search.mapped.size(); ++i)
        if (search.flips({i})) result.insert(sm.component_map.at(search.mapped[i]));
    return {result.begin(), result.end()};
}

std::vector<std::vector<std::string>> minimal_cause_sets(const StructuralModel& sm,
                                                         const std::string& event) {
    FlipSearch search(sm, event);
    const std::size_t n = search.mapped.size();

    std::vector<std::vector<std::size_t>> minimal;
    auto has_subset = [&](const std::vector<std::size_t>& idx) {
        for (const auto& m : minimal)
            if (std::includes(idx.begin(), idx.end(), m.begin(), m.end())) return true;
        return false;
    };

    // Increasing-size enumeration: anything containing a known flip set is
    // not minimal and is skipped.
    std::vector<std::size_t> idx;
    std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start,
                                                               std::size_t remaining) {
        if (remaining == 0) {
            if (!has_subset(idx) && search.flips(idx)) minimal.push_back(idx);
            return;
        }
        for (std::size_t i = start; i + remaining <= n; ++i) {
            idx.push_back(i);
            choose(i + 1, remaining - 1);
            idx.pop_back();
        }
    };
    for (std::size_t size = 1; size <= n; ++size) choose(0, size);

    std::vector<std::vector<std::string>> result;
    result.reserve(minimal.size());
    for (const auto& m : minimal) result.push_back(to_components(sm, m, search.mapped));
    std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
}

CauseResult resolve_causes(const Model& model, const std::string& event, bool with_minimal) {
    CauseResult r;
    r.event = event;
    r.explicit_causes = explicit_causes(model, event);
    if (model.structural()) {
        try {
            r.computed_causes = but_for_causes(*model.structural(), event);
            if (with_minimal) r.minimal_sets = minimal_cause_sets(*model.structural(), event);
        } catch (const QueryError& e) {
            r.computed_error = e.what();
        }
    }
    r.conflict = r.explicit_causes && r.computed_causes &&
                 *r.explicit_causes != *r.computed_causes;
    return r;
}

}  // namespace acctlib
