#include "acct/model.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace acctlib {

BoolExpr BoolExpr::make_var(std::string name) {
    BoolExpr e;
    e.op = Op::Var;
    e.var = std::move(name);
    return e;
}

BoolExpr BoolExpr::make_not(BoolExpr c) {
    BoolExpr e;
    e.op = Op::Not;
    e.kids.push_back(std::move(c));
    return e;
}

BoolExpr BoolExpr::make_and(BoolExpr a, BoolExpr b) {
    BoolExpr e;
    e.op = Op::And;
    e.kids.push_back(std::move(a));
    e.kids.push_back(std::move(b));
    return e;
}

BoolExpr BoolExpr::make_or(BoolExpr a, BoolExpr b) {
    BoolExpr e;
    e.op = Op::Or;
    e.kids.push_back(std::move(a));
    e.kids.push_back(std::move(b));
    return e;
}

bool valid_identifier(const std::string& name) {
    if (name.empty()) return false;
    auto head = [](char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
    };
    auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9'); };
    if (!head(name[0])) return false;
    return std::all_of(name.begin() + 1, name.end(), tail);
}

std::string BuildError::to_string() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::UnknownEntity:
            os << "unknown entity '" << name << "'";
            break;
        case Kind::DuplicateDeclaration:
            os << "duplicate declaration of '" << name << "'";
            break;
        case Kind::KindConflict:
            os << "'" << name << "' declared under two different kinds";
            break;
        case Kind::EmptyCausedSet:
            os << "caused set for event '" << name << "' is empty";
            break;
        case Kind::MissingEgo:
            os << "no ego designation but cps blocks are present";
            break;
        case Kind::EgoUnknown:
            os << "ego '" << name << "' names no declared cps";
            break;
        case Kind::CyclicModel:
            os << "structural equations are cyclic at '" << name << "'";
            break;
        case Kind::UnknownVariable:
            os << "unknown structural variable '" << name << "'";
            break;
        case Kind::TooManyVariables:
            os << "structural model exceeds the variable bound";
            break;
    }
    if (!where.empty()) os << " (in " << where << ")";
    return os.str();
}

namespace {

constexpr int kMaxStructuralVariables = 24;

void collect_vars(const BoolExpr& e, std::set<std::string>& out) {
    if (e.op == BoolExpr::Op::Var) {
        out.insert(e.var);
        return;
    }
    for (const auto& k : e.kids) collect_vars(k, out);
}

}  // namespace

namespace detail {

class Builder {
public:
    explicit Builder(const Declarations& decls) : d_(decls) {}

    BuildResult run() {
        declare_entities();
        resolve_relations();
        resolve_cps_and_sts();
        resolve_structural();
        resolve_overrides();
        if (!errors_.empty()) return errors_;
        m_.scenario_name_ = d_.scenario_name;
        return std::move(m_);
    }

private:
    enum class EntityKind { Component, Principal, Being, Event, Account, Action };

    static const char* kind_name(EntityKind k) {
        switch (k) {
            case EntityKind::Component: return "component";
            case EntityKind::Principal: return "principal";
            case EntityKind::Being: return "being";
            case EntityKind::Event: return "event";
            case EntityKind::Account: return "account";
            case EntityKind::Action: return "action";
        }
        return "?";
    }

    void error(BuildError::Kind kind, std::string name, std::string where) {
        errors_.push_back({kind, std::move(name), std::move(where)});
    }

    // Registers a name under a kind; duplicate within a kind and conflicts
    // across kinds are both reported.
    bool declare(const std::string& name, EntityKind kind) {
        auto [it, fresh] = kinds_.emplace(name, kind);
        if (fresh) return true;
        if (it->second == kind) {
            error(BuildError::Kind::DuplicateDeclaration, name, kind_name(kind));
        } else {
            error(BuildError::Kind::KindConflict, name, kind_name(kind));
        }
        return false;
    }

    bool require(const std::string& name, EntityKind kind, const std::string& where) {
        auto it = kinds_.find(name);
        if (it == kinds_.end() || it->second != kind) {
            error(BuildError::Kind::UnknownEntity, name,
                  where + " (expects a " + std::string(kind_name(kind)) + ")");
            return false;
        }
        return true;
    }

    void declare_entities() {
        for (const auto& c : d_.components)
            if (declare(c, EntityKind::Component)) m_.components_.insert(c);
        for (const auto& [p, k] : d_.principals)
            if (declare(p, EntityKind::Principal)) m_.principals_.emplace(p, k);
        for (const auto& [b, k] : d_.beings)
            if (declare(b, EntityKind::Being)) m_.beings_.emplace(b, k);
        for (const auto& [e, k] : d_.events)
            if (declare(e, EntityKind::Event)) m_.events_.emplace(e, k);
        for (const auto& a : d_.accounts)
            if (declare(a, EntityKind::Account)) m_.accounts_.insert(a);
        for (const auto& a : d_.actions)
            if (declare(a, EntityKind::Action)) m_.actions_.insert(a);
    }

    bool check_fact(const ObservationFact& f, const std::string& where) {
        bool ok = require(f.event, EntityKind::Event, where + " event");
        ok &= require(f.component, EntityKind::Component, where + " component");
        ok &= require(f.account, EntityKind::Account, where + " account");
        return ok;
    }

    void resolve_relations() {
        for (const auto& f : d_.observations) {
            if (check_fact(f, "observation")) {
                m_.extra_observations_.insert(f);
                m_.observations_.insert(f);
            }
        }
        for (const auto& [a, p] : d_.has_account) {
            bool ok = require(a, EntityKind::Account, "has_account account");
            ok &= require(p, EntityKind::Principal, "has_account principal");
            if (ok) m_.has_account_.emplace(a, p);
        }
        for (const auto& c : d_.corrections) {
            bool ok = require(c.principal, EntityKind::Principal, "correction principal");
            ok &= require(c.component, EntityKind::Component, "correction component");
            ok &= require(c.action, EntityKind::Action, "correction action");
            if (!ok) continue;
            auto key = std::make_pair(c.principal, c.component);
            auto [it, fresh] = m_.correction_actions_.emplace(key, c.action);
            if (!fresh && it->second != c.action)
                error(BuildError::Kind::DuplicateDeclaration, c.principal + "," + c.component,
                      "correction");
        }
        for (const auto& cf : d_.caused) {
            if (!require(cf.event, EntityKind::Event, "caused event")) continue;
            if (cf.components.empty()) {
                error(BuildError::Kind::EmptyCausedSet, cf.event, "caused");
                continue;
            }
            std::set<std::string> comps;
            bool ok = true;
            for (const auto& c : cf.components)
                ok &= require(c, EntityKind::Component, "caused component");
            if (!ok) continue;
            comps.insert(cf.components.begin(), cf.components.end());
            auto [it, fresh] = m_.caused_facts_.emplace(cf.event, comps);
            if (!fresh && it->second != comps)
                error(BuildError::Kind::DuplicateDeclaration, cf.event, "caused");
        }
    }

    void resolve_cps_and_sts() {
        for (const auto& c : d_.cps) {
            if (m_.cps_.contains(c.id)) {
                error(BuildError::Kind::DuplicateDeclaration, c.id, "cps");
                continue;
            }
            CpsDecl decl;
            decl.id = c.id;
            for (const auto& comp : c.components)
                if (require(comp, EntityKind::Component, "cps " + c.id + " components"))
                    decl.components.insert(comp);
            for (const auto& p : c.principals)
                if (require(p, EntityKind::Principal, "cps " + c.id + " principals"))
                    decl.principals.insert(p);
            for (const auto& [comp, p] : c.setups) {
                bool ok = require(comp, EntityKind::Component, "cps " + c.id + " setup");
                ok &= require(p, EntityKind::Principal, "cps " + c.id + " setup");
                if (!ok) continue;
                auto [it, fresh] = decl.setups.emplace(comp, p);
                if (!fresh && it->second != p) {
                    error(BuildError::Kind::DuplicateDeclaration, comp, "cps " + c.id + " setup");
                    continue;
                }
                // setups feed the global ComponentConfiguration function
                auto [git, gfresh] = m_.component_configuration_.emplace(comp, p);
                if (!gfresh && git->second != p)
                    error(BuildError::Kind::DuplicateDeclaration, comp, "component configuration");
            }
            for (const auto& f : c.logs) {
                if (check_fact(f, "cps " + c.id + " log")) {
                    decl.logs.insert(f);
                    m_.observations_.insert(f);
                }
            }
            m_.cps_.emplace(c.id, std::move(decl));
        }

        if (d_.ego) {
            if (!m_.cps_.contains(*d_.ego)) {
                error(BuildError::Kind::EgoUnknown, *d_.ego, "ego");
            } else {
                // foreign sequence is the sorted cps ids minus the ego, so the
                // model never depends on declaration order
                m_.sts_.ego = *d_.ego;
                for (const auto& [id, cps] : m_.cps_)
                    if (id != *d_.ego) m_.sts_.foreign.push_back(id);
            }
        } else if (!d_.cps.empty()) {
            error(BuildError::Kind::MissingEgo, "", "");
        }
        for (const auto& [p, k] : m_.principals_) m_.sts_.principals.insert(p);
        for (const auto& [b, k] : m_.beings_) m_.sts_.beings.insert(b);

        if (d_.sts) {
            // Explicit STS override: ids must still resolve.
            StsDecl s = *d_.sts;
            if (!s.ego.empty() && !m_.cps_.contains(s.ego))
                error(BuildError::Kind::EgoUnknown, s.ego, "sts ego");
            for (const auto& f : s.foreign)
                if (!m_.cps_.contains(f))
                    error(BuildError::Kind::UnknownEntity, f, "sts foreign (expects a cps)");
            for (const auto& p : s.principals)
                require(p, EntityKind::Principal, "sts principals");
            for (const auto& b : s.beings) require(b, EntityKind::Being, "sts beings");
            m_.sts_ = std::move(s);
        }
    }

    void resolve_structural() {
        if (!d_.structural) return;
        const StructuralModel& sm = *d_.structural;

        std::set<std::string> defined;
        for (const auto& [v, val] : sm.exogenous) defined.insert(v);
        for (const auto& [v, eq] : sm.equations) {
            if (!defined.insert(v).second)
                error(BuildError::Kind::DuplicateDeclaration, v, "structural variable");
        }
        if (defined.size() > kMaxStructuralVariables) {
            error(BuildError::Kind::TooManyVariables, "", "structural");
            return;
        }
        // Every referenced variable must be defined somewhere.
        for (const auto& [v, eq] : sm.equations) {
            std::set<std::string> used;
            collect_vars(eq, used);
            for (const auto& u : used)
                if (!defined.contains(u))
                    error(BuildError::Kind::UnknownVariable, u, "equation for " + v);
        }
        for (const auto& [v, ev] : sm.event_map) {
            if (!defined.contains(v))
                error(BuildError::Kind::UnknownVariable, v, "event map");
            require(ev, EntityKind::Event, "structural event map");
        }
        for (const auto& [v, comp] : sm.component_map) {
            if (!defined.contains(v))
                error(BuildError::Kind::UnknownVariable, v, "component map");
            require(comp, EntityKind::Component, "structural component map");
        }

        // Cycle check over equation dependencies (DFS, three colors).
        std::map<std::string, int> color;  // 0 white, 1 grey, 2 black
        std::function<bool(const std::string&)> dfs = [&](const std::string& v) -> bool {
            auto it = sm.equations.find(v);
            if (it == sm.equations.end()) return true;  // exogenous or undefined
            int& c = color[v];
            if (c == 1) {
                error(BuildError::Kind::CyclicModel, v, "structural");
                return false;
            }
            if (c == 2) return true;
            c = 1;
            std::set<std::string> used;
            collect_vars(it->second, used);
            for (const auto& u : used)
                if (!dfs(u)) { c = 2; return false; }
            c = 2;
            return true;
        };
        for (const auto& [v, eq] : sm.equations)
            if (!dfs(v)) break;

        m_.structural_ = sm;
    }

    void resolve_overrides() {
        if (d_.am_accounts) {
            for (const auto& a : *d_.am_accounts)
                require(a, EntityKind::Account, "mechanism accounts");
            m_.am_accounts_ = *d_.am_accounts;
        } else {
            m_.am_accounts_ = m_.accounts_;
        }
        if (d_.missed_by_ego) {
            for (const auto& e : *d_.missed_by_ego)
                require(e, EntityKind::Event, "declared missedByEgo");
            m_.declared_missed_by_ego_ = d_.missed_by_ego;
        }
    }

    const Declarations& d_;
    Model m_;
    std::map<std::string, EntityKind> kinds_;
    std::vector<BuildError> errors_;
};

}  // namespace detail

BuildResult build_model(const Declarations& decls) {
    return detail::Builder(decls).run();
}

}  // namespace acctlib
