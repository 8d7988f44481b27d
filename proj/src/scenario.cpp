#include "acct/scenario.hpp"

#include <algorithm>
#include <sstream>

namespace acctlib {

std::string ParseError::to_string() const {
    std::ostringstream os;
    os << "line " << line << ":" << column << ": expected " << expected << ", found " << found;
    return os.str();
}

namespace {

// ---------------------------------------------------------------- lexing

struct Token {
    enum class Type {
        Ident, String,
        LBrace, RBrace, LParen, RParen, LBracket, RBracket,
        Comma, Equals, Arrow, ColonEq,
        End,
    };
    Type type = Type::End;
    std::string text;
    int column = 1;
};

const char* type_name(Token::Type t) {
    switch (t) {
        case Token::Type::Ident: return "identifier";
        case Token::Type::String: return "quoted string";
        case Token::Type::LBrace: return "'{'";
        case Token::Type::RBrace: return "'}'";
        case Token::Type::LParen: return "'('";
        case Token::Type::RParen: return "')'";
        case Token::Type::LBracket: return "'['";
        case Token::Type::RBracket: return "']'";
        case Token::Type::Comma: return "','";
        case Token::Type::Equals: return "'='";
        case Token::Type::Arrow: return "'->'";
        case Token::Type::ColonEq: return "':='";
        case Token::Type::End: return "end of line";
    }
    return "?";
}

// Error local to one line; the caller resynchronizes at the next line.
struct LineError {
    int column;
    std::string expected;
    std::string found;
};

bool ident_head(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}
bool ident_tail(char c) { return ident_head(c) || (c >= '0' && c <= '9'); }

std::vector<Token> lex_line(const std::string& line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        int col = static_cast<int>(i) + 1;
        if (c == ' ' || c == '\t') { ++i; continue; }
        if (c == '#') break;  // comment to end of line
        if (ident_head(c)) {
            std::size_t j = i + 1;
            while (j < line.size() && ident_tail(line[j])) ++j;
            out.push_back({Token::Type::Ident, line.substr(i, j - i), col});
            i = j;
            continue;
        }
        if (c == '"') {
            std::size_t j = i + 1;
            while (j < line.size() && line[j] != '"') ++j;
            if (j >= line.size())
                throw LineError{col, "closing '\"'", "end of line"};
            out.push_back({Token::Type::String, line.substr(i + 1, j - i - 1), col});
            i = j + 1;
            continue;
        }
        if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
            out.push_back({Token::Type::Arrow, "->", col});
            i += 2;
            continue;
        }
        if (c == ':' && i + 1 < line.size() && line[i + 1] == '=') {
            out.push_back({Token::Type::ColonEq, ":=", col});
            i += 2;
            continue;
        }
        Token::Type t;
        switch (c) {
            case '{': t = Token::Type::LBrace; break;
            case '}': t = Token::Type::RBrace; break;
            case '(': t = Token::Type::LParen; break;
            case ')': t = Token::Type::RParen; break;
            case '[': t = Token::Type::LBracket; break;
            case ']': t = Token::Type::RBracket; break;
            case ',': t = Token::Type::Comma; break;
            case '=': t = Token::Type::Equals; break;
            default:
                throw LineError{col, "a statement token", "'" + std::string(1, c) + "'"};
        }
        out.push_back({t, std::string(1, c), col});
        ++i;
    }
    out.push_back({Token::Type::End, "", static_cast<int>(line.size()) + 1});
    return out;
}

// ---------------------------------------------------------------- parsing

class Cursor {
public:
    explicit Cursor(std::vector<Token> toks) : toks_(std::move(toks)) {}

    const Token& peek() const { return toks_[pos_]; }
    bool at_end() const { return peek().type == Token::Type::End; }

    const Token& expect(Token::Type t, const std::string& what = "") {
        const Token& tok = toks_[pos_];
        if (tok.type != t)
            throw LineError{tok.column, what.empty() ? type_name(t) : what, found_text(tok)};
        ++pos_;
        return tok;
    }

    std::string expect_ident(const std::string& what = "identifier") {
        return expect(Token::Type::Ident, what).text;
    }

    void expect_keyword(const std::string& kw) {
        const Token& tok = toks_[pos_];
        if (tok.type != Token::Type::Ident || tok.text != kw)
            throw LineError{tok.column, "'" + kw + "'", found_text(tok)};
        ++pos_;
    }

    bool accept(Token::Type t) {
        if (toks_[pos_].type == t) { ++pos_; return true; }
        return false;
    }

    bool accept_keyword(const std::string& kw) {
        if (toks_[pos_].type == Token::Type::Ident && toks_[pos_].text == kw) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect_end() {
        const Token& tok = toks_[pos_];
        if (tok.type != Token::Type::End)
            throw LineError{tok.column, "end of line", found_text(tok)};
    }

    static std::string found_text(const Token& tok) {
        if (tok.type == Token::Type::End) return "end of line";
        return "'" + tok.text + "'";
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

// event/component/account triple in "( A , B ) -> C" shape
ObservationFact parse_fact(Cursor& cur) {
    ObservationFact f;
    cur.expect(Token::Type::LParen);
    f.event = cur.expect_ident("event identifier");
    cur.expect(Token::Type::Comma);
    f.component = cur.expect_ident("component identifier");
    cur.expect(Token::Type::RParen);
    cur.expect(Token::Type::Arrow);
    f.account = cur.expect_ident("account identifier");
    return f;
}

std::vector<std::string> parse_ident_list(Cursor& cur) {
    std::vector<std::string> out;
    cur.expect(Token::Type::LBracket);
    if (cur.accept(Token::Type::RBracket)) return out;
    out.push_back(cur.expect_ident());
    while (cur.accept(Token::Type::Comma)) out.push_back(cur.expect_ident());
    cur.expect(Token::Type::RBracket);
    return out;
}

// boolexpr := or_expr; or/and are left-associative, not binds tightest
BoolExpr parse_bool_expr(Cursor& cur);

BoolExpr parse_bool_atom(Cursor& cur) {
    if (cur.accept_keyword("not")) return BoolExpr::make_not(parse_bool_atom(cur));
    if (cur.accept(Token::Type::LParen)) {
        BoolExpr e = parse_bool_expr(cur);
        cur.expect(Token::Type::RParen);
        return e;
    }
    const Token& tok = cur.peek();
    if (tok.type == Token::Type::Ident && tok.text != "and" && tok.text != "or")
        return BoolExpr::make_var(cur.expect_ident());
    throw LineError{tok.column, "a variable, 'not' or '('", Cursor::found_text(tok)};
}

BoolExpr parse_bool_and(Cursor& cur) {
    BoolExpr e = parse_bool_atom(cur);
    while (cur.accept_keyword("and")) e = BoolExpr::make_and(std::move(e), parse_bool_atom(cur));
    return e;
}

BoolExpr parse_bool_expr(Cursor& cur) {
    BoolExpr e = parse_bool_and(cur);
    while (cur.accept_keyword("or")) e = BoolExpr::make_or(std::move(e), parse_bool_and(cur));
    return e;
}

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    ParseResult run() {
        if (auto bad = invalid_utf8_position()) {
            int line = 1, col = 1;
            for (std::size_t i = 0; i < *bad; ++i) {
                if (text_[i] == '\n') { ++line; col = 1; } else { ++col; }
            }
            errors_.push_back({line, col, "valid UTF-8", "invalid byte"});
            return {std::nullopt, errors_};
        }

        split_lines();
        while (line_no_ < lines_.size()) parse_top_line();

        if (errors_.empty()) return {std::move(ast_), {}};
        return {std::nullopt, errors_};
    }

private:
    // Returns the byte offset of the first invalid UTF-8 sequence, if any.
    std::optional<std::size_t> invalid_utf8_position() const {
        const auto* s = reinterpret_cast<const unsigned char*>(text_.data());
        std::size_t n = text_.size();
        std::size_t i = 0;
        while (i < n) {
            unsigned char c = s[i];
            std::size_t len;
            unsigned int min;
            if (c < 0x80) { ++i; continue; }
            else if ((c & 0xE0) == 0xC0) { len = 2; min = 0x80; }
            else if ((c & 0xF0) == 0xE0) { len = 3; min = 0x800; }
            else if ((c & 0xF8) == 0xF0) { len = 4; min = 0x10000; }
            else return i;
            if (i + len > n) return i;
            unsigned int cp = c & (0xFF >> (len + 1));
            for (std::size_t k = 1; k < len; ++k) {
                if ((s[i + k] & 0xC0) != 0x80) return i;
                cp = (cp << 6) | (s[i + k] & 0x3F);
            }
            if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return i;
            i += len;
        }
        return std::nullopt;
    }

    void split_lines() {
        std::string cur;
        for (char c : text_) {
            if (c == '\n') {
                if (!cur.empty() && cur.back() == '\r') cur.pop_back();
                lines_.push_back(std::move(cur));
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        if (!cur.empty()) {
            if (cur.back() == '\r') cur.pop_back();
            lines_.push_back(std::move(cur));
        }
    }

    int here() const { return static_cast<int>(line_no_) + 1; }

    void fail(const LineError& e) { errors_.push_back({here(), e.column, e.expected, e.found}); }

    // Tokenizes the current line; nullopt for blank/comment-only lines.
    std::optional<Cursor> tokens() {
        try {
            auto toks = lex_line(lines_[line_no_]);
            if (toks.size() == 1) return std::nullopt;  // only End
            return Cursor(std::move(toks));
        } catch (const LineError& e) {
            fail(e);
            return std::nullopt;
        }
    }

    void add(ast::Node node, int col = 1) {
        ast_.statements.push_back({here(), col, std::move(node)});
    }

    void parse_top_line() {
        auto cur = tokens();
        if (!cur) { ++line_no_; return; }
        try {
            dispatch(*cur);
        } catch (const LineError& e) {
            fail(e);
        }
        ++line_no_;
    }

    void dispatch(Cursor& cur) {
        const Token& head = cur.peek();
        std::string kw = cur.expect_ident("a statement keyword");
        if (kw == "scenario") {
            std::string name = cur.expect(Token::Type::String).text;
            cur.expect_end();
            if (seen_scenario_)
                throw LineError{head.column, "at most one scenario header", "'scenario'"};
            seen_scenario_ = true;
            ast_.scenario_name = name;
            add(ast::Scenario{name}, head.column);
        } else if (kw == "component") {
            std::string id = cur.expect_ident();
            cur.expect_end();
            add(ast::Component{id}, head.column);
        } else if (kw == "principal") {
            std::string id = cur.expect_ident();
            cur.expect_keyword("kind");
            cur.expect(Token::Type::Equals);
            const Token& k = cur.peek();
            std::string kind = cur.expect_ident("person|legal_entity");
            cur.expect_end();
            if (kind == "person") add(ast::Principal{id, PrincipalKind::Person}, head.column);
            else if (kind == "legal_entity")
                add(ast::Principal{id, PrincipalKind::LegalEntity}, head.column);
            else throw LineError{k.column, "person|legal_entity", "'" + kind + "'"};
        } else if (kw == "being") {
            std::string id = cur.expect_ident();
            cur.expect_keyword("kind");
            cur.expect(Token::Type::Equals);
            const Token& k = cur.peek();
            std::string kind = cur.expect_ident("human|animal");
            cur.expect_end();
            if (kind == "human") add(ast::Being{id, BeingKind::Human}, head.column);
            else if (kind == "animal") add(ast::Being{id, BeingKind::Animal}, head.column);
            else throw LineError{k.column, "human|animal", "'" + kind + "'"};
        } else if (kw == "event") {
            std::string id = cur.expect_ident();
            cur.expect_keyword("kind");
            cur.expect(Token::Type::Equals);
            const Token& k = cur.peek();
            std::string kind = cur.expect_ident("system|environment");
            cur.expect_end();
            if (kind == "system") add(ast::Event{id, EventKind::System}, head.column);
            else if (kind == "environment")
                add(ast::Event{id, EventKind::Environment}, head.column);
            else throw LineError{k.column, "system|environment", "'" + kind + "'"};
        } else if (kw == "account") {
            std::string id = cur.expect_ident();
            cur.expect_end();
            add(ast::Account{id}, head.column);
        } else if (kw == "action") {
            std::string id = cur.expect_ident();
            cur.expect_end();
            add(ast::Action{id}, head.column);
        } else if (kw == "ego") {
            std::string id = cur.expect_ident();
            cur.expect_end();
            add(ast::Ego{id}, head.column);
        } else if (kw == "observation") {
            ObservationFact f = parse_fact(cur);
            cur.expect_end();
            add(ast::Observation{f}, head.column);
        } else if (kw == "has_account") {
            std::string account = cur.expect_ident();
            cur.expect_keyword("by");
            std::string principal = cur.expect_ident();
            cur.expect_end();
            add(ast::HasAccount{account, principal}, head.column);
        } else if (kw == "correction") {
            Declarations::Correction c;
            cur.expect(Token::Type::LParen);
            c.principal = cur.expect_ident("principal identifier");
            cur.expect(Token::Type::Comma);
            c.component = cur.expect_ident("component identifier");
            cur.expect(Token::Type::RParen);
            cur.expect(Token::Type::Arrow);
            c.action = cur.expect_ident("action identifier");
            cur.expect_end();
            add(ast::Correction{c}, head.column);
        } else if (kw == "caused") {
            Declarations::Caused c;
            c.event = cur.expect_ident("event identifier");
            cur.expect(Token::Type::Equals);
            c.components = parse_ident_list(cur);
            cur.expect_end();
            if (c.components.empty())
                throw LineError{head.column, "at least one component", "']'"};
            add(ast::Caused{c}, head.column);
        } else if (kw == "cps") {
            parse_cps_block(cur, head.column);
        } else if (kw == "structural") {
            parse_structural_block(cur, head.column);
        } else {
            throw LineError{head.column, "a statement keyword", "'" + kw + "'"};
        }
    }

    // Consumes item lines until the closing brace; the header line has
    // already provided the opening brace.
    template <typename ItemFn>
    bool parse_block_body(ItemFn&& item) {
        ++line_no_;
        while (line_no_ < lines_.size()) {
            auto cur = tokens();
            if (!cur) { ++line_no_; continue; }
            if (cur->accept(Token::Type::RBrace)) {
                try {
                    cur->expect_end();
                } catch (const LineError& e) {
                    fail(e);
                }
                return true;
            }
            try {
                item(*cur);
            } catch (const LineError& e) {
                fail(e);
            }
            ++line_no_;
        }
        // unterminated block
        errors_.push_back({static_cast<int>(lines_.size()) + 1, 1, "'}'", "end of input"});
        --line_no_;  // the caller advances once more
        return false;
    }

    void parse_cps_block(Cursor& cur, int col) {
        const int start_line = here();
        Declarations::Cps cps;
        cps.id = cur.expect_ident("cps identifier");
        cur.expect(Token::Type::LBrace);
        cur.expect_end();

        parse_block_body([&](Cursor& item) {
            std::string kw = item.expect_ident("components|principals|setup|log");
            if (kw == "components") {
                item.expect(Token::Type::Equals);
                auto ids = parse_ident_list(item);
                item.expect_end();
                cps.components.insert(cps.components.end(), ids.begin(), ids.end());
            } else if (kw == "principals") {
                item.expect(Token::Type::Equals);
                auto ids = parse_ident_list(item);
                item.expect_end();
                cps.principals.insert(cps.principals.end(), ids.begin(), ids.end());
            } else if (kw == "setup") {
                std::string component = item.expect_ident();
                item.expect_keyword("by");
                std::string principal = item.expect_ident();
                item.expect_end();
                cps.setups.emplace_back(component, principal);
            } else if (kw == "log") {
                ObservationFact f = parse_fact(item);
                item.expect_end();
                cps.logs.push_back(f);
            } else {
                throw LineError{1, "components|principals|setup|log", "'" + kw + "'"};
            }
        });
        ast_.statements.push_back({start_line, col, ast::Cps{std::move(cps)}});
    }

    void parse_structural_block(Cursor& cur, int col) {
        const int start_line = here();
        StructuralModel sm;
        cur.expect(Token::Type::LBrace);
        cur.expect_end();

        parse_block_body([&](Cursor& item) {
            std::string kw = item.expect_ident("exo|eq|map");
            if (kw == "exo") {
                std::string var = item.expect_ident();
                item.expect(Token::Type::Equals);
                const Token& v = item.peek();
                std::string val = item.expect_ident("true|false");
                item.expect_end();
                if (val != "true" && val != "false")
                    throw LineError{v.column, "true|false", "'" + val + "'"};
                sm.exogenous[var] = (val == "true");
            } else if (kw == "eq") {
                std::string var = item.expect_ident();
                item.expect(Token::Type::ColonEq);
                BoolExpr e = parse_bool_expr(item);
                item.expect_end();
                sm.equations[var] = std::move(e);
            } else if (kw == "map") {
                std::string var = item.expect_ident();
                item.expect(Token::Type::Arrow);
                const Token& k = item.peek();
                std::string kind = item.expect_ident("event|component");
                std::string id = item.expect_ident();
                item.expect_end();
                if (kind == "event") sm.event_map[var] = id;
                else if (kind == "component") sm.component_map[var] = id;
                else throw LineError{k.column, "event|component", "'" + kind + "'"};
            } else {
                throw LineError{1, "exo|eq|map", "'" + kw + "'"};
            }
        });
        ast_.statements.push_back({start_line, col, ast::Structural{std::move(sm)}});
    }

    const std::string& text_;
    std::vector<std::string> lines_;
    std::size_t line_no_ = 0;
    bool seen_scenario_ = false;
    ScenarioAst ast_;
    std::vector<ParseError> errors_;
};

// ------------------------------------------------------------- serializing

std::string render_expr(const BoolExpr& e, bool parenthesize) {
    std::string body;
    switch (e.op) {
        case BoolExpr::Op::Var:
            return e.var;
        case BoolExpr::Op::Not:
            body = "not " + render_expr(e.kids[0], true);
            break;
        case BoolExpr::Op::And:
            body = render_expr(e.kids[0], true) + " and " + render_expr(e.kids[1], true);
            break;
        case BoolExpr::Op::Or:
            body = render_expr(e.kids[0], true) + " or " + render_expr(e.kids[1], true);
            break;
    }
    return parenthesize ? "(" + body + ")" : body;
}

std::string render_list(const std::vector<std::string>& ids) {
    std::string out = "[";
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ", ";
        out += ids[i];
    }
    return out + "]";
}

void render_fact(std::ostringstream& os, const char* keyword, const ObservationFact& f) {
    os << keyword << " (" << f.event << ", " << f.component << ") -> " << f.account << "\n";
}

}  // namespace

ParseResult parse_scenario(const std::string& text) {
    return Parser(text).run();
}

BuildResult resolve(const ScenarioAst& ast) {
    Declarations d;
    d.scenario_name = ast.scenario_name;
    std::vector<BuildError> extra;

    for (const auto& stmt : ast.statements) {
        std::visit(
            [&](const auto& node) {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, ast::Scenario>) {
                    // name already captured
                } else if constexpr (std::is_same_v<T, ast::Component>) {
                    d.components.push_back(node.id);
                } else if constexpr (std::is_same_v<T, ast::Principal>) {
                    d.principals.emplace_back(node.id, node.kind);
                } else if constexpr (std::is_same_v<T, ast::Being>) {
                    d.beings.emplace_back(node.id, node.kind);
                } else if constexpr (std::is_same_v<T, ast::Event>) {
                    d.events.emplace_back(node.id, node.kind);
                } else if constexpr (std::is_same_v<T, ast::Account>) {
                    d.accounts.push_back(node.id);
                } else if constexpr (std::is_same_v<T, ast::Action>) {
                    d.actions.push_back(node.id);
                } else if constexpr (std::is_same_v<T, ast::Cps>) {
                    d.cps.push_back(node.decl);
                } else if constexpr (std::is_same_v<T, ast::Ego>) {
                    if (d.ego)
                        extra.push_back({BuildError::Kind::DuplicateDeclaration, node.id, "ego"});
                    else
                        d.ego = node.id;
                } else if constexpr (std::is_same_v<T, ast::Observation>) {
                    d.observations.push_back(node.fact);
                } else if constexpr (std::is_same_v<T, ast::HasAccount>) {
                    d.has_account.emplace_back(node.account, node.principal);
                } else if constexpr (std::is_same_v<T, ast::Correction>) {
                    d.corrections.push_back(node.decl);
                } else if constexpr (std::is_same_v<T, ast::Caused>) {
                    d.caused.push_back(node.decl);
                } else if constexpr (std::is_same_v<T, ast::Structural>) {
                    if (d.structural)
                        extra.push_back(
                            {BuildError::Kind::DuplicateDeclaration, "structural", "structural"});
                    else
                        d.structural = node.model;
                }
            },
            stmt.node);
    }

    BuildResult result = build_model(d);
    if (!extra.empty()) {
        if (auto* errs = std::get_if<std::vector<BuildError>>(&result)) {
            errs->insert(errs->end(), extra.begin(), extra.end());
            return *errs;
        }
        return extra;
    }
    return result;
}

std::string serialize(const Model& model) {
    std::ostringstream os;
    os << "scenario \"" << model.scenario_name() << "\"\n";

    for (const auto& c : model.components()) os << "component " << c << "\n";
    for (const auto& [p, kind] : model.principals())
        os << "principal " << p << " kind="
           << (kind == PrincipalKind::Person ? "person" : "legal_entity") << "\n";
    for (const auto& [b, kind] : model.beings())
        os << "being " << b << " kind=" << (kind == BeingKind::Human ? "human" : "animal")
           << "\n";
    for (const auto& [e, kind] : model.events())
        os << "event " << e << " kind="
           << (kind == EventKind::System ? "system" : "environment") << "\n";
    for (const auto& a : model.accounts()) os << "account " << a << "\n";
    for (const auto& a : model.actions()) os << "action " << a << "\n";

    for (const auto& [id, cps] : model.cps()) {
        os << "cps " << id << " {\n";
        if (!cps.components.empty())
            os << "  components = "
               << render_list({cps.components.begin(), cps.components.end()}) << "\n";
        if (!cps.principals.empty())
            os << "  principals = "
               << render_list({cps.principals.begin(), cps.principals.end()}) << "\n";
        for (const auto& [c, p] : cps.setups) os << "  setup " << c << " by " << p << "\n";
        for (const auto& f : cps.logs) {
            os << "  ";
            render_fact(os, "log", f);
        }
        os << "}\n";
    }
    if (model.sts().has_ego()) os << "ego " << model.sts().ego << "\n";

    for (const auto& f : model.extra_observations()) render_fact(os, "observation", f);
    for (const auto& [a, p] : model.has_account())
        os << "has_account " << a << " by " << p << "\n";
    for (const auto& [key, action] : model.correction_actions())
        os << "correction (" << key.first << ", " << key.second << ") -> " << action << "\n";
    for (const auto& [event, comps] : model.caused_facts())
        os << "caused " << event << " = " << render_list({comps.begin(), comps.end()}) << "\n";

    if (model.structural()) {
        const StructuralModel& sm = *model.structural();
        os << "structural {\n";
        for (const auto& [v, val] : sm.exogenous)
            os << "  exo " << v << " = " << (val ? "true" : "false") << "\n";
        for (const auto& [v, e] : sm.equations)
            os << "  eq " << v << " := " << render_expr(e, false) << "\n";
        for (const auto& [v, c] : sm.component_map)
            os << "  map " << v << " -> component " << c << "\n";
        for (const auto& [v, e] : sm.event_map) os << "  map " << v << " -> event " << e << "\n";
        os << "}\n";
    }
    return os.str();
}

}  // namespace acctlib
