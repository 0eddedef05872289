#include "probenv/requirements.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace probenv {

std::string relation_str(Relation r) {
    switch (r) {
        case Relation::EqZero: return "= 0";
        case Relation::GeqZero: return ">= 0";
        case Relation::GtZero: return "> 0";
        case Relation::NeqZero: return "!= 0";
    }
    return {};
}

std::pair<Polynomial, Relation> normalize_relation(const Polynomial& lhs,
                                                   const std::string& relop,
                                                   const Polynomial& rhs) {
    Polynomial d = lhs - rhs;
    if (relop == "=") return {d, Relation::EqZero};
    if (relop == ">=") return {d, Relation::GeqZero};
    if (relop == "<=") return {rhs - lhs, Relation::GeqZero};
    if (relop == ">") return {d, Relation::GtZero};
    if (relop == "<") return {rhs - lhs, Relation::GtZero};
    if (relop == "!=") return {d, Relation::NeqZero};
    throw std::invalid_argument("unknown relational operator '" + relop + "'");
}

VarId ProbTermRegistry::term(const AtomSet& atoms, const std::string& label) {
    auto it = index_.find(atoms);
    if (it != index_.end()) return it->second;
    VarId v = VarId(forms_.size());
    index_.emplace(atoms, v);
    forms_.push_back(atoms);
    labels_.push_back(label.empty() ? "x" + std::to_string(v) : label);
    return v;
}

VarId RequirementSet::term_of(const BooleanExpr& e) {
    return terms.term(atoms_of(e, n), "P(" + e.to_string(events) + ")");
}

// ---------------------------------------------------------------------------
// desugaring

Constraint desugar_probability(RequirementSet& rs, const BooleanExpr& e, const Rational& c,
                               int line) {
    VarId v = rs.term_of(e);
    Constraint out{Polynomial::variable(v, VarSpace::X) - Polynomial::constant(c, VarSpace::X),
                   Relation::EqZero,
                   {line, "probability"}};
    return out;
}

std::vector<Constraint> desugar_conditional(RequirementSet& rs, const BooleanExpr& target,
                                            const BooleanExpr& given, const Rational& c,
                                            int line) {
    VarId joint = rs.term_of(BooleanExpr::conj(target, given));
    VarId cond = rs.term_of(given);
    std::vector<Constraint> out;
    out.push_back({Polynomial::variable(joint, VarSpace::X) -
                       Polynomial::variable(cond, VarSpace::X).scale(c),
                   Relation::EqZero,
                   {line, "conditional"}});
    out.push_back({Polynomial::variable(cond, VarSpace::X),
                   Relation::NeqZero,
                   {line, "conditional-support"}});
    return out;
}

std::vector<Constraint> desugar_independence(RequirementSet& rs,
                                             const std::vector<BooleanExpr>& exprs,
                                             bool collective, int line) {
    if (exprs.size() < 2) throw std::invalid_argument("independence needs at least two events");
    if (exprs.size() > 16)
        throw std::invalid_argument("collective independence capped at 16 expressions");
    std::vector<Constraint> out;
    auto product_row = [&](const std::vector<size_t>& sel) {
        BooleanExpr inter = exprs[sel[0]];
        for (size_t k = 1; k < sel.size(); ++k) inter = BooleanExpr::conj(inter, exprs[sel[k]]);
        Polynomial lhs = Polynomial::variable(rs.term_of(inter), VarSpace::X);
        Polynomial prod = Polynomial::constant(1, VarSpace::X);
        for (size_t k : sel) prod = prod * Polynomial::variable(rs.term_of(exprs[k]), VarSpace::X);
        out.push_back({lhs - prod, Relation::EqZero, {line, "independence"}});
    };
    if (!collective) {
        for (size_t i = 0; i < exprs.size(); ++i)
            for (size_t j = i + 1; j < exprs.size(); ++j) product_row({i, j});
        return out;
    }
    size_t m = exprs.size();
    // subsets in ascending mask order, |S| >= 2
    for (size_t mask = 3; mask < (size_t(1) << m); ++mask) {
        if (std::popcount(mask) < 2) continue;
        std::vector<size_t> sel;
        for (size_t i = 0; i < m; ++i)
            if ((mask >> i) & 1) sel.push_back(i);
        product_row(sel);
    }
    return out;
}

std::vector<Constraint> desugar_conditional_independence(RequirementSet& rs,
                                                         const BooleanExpr& a1,
                                                         const BooleanExpr& a2,
                                                         const BooleanExpr& a3, int line) {
    // cleared of denominators: x(a1&a2&a3)x(a3) - x(a1&a3)x(a2&a3) = 0, x(a3) != 0
    VarId v123 = rs.term_of(BooleanExpr::conj(BooleanExpr::conj(a1, a2), a3));
    VarId v13 = rs.term_of(BooleanExpr::conj(a1, a3));
    VarId v23 = rs.term_of(BooleanExpr::conj(a2, a3));
    VarId v3 = rs.term_of(a3);
    auto X = [&](VarId v) { return Polynomial::variable(v, VarSpace::X); };
    std::vector<Constraint> out;
    out.push_back({X(v123) * X(v3) - X(v13) * X(v23),
                   Relation::EqZero,
                   {line, "conditional-independence"}});
    out.push_back({X(v3), Relation::NeqZero, {line, "conditional-support"}});
    return out;
}

std::vector<Constraint> desugar_algebra_independence(RequirementSet& rs,
                                                     const std::vector<uint32_t>& left,
                                                     const std::vector<uint32_t>& right,
                                                     int line) {
    auto algebra_atoms = [&](const std::vector<uint32_t>& evs) {
        // minterms of the sub-algebra generated by evs, in ascending sign-mask order
        std::vector<BooleanExpr> out;
        for (size_t mask = 0; mask < (size_t(1) << evs.size()); ++mask) {
            BooleanExpr cur = (mask & 1) ? BooleanExpr::event(evs[0])
                                         : BooleanExpr::negation(BooleanExpr::event(evs[0]));
            for (size_t i = 1; i < evs.size(); ++i) {
                BooleanExpr lit = ((mask >> i) & 1)
                                      ? BooleanExpr::event(evs[i])
                                      : BooleanExpr::negation(BooleanExpr::event(evs[i]));
                cur = BooleanExpr::conj(cur, lit);
            }
            out.push_back(cur);
        }
        return out;
    };
    std::vector<Constraint> out;
    for (const BooleanExpr& beta : algebra_atoms(left)) {
        for (const BooleanExpr& alpha : algebra_atoms(right)) {
            VarId joint = rs.term_of(BooleanExpr::conj(beta, alpha));
            VarId vb = rs.term_of(beta);
            VarId va = rs.term_of(alpha);
            auto X = [&](VarId v) { return Polynomial::variable(v, VarSpace::X); };
            out.push_back({X(joint) - X(vb) * X(va),
                           Relation::EqZero,
                           {line, "algebra-independence"}});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// parser

namespace {

struct Cursor {
    const std::string& text;
    size_t pos = 0;
    int line = 1;
    int col = 1;

    explicit Cursor(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& msg) const { throw SpecError(line, col, msg); }

    char peek() const { return pos < text.size() ? text[pos] : '\0'; }
    char get() {
        char c = peek();
        if (c) {
            ++pos;
            if (c == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        return c;
    }
    void skip_space_in_line() {
        while (peek() == ' ' || peek() == '\t' || peek() == '\r') get();
        if (peek() == '#') {
            while (peek() && peek() != '\n') get();
        }
    }
    bool at_line_end() {
        skip_space_in_line();
        return peek() == '\n' || peek() == '\0';
    }
    void expect_line_end() {
        if (!at_line_end()) fail("unexpected trailing input");
        if (peek() == '\n') get();
    }
    bool eof() {
        for (;;) {
            skip_space_in_line();
            if (peek() == '\n') {
                get();
                continue;
            }
            return peek() == '\0';
        }
    }
    std::string ident() {
        skip_space_in_line();
        if (!std::isalpha((unsigned char)peek()) && peek() != '_') fail("expected identifier");
        std::string s;
        while (std::isalnum((unsigned char)peek()) || peek() == '_') s += get();
        return s;
    }
    bool try_char(char c) {
        skip_space_in_line();
        if (peek() == c) {
            get();
            return true;
        }
        return false;
    }
    void expect_char(char c) {
        if (!try_char(c)) fail(std::string("expected '") + c + "'");
    }
    std::string number() {
        skip_space_in_line();
        if (!std::isdigit((unsigned char)peek())) fail("expected a number");
        std::string s;
        while (std::isdigit((unsigned char)peek())) s += get();
        if (peek() == '.') {
            s += get();
            while (std::isdigit((unsigned char)peek())) s += get();
        } else if (peek() == '/') {
            s += get();
            while (std::isdigit((unsigned char)peek())) s += get();
        }
        return s;
    }
    std::string relop() {
        skip_space_in_line();
        std::string s;
        char c = peek();
        if (c == '=' ) { get(); return "="; }
        if (c == '!' ) { get(); expect_char('='); return "!="; }
        if (c == '<' || c == '>') {
            s += get();
            if (peek() == '=') s += get();
            return s;
        }
        fail("expected a relational operator");
    }
};

struct Parser {
    Cursor cur;
    RequirementSet rs;
    std::map<std::string, uint32_t> event_index;

    explicit Parser(const std::string& text) : cur(text) {}

    uint32_t lookup_event(const std::string& name) {
        auto it = event_index.find(name);
        if (it == event_index.end()) cur.fail("undeclared event '" + name + "'");
        return it->second;
    }

    // bexpr: disjunction of conjunctions of literals; ! > & > |
    BooleanExpr parse_bexpr() {
        BooleanExpr e = parse_conj();
        while (cur.try_char('|')) e = BooleanExpr::disj(e, parse_conj());
        return e;
    }
    BooleanExpr parse_conj() {
        BooleanExpr e = parse_literal();
        while (cur.try_char('&')) e = BooleanExpr::conj(e, parse_literal());
        return e;
    }
    BooleanExpr parse_literal() {
        cur.skip_space_in_line();
        if (cur.try_char('!')) return BooleanExpr::negation(parse_literal());
        if (cur.try_char('(')) {
            BooleanExpr e = parse_bexpr();
            cur.expect_char(')');
            return e;
        }
        if (cur.peek() == '$') cur.fail("unresolved parameter (use --set name=value)");
        std::string name = cur.ident();
        return BooleanExpr::event(lookup_event(name));
    }

    // argument of P(...): rejects a top-level '|' with a hint towards 'given'
    // and detects the conditional separator.
    struct PArg {
        BooleanExpr target;
        bool conditional = false;
        BooleanExpr given;
    };
    PArg parse_p_argument() {
        // scan ahead for a top-level '|' before the matching ')'
        {
            size_t depth = 0;
            for (size_t i = cur.pos; i < cur.text.size(); ++i) {
                char c = cur.text[i];
                if (c == '(') ++depth;
                else if (c == ')') {
                    if (depth == 0) break;
                    --depth;
                } else if (c == '|' && depth == 0) {
                    cur.fail("'|' at the top level of P(...) — for a conditional probability "
                             "write P(A given B); parenthesize the union as P((A | B))");
                } else if (c == '\n') {
                    break;
                }
            }
        }
        PArg out;
        out.target = parse_bexpr();
        cur.skip_space_in_line();
        // 'given' keyword?
        size_t save_pos = cur.pos;
        int save_line = cur.line, save_col = cur.col;
        if (std::isalpha((unsigned char)cur.peek())) {
            std::string word = cur.ident();
            if (word == "given") {
                out.conditional = true;
                out.given = parse_bexpr();
                return out;
            }
            cur.pos = save_pos;
            cur.line = save_line;
            cur.col = save_col;
        }
        return out;
    }

    // polyexpr over P(...) terms, ops + - *
    Polynomial parse_polyexpr() {
        Polynomial e = parse_polyterm();
        for (;;) {
            if (cur.try_char('+')) {
                e += parse_polyterm();
            } else {
                cur.skip_space_in_line();
                if (cur.peek() == '-') {
                    cur.get();
                    e -= parse_polyterm();
                } else {
                    break;
                }
            }
        }
        return e;
    }
    Polynomial parse_polyterm() {
        Polynomial e = parse_polyfactor();
        while (cur.try_char('*')) e = e * parse_polyfactor();
        return e;
    }
    Polynomial parse_polyfactor() {
        cur.skip_space_in_line();
        if (cur.try_char('-')) return -parse_polyfactor();
        if (cur.try_char('(')) {
            Polynomial e = parse_polyexpr();
            cur.expect_char(')');
            return e;
        }
        if (cur.peek() == '$') cur.fail("unresolved parameter (use --set name=value)");
        if (std::isdigit((unsigned char)cur.peek()))
            return Polynomial::constant(parse_number(cur.number()), VarSpace::X);
        std::string word = cur.ident();
        if (word != "P") cur.fail("expected a number or P(...) in constraint expression");
        cur.expect_char('(');
        PArg arg = parse_p_argument();
        if (arg.conditional)
            cur.fail("conditional probabilities are not allowed inside constraint expressions");
        cur.expect_char(')');
        return Polynomial::variable(rs.term_of(arg.target), VarSpace::X);
    }

    void parse_events_line() {
        int before = int(rs.events.size());
        for (;;) {
            cur.skip_space_in_line();
            if (cur.at_line_end()) break;
            std::string name = cur.ident();
            if (event_index.count(name)) cur.fail("duplicate event name '" + name + "'");
            if (name == "given" || name == "P" || name == "events" || name == "independent" ||
                name == "indep_algebras" || name == "constraint")
                cur.fail("'" + name + "' is reserved and cannot name an event");
            uint32_t idx = uint32_t(rs.events.size());
            rs.events.push_back({idx, name});
            event_index[name] = idx;
        }
        if (int(rs.events.size()) == before) cur.fail("events line declares no events");
        if (rs.events.size() > kMaxEvents)
            cur.fail("too many events (cap is " + std::to_string(kMaxEvents) + ")");
        rs.n = int(rs.events.size());
    }

    std::vector<uint32_t> parse_bracket_events() {
        cur.expect_char('[');
        std::vector<uint32_t> out;
        for (;;) {
            cur.skip_space_in_line();
            if (cur.try_char(']')) break;
            out.push_back(lookup_event(cur.ident()));
        }
        if (out.empty()) cur.fail("empty event list in indep_algebras");
        return out;
    }

    void run() {
        bool seen_events = false;
        while (!cur.eof()) {
            cur.skip_space_in_line();
            int line0 = cur.line;
            std::string head = cur.ident();
            if (head == "events") {
                if (seen_events) cur.fail("duplicate events line");
                parse_events_line();
                seen_events = true;
                cur.expect_line_end();
                continue;
            }
            if (!seen_events) cur.fail("the spec must declare events first");
            if (head == "P") {
                cur.expect_char('(');
                PArg arg = parse_p_argument();
                cur.expect_char(')');
                if (arg.conditional) {
                    std::string op = cur.relop();
                    if (op != "=") cur.fail("conditional probability statements use '='");
                    Rational c = parse_number(cur.number());
                    Statement st{Statement::Kind::Conditional, {arg.target, arg.given},
                                 {}, {}, "=", c, {}, {}, line0};
                    rs.statements.push_back(st);
                    auto cs = desugar_conditional(rs, arg.target, arg.given, c, line0);
                    rs.constraints.insert(rs.constraints.end(), cs.begin(), cs.end());
                } else {
                    std::string op = cur.relop();
                    Rational c = parse_number(cur.number());
                    if (c < 0 || c > 1)
                        rs.warnings.push_back("line " + std::to_string(line0) +
                                              ": probability constant " + rat_str(c) +
                                              " outside [0,1]; the solver will refute it");
                    Statement st{Statement::Kind::Prob, {arg.target}, {}, {}, op, c, {}, {}, line0};
                    rs.statements.push_back(st);
                    if (op == "=") {
                        rs.constraints.push_back(desugar_probability(rs, arg.target, c, line0));
                    } else {
                        auto [poly, rel] = normalize_relation(
                            Polynomial::variable(rs.term_of(arg.target), VarSpace::X), op,
                            Polynomial::constant(c, VarSpace::X));
                        rs.constraints.push_back({poly, rel, {line0, "probability-bound"}});
                    }
                }
                cur.expect_line_end();
                continue;
            }
            if (head == "independent") {
                std::vector<BooleanExpr> exprs;
                exprs.push_back(parse_bexpr());
                while (cur.try_char(',')) exprs.push_back(parse_bexpr());
                if (exprs.size() < 2) cur.fail("independent needs at least two expressions");
                Statement st{Statement::Kind::Independent, exprs, {}, {}, {}, Rational(0),
                             {}, {}, line0};
                rs.statements.push_back(st);
                auto cs = desugar_independence(rs, exprs, /*collective=*/true, line0);
                rs.constraints.insert(rs.constraints.end(), cs.begin(), cs.end());
                cur.expect_line_end();
                continue;
            }
            if (head == "indep_algebras") {
                auto left = parse_bracket_events();
                auto right = parse_bracket_events();
                Statement st{Statement::Kind::IndepAlgebras, {}, left, right, {}, Rational(0),
                             {}, {}, line0};
                rs.statements.push_back(st);
                auto cs = desugar_algebra_independence(rs, left, right, line0);
                rs.constraints.insert(rs.constraints.end(), cs.begin(), cs.end());
                cur.expect_line_end();
                continue;
            }
            if (head == "constraint") {
                Polynomial lhs = parse_polyexpr();
                std::string op = cur.relop();
                Polynomial rhs = parse_polyexpr();
                auto [poly, rel] = normalize_relation(lhs, op, rhs);
                if (poly.is_zero())
                    cur.fail("constraint normalizes to the zero polynomial");
                auto namer = [&](VarId v) { return rs.terms.label(v); };
                Statement st{Statement::Kind::PolyConstraint, {}, {}, {}, op, Rational(0),
                             lhs.to_string(namer), rhs.to_string(namer), line0};
                rs.statements.push_back(st);
                rs.constraints.push_back({poly, rel, {line0, "constraint"}});
                cur.expect_line_end();
                continue;
            }
            cur.fail("unknown statement '" + head + "'");
        }
        if (!seen_events) throw SpecError(1, 1, "the spec must declare events first");
    }
};

}  // namespace

RequirementSet parse_spec(const std::string& text) {
    Parser p(text);
    p.run();
    return std::move(p.rs);
}

std::string substitute_params(const std::string& text,
                              const std::map<std::string, std::string>& params) {
    std::string out;
    out.reserve(text.size());
    for (size_t i = 0; i < text.size();) {
        if (text[i] == '$') {
            size_t j = i + 1;
            std::string name;
            while (j < text.size() && (std::isalnum((unsigned char)text[j]) || text[j] == '_'))
                name += text[j++];
            auto it = params.find(name);
            if (it != params.end()) {
                out += it->second;
                i = j;
                continue;
            }
        }
        out += text[i++];
    }
    return out;
}

std::string print_spec(const RequirementSet& rs) {
    std::ostringstream os;
    os << "events";
    for (auto& e : rs.events) os << " " << e.name;
    os << "\n";
    for (auto& st : rs.statements) {
        switch (st.kind) {
            case Statement::Kind::Prob:
                os << "P(" << st.exprs[0].to_string(rs.events) << ") " << st.relop << " "
                   << rat_str(st.constant) << "\n";
                break;
            case Statement::Kind::Conditional:
                os << "P(" << st.exprs[0].to_string(rs.events) << " given "
                   << st.exprs[1].to_string(rs.events) << ") = " << rat_str(st.constant) << "\n";
                break;
            case Statement::Kind::Independent: {
                os << "independent ";
                for (size_t i = 0; i < st.exprs.size(); ++i)
                    os << (i ? ", " : "") << st.exprs[i].to_string(rs.events);
                os << "\n";
                break;
            }
            case Statement::Kind::IndepAlgebras: {
                os << "indep_algebras [";
                for (size_t i = 0; i < st.left.size(); ++i)
                    os << (i ? " " : "") << rs.events[st.left[i]].name;
                os << "] [";
                for (size_t i = 0; i < st.right.size(); ++i)
                    os << (i ? " " : "") << rs.events[st.right[i]].name;
                os << "]\n";
                break;
            }
            case Statement::Kind::PolyConstraint:
                os << "constraint " << st.lhs_text << " " << st.relop << " " << st.rhs_text
                   << "\n";
                break;
        }
    }
    return os.str();
}

}  // namespace probenv
