#pragma once

#include "endsum/manifold.hpp"
#include "endsum/space.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace endsum {

struct SourcePos {
    int line = 1;
    int col = 1;
};

struct Diagnostic {
    SourcePos pos;
    std::string message;
    std::vector<std::string> expected;

    std::string to_string(const std::string& filename = "<scenario>") const
    {
        std::ostringstream out;
        out << filename << ":" << pos.line << ":" << pos.col << ": error: " << message;
        if (!expected.empty()) {
            out << " (expected ";
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (i > 0)
                    out << (i + 1 == expected.size() ? " or " : ", ");
                out << expected[i];
            }
            out << ")";
        }
        return out.str();
    }
};

class ScenarioError : public std::runtime_error {
public:
    explicit ScenarioError(Diagnostic d) : std::runtime_error(d.to_string()), diagnostic(std::move(d)) {}
    Diagnostic diagnostic;
};

// -- AST -------------------------------------------------------------------

struct NodeSelector {
    enum class Kind { star, pattern, index };
    Kind kind = Kind::star;
    std::optional<ManifoldExpr> pattern;
    std::size_t index = 0;
    SourcePos pos;

    std::string to_string() const
    {
        switch (kind) {
        case Kind::star: return "*";
        case Kind::index: return "#" + std::to_string(index);
        case Kind::pattern: return pattern->to_string();
        }
        return {};
    }
};

struct SpaceRef {
    std::string name;
    NodeSelector selector;
    SourcePos pos;

    std::string to_string() const { return name + " @ " + selector.to_string(); }
};

struct SpaceExprAst {
    enum class Kind { stringer, ladder, csi, capped_chain };
    Kind kind = Kind::stringer;
    std::vector<ManifoldExpr> mfds;
    std::vector<SpaceRef> refs;
    std::vector<std::int64_t> primes;
    SourcePos pos;

    std::string to_string() const
    {
        switch (kind) {
        case Kind::stringer:
            return "stringer(" + mfds[0].to_string() + ")";
        case Kind::ladder:
            return "ladder(" + mfds[0].to_string() + ", " + mfds[1].to_string() + ")";
        case Kind::csi:
            return "csi(" + refs[0].to_string() + ", " + refs[1].to_string() + ")";
        case Kind::capped_chain: {
            std::string out = "M(";
            for (std::size_t i = 0; i < primes.size(); ++i) {
                if (i > 0)
                    out += ",";
                out += std::to_string(primes[i]);
            }
            return out + ")";
        }
        }
        return {};
    }
};

struct Decl {
    std::string name;
    SpaceExprAst expr;
    std::vector<std::string> caps;
    SourcePos pos;
};

struct Directive {
    enum class Kind { invariants, distinguish, census, oracle_check };
    Kind kind = Kind::invariants;
    std::vector<std::string> names;
    std::vector<std::int64_t> primes;
    std::optional<SpaceExprAst> space_expr; // oracle-check target
    std::int64_t prime = 0;                 // oracle-check prime
    int depth = 0;                          // oracle-check truncation depth
    SourcePos pos;
};

using ScenarioItem = std::variant<Decl, Directive>;

struct ScenarioDoc {
    std::vector<ScenarioItem> items;
    std::map<std::string, Space> spaces; // elaborated declarations

    std::size_t decl_count() const
    {
        std::size_t n = 0;
        for (const ScenarioItem& it : items)
            if (std::holds_alternative<Decl>(it))
                ++n;
        return n;
    }
    std::size_t directive_count() const { return items.size() - decl_count(); }

    std::string print() const
    {
        std::ostringstream out;
        for (const ScenarioItem& item : items) {
            if (const Decl* d = std::get_if<Decl>(&item)) {
                out << "space " << d->name << " = " << d->expr.to_string();
                for (const std::string& cap : d->caps)
                    out << " cap " << cap;
                out << "\n";
                continue;
            }
            const Directive& dir = std::get<Directive>(item);
            auto primes = [&](const std::vector<std::int64_t>& ps) {
                std::string s;
                for (std::size_t i = 0; i < ps.size(); ++i) {
                    if (i > 0)
                        s += ",";
                    s += std::to_string(ps[i]);
                }
                return s;
            };
            switch (dir.kind) {
            case Directive::Kind::invariants:
                out << "invariants " << dir.names[0] << " primes " << primes(dir.primes) << "\n";
                break;
            case Directive::Kind::distinguish:
                out << "distinguish " << dir.names[0] << " " << dir.names[1] << " primes "
                    << primes(dir.primes) << "\n";
                break;
            case Directive::Kind::census:
                out << "census " << dir.names[0] << " primes " << primes(dir.primes) << "\n";
                break;
            case Directive::Kind::oracle_check:
                out << "oracle-check " << dir.space_expr->to_string() << " prime " << dir.prime
                    << " depth " << dir.depth << "\n";
                break;
            }
        }
        return out.str();
    }
};

// -- lexer -------------------------------------------------------------------

namespace detail {

struct Token {
    enum class Kind { ident, number, lparen, rparen, comma, equals, at, hash, star, end };
    Kind kind = Kind::end;
    std::string text;
    std::int64_t value = 0;
    SourcePos pos;
};

inline const char* token_name(Token::Kind k)
{
    switch (k) {
    case Token::Kind::ident: return "identifier";
    case Token::Kind::number: return "integer";
    case Token::Kind::lparen: return "'('";
    case Token::Kind::rparen: return "')'";
    case Token::Kind::comma: return "','";
    case Token::Kind::equals: return "'='";
    case Token::Kind::at: return "'@'";
    case Token::Kind::hash: return "'#'";
    case Token::Kind::star: return "'*'";
    case Token::Kind::end: return "end of input";
    }
    return "?";
}

inline std::vector<Token> lex(std::string_view text)
{
    std::vector<Token> out;
    SourcePos cur;
    std::size_t i = 0;
    auto advance = [&](char c) {
        if (c == '\n') {
            ++cur.line;
            cur.col = 1;
        } else {
            ++cur.col;
        }
    };
    while (i < text.size()) {
        const char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(c);
            ++i;
            continue;
        }
        Token tok;
        tok.pos = cur;
        auto single = [&](Token::Kind k) {
            tok.kind = k;
            tok.text = std::string(1, c);
            advance(c);
            ++i;
        };
        if (c == '(') { single(Token::Kind::lparen); }
        else if (c == ')') { single(Token::Kind::rparen); }
        else if (c == ',') { single(Token::Kind::comma); }
        else if (c == '=') { single(Token::Kind::equals); }
        else if (c == '@') { single(Token::Kind::at); }
        else if (c == '#') { single(Token::Kind::hash); }
        else if (c == '*') { single(Token::Kind::star); }
        else if (c >= '0' && c <= '9') {
            tok.kind = Token::Kind::number;
            while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
                tok.text += text[i];
                advance(text[i]);
                ++i;
            }
            if (tok.text.size() > 18)
                throw ScenarioError({tok.pos, "integer literal too large", {}});
            tok.value = std::stoll(tok.text);
        } else if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
            tok.kind = Token::Kind::ident;
            // '-' continues an identifier so that oracle-check is one word
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_' ||
                    text[i] == '-')) {
                tok.text += text[i];
                advance(text[i]);
                ++i;
            }
        } else {
            throw ScenarioError({cur, std::string("unexpected character '") + c + "'", {}});
        }
        out.push_back(std::move(tok));
    }
    Token end;
    end.kind = Token::Kind::end;
    end.pos = cur;
    out.push_back(end);
    return out;
}

} // namespace detail

// -- parser + elaborator -----------------------------------------------------

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view text) : tokens_(lex(text)) {}

    ScenarioDoc parse()
    {
        ScenarioDoc doc;
        while (peek().kind != Token::Kind::end) {
            const Token& t = peek();
            if (t.kind != Token::Kind::ident)
                fail(t, "expected a declaration or directive",
                     {"'space'", "'invariants'", "'distinguish'", "'census'", "'oracle-check'"});
            if (t.text == "space")
                doc.items.emplace_back(parse_decl(doc));
            else if (t.text == "invariants" || t.text == "distinguish" || t.text == "census" ||
                     t.text == "oracle-check")
                doc.items.emplace_back(parse_directive(doc));
            else
                fail(t, "unknown item '" + t.text + "'",
                     {"'space'", "'invariants'", "'distinguish'", "'census'", "'oracle-check'"});
        }
        return doc;
    }

private:
    // ---- token plumbing
    const Token& peek(std::size_t ahead = 0) const
    {
        return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
    }
    const Token& advance() { return tokens_[pos_++]; }

    [[noreturn]] void fail(const Token& at, std::string message,
                           std::vector<std::string> expected = {}) const
    {
        throw ScenarioError({at.pos, std::move(message), std::move(expected)});
    }

    const Token& expect(Token::Kind kind, const std::string& what)
    {
        const Token& t = peek();
        if (t.kind != kind)
            fail(t, "unexpected " + describe(t), {what});
        return advance();
    }

    const Token& expect_keyword(const std::string& word)
    {
        const Token& t = peek();
        if (t.kind != Token::Kind::ident || t.text != word)
            fail(t, "unexpected " + describe(t), {"'" + word + "'"});
        return advance();
    }

    static std::string describe(const Token& t)
    {
        if (t.kind == Token::Kind::ident)
            return "identifier '" + t.text + "'";
        if (t.kind == Token::Kind::number)
            return "integer " + t.text;
        return std::string(token_name(t.kind));
    }

    std::int64_t expect_number(const std::string& what)
    {
        return expect(Token::Kind::number, what).value;
    }

    // ---- manifold expressions: '#' over 'x' over atoms
    ManifoldExpr parse_mfd()
    {
        ManifoldExpr left = parse_mfd_product();
        while (peek().kind == Token::Kind::hash) {
            const Token& op = advance();
            ManifoldExpr right = parse_mfd_product();
            left = build(op, [&] { return ManifoldExpr::conn_sum(left, right); });
        }
        return left;
    }

    ManifoldExpr parse_mfd_product()
    {
        ManifoldExpr left = parse_mfd_atom();
        while (peek().kind == Token::Kind::ident && peek().text == "x") {
            const Token& op = advance();
            ManifoldExpr right = parse_mfd_atom();
            left = build(op, [&] { return ManifoldExpr::product(left, right); });
        }
        return left;
    }

    ManifoldExpr parse_mfd_atom()
    {
        const Token& t = peek();
        if (t.kind == Token::Kind::lparen) {
            advance();
            ManifoldExpr inner = parse_mfd();
            expect(Token::Kind::rparen, "')'");
            return inner;
        }
        if (t.kind != Token::Kind::ident)
            fail(t, "unexpected " + describe(t), {"'S'", "'L'", "'Sigma'", "'T'", "'('"});
        advance();
        expect(Token::Kind::lparen, "'('");
        const Token& num = peek();
        std::int64_t value = expect_number("integer");
        expect(Token::Kind::rparen, "')'");
        if (t.text == "S")
            return build(num, [&] { return ManifoldExpr::sphere(value); });
        if (t.text == "L")
            return build(num, [&] { return ManifoldExpr::lens(value); });
        if (t.text == "Sigma")
            return build(num, [&] { return ManifoldExpr::surface(value); });
        if (t.text == "T")
            return build(num, [&] { return ManifoldExpr::torus(value); });
        fail(t, "unknown manifold constructor '" + t.text + "'",
             {"'S'", "'L'", "'Sigma'", "'T'"});
    }

    template <typename F>
    auto build(const Token& at, F&& f) -> decltype(f())
    {
        try {
            return f();
        } catch (const std::invalid_argument& e) {
            fail(at, e.what());
        }
    }

    // ---- space expressions
    SpaceExprAst parse_space_expr()
    {
        SpaceExprAst ast;
        const Token& head = peek();
        ast.pos = head.pos;
        if (head.kind != Token::Kind::ident)
            fail(head, "unexpected " + describe(head),
                 {"'stringer'", "'ladder'", "'csi'", "'M'"});
        advance();
        expect(Token::Kind::lparen, "'('");
        if (head.text == "stringer") {
            ast.kind = SpaceExprAst::Kind::stringer;
            ast.mfds.push_back(parse_mfd());
        } else if (head.text == "ladder") {
            ast.kind = SpaceExprAst::Kind::ladder;
            ast.mfds.push_back(parse_mfd());
            expect(Token::Kind::comma, "','");
            ast.mfds.push_back(parse_mfd());
        } else if (head.text == "csi") {
            ast.kind = SpaceExprAst::Kind::csi;
            ast.refs.push_back(parse_space_ref());
            expect(Token::Kind::comma, "','");
            ast.refs.push_back(parse_space_ref());
        } else if (head.text == "M") {
            ast.kind = SpaceExprAst::Kind::capped_chain;
            ast.primes.push_back(expect_number("prime"));
            while (peek().kind == Token::Kind::comma) {
                advance();
                ast.primes.push_back(expect_number("prime"));
            }
        } else {
            fail(head, "unknown space constructor '" + head.text + "'",
                 {"'stringer'", "'ladder'", "'csi'", "'M'"});
        }
        expect(Token::Kind::rparen, "')'");
        return ast;
    }

    SpaceRef parse_space_ref()
    {
        SpaceRef ref;
        const Token& name = expect(Token::Kind::ident, "space name");
        ref.name = name.text;
        ref.pos = name.pos;
        expect(Token::Kind::at, "'@'");
        ref.selector.pos = peek().pos;
        if (peek().kind == Token::Kind::star) {
            advance();
            ref.selector.kind = NodeSelector::Kind::star;
        } else if (peek().kind == Token::Kind::hash) {
            advance();
            ref.selector.kind = NodeSelector::Kind::index;
            ref.selector.index = static_cast<std::size_t>(expect_number("node index"));
        } else {
            ref.selector.kind = NodeSelector::Kind::pattern;
            ref.selector.pattern = parse_mfd();
        }
        return ref;
    }

    // ---- declarations and directives (elaborated against doc.spaces)
    Decl parse_decl(ScenarioDoc& doc)
    {
        Decl decl;
        decl.pos = peek().pos;
        expect_keyword("space");
        const Token& name = expect(Token::Kind::ident, "space name");
        decl.name = name.text;
        if (doc.spaces.find(decl.name) != doc.spaces.end())
            fail(name, "space '" + decl.name + "' is already declared");
        expect(Token::Kind::equals, "'='");
        decl.expr = parse_space_expr();

        Space space = elaborate_space_expr(decl.expr, doc);
        while (peek().kind == Token::Kind::ident && peek().text == "cap") {
            advance();
            const Token& capTok = expect(Token::Kind::ident, "cap name");
            std::string cap = capTok.text;
            if (peek().kind == Token::Kind::lparen) {
                advance();
                cap += "(" + std::to_string(expect_number("integer")) + ")";
                expect(Token::Kind::rparen, "')'");
            }
            if (decl.caps.size() >= space.node_count())
                fail(capTok, "more caps than nodes (space has " +
                                 std::to_string(space.node_count()) + " nodes)");
            space.add_cap(decl.caps.size(), cap);
            decl.caps.push_back(std::move(cap));
        }
        doc.spaces.emplace(decl.name, std::move(space));
        return decl;
    }

    std::vector<std::int64_t> parse_prime_list()
    {
        std::vector<std::int64_t> primes;
        for (;;) {
            const Token& num = peek();
            std::int64_t p = expect_number("prime");
            if (!is_prime(p))
                fail(num, std::to_string(p) + " is not prime");
            primes.push_back(p);
            if (peek().kind != Token::Kind::comma)
                break;
            advance();
        }
        return primes;
    }

    const Space& resolve_name(const ScenarioDoc& doc, const Token& name) const
    {
        auto it = doc.spaces.find(name.text);
        if (it == doc.spaces.end())
            fail(name, "unknown space '" + name.text + "'");
        return it->second;
    }

    Directive parse_directive(ScenarioDoc& doc)
    {
        Directive dir;
        const Token& head = advance();
        dir.pos = head.pos;
        if (head.text == "invariants" || head.text == "census") {
            dir.kind = head.text == "invariants" ? Directive::Kind::invariants
                                                 : Directive::Kind::census;
            const Token& name = expect(Token::Kind::ident, "space name");
            resolve_name(doc, name);
            dir.names.push_back(name.text);
            expect_keyword("primes");
            dir.primes = parse_prime_list();
        } else if (head.text == "distinguish") {
            dir.kind = Directive::Kind::distinguish;
            const Token& a = expect(Token::Kind::ident, "space name");
            const Space& sa = resolve_name(doc, a);
            const Token& b = expect(Token::Kind::ident, "space name");
            const Space& sb = resolve_name(doc, b);
            if (sa.dim() != sb.dim())
                fail(b, "dimension mismatch (" + std::to_string(sa.dim()) + " vs " +
                            std::to_string(sb.dim()) + ")");
            dir.names.push_back(a.text);
            dir.names.push_back(b.text);
            expect_keyword("primes");
            dir.primes = parse_prime_list();
        } else { // oracle-check
            dir.kind = Directive::Kind::oracle_check;
            dir.space_expr = parse_space_expr();
            Space target = elaborate_space_expr(*dir.space_expr, doc);
            if (path_order(target).empty())
                fail(head, "oracle-check requires a path-shaped space");
            expect_keyword("prime");
            const Token& num = peek();
            dir.prime = expect_number("prime");
            if (!is_prime(dir.prime))
                fail(num, std::to_string(dir.prime) + " is not prime");
            if (peek().kind == Token::Kind::ident && peek().text == "depth") {
                advance();
                const Token& depthTok = peek();
                dir.depth = static_cast<int>(expect_number("depth"));
                if (dir.depth < 1)
                    fail(depthTok, "depth must be at least 1");
            } else {
                dir.depth = 8;
            }
        }
        return dir;
    }

public:
    Space elaborate_space_expr(const SpaceExprAst& ast, const ScenarioDoc& doc)
    {
        switch (ast.kind) {
        case SpaceExprAst::Kind::stringer:
            return build_at(ast.pos, [&] { return make_stringer(ast.mfds[0]); });
        case SpaceExprAst::Kind::ladder:
            return build_at(ast.pos, [&] { return make_ladder(ast.mfds[0], ast.mfds[1]); });
        case SpaceExprAst::Kind::capped_chain: {
            for (std::int64_t p : ast.primes)
                if (!is_prime(p))
                    throw ScenarioError(
                        {ast.pos, std::to_string(p) + " is not prime", {}});
            return build_at(ast.pos, [&] { return generalized_capped_ladder(ast.primes); });
        }
        case SpaceExprAst::Kind::csi: {
            const SpaceRef& ra = ast.refs[0];
            const SpaceRef& rb = ast.refs[1];
            auto ita = doc.spaces.find(ra.name);
            if (ita == doc.spaces.end())
                throw ScenarioError({ra.pos, "unknown space '" + ra.name + "'", {}});
            auto itb = doc.spaces.find(rb.name);
            if (itb == doc.spaces.end())
                throw ScenarioError({rb.pos, "unknown space '" + rb.name + "'", {}});
            NodeId u = select_node(ita->second, ra);
            NodeId v = select_node(itb->second, rb);
            return build_at(ast.pos, [&] { return csi(ita->second, u, itb->second, v); });
        }
        }
        throw std::logic_error("elaborate_space_expr: unreachable");
    }

private:
    template <typename F>
    Space build_at(SourcePos pos, F&& f)
    {
        try {
            return f();
        } catch (const std::invalid_argument& e) {
            throw ScenarioError({pos, e.what(), {}});
        }
    }

    NodeId select_node(const Space& s, const SpaceRef& ref) const
    {
        const NodeSelector& sel = ref.selector;
        switch (sel.kind) {
        case NodeSelector::Kind::star:
            if (s.node_count() != 1)
                throw ScenarioError({sel.pos,
                                     "'*' selects the node of a single-node space, but '" +
                                         ref.name + "' has " + std::to_string(s.node_count()) +
                                         " nodes",
                                     {}});
            return 0;
        case NodeSelector::Kind::index:
            if (sel.index >= s.node_count())
                throw ScenarioError({sel.pos,
                                     "node index #" + std::to_string(sel.index) +
                                         " out of range for '" + ref.name + "' (" +
                                         std::to_string(s.node_count()) + " nodes)",
                                     {}});
            return sel.index;
        case NodeSelector::Kind::pattern: {
            std::vector<NodeId> matches = s.nodes_labeled(*sel.pattern);
            if (matches.empty())
                throw ScenarioError({sel.pos,
                                     "'" + ref.name + "' has no node labeled " +
                                         sel.pattern->to_string(),
                                     {}});
            if (matches.size() > 1)
                throw ScenarioError({sel.pos,
                                     "node label " + sel.pattern->to_string() +
                                         " is ambiguous in '" + ref.name +
                                         "'; select by index with @#i",
                                     {}});
            return matches[0];
        }
        }
        throw std::logic_error("select_node: unreachable");
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses and elaborates a scenario.  Throws ScenarioError carrying the
/// first diagnostic (position, message, expected-token set).
inline ScenarioDoc parse_scenario(std::string_view text)
{
    detail::Parser parser(text);
    return parser.parse();
}

/// Elaborates a standalone space expression against already-declared spaces.
inline Space elaborate_space(const SpaceExprAst& ast, const ScenarioDoc& doc)
{
    detail::Parser parser("");
    return parser.elaborate_space_expr(ast, doc);
}

} // namespace endsum
