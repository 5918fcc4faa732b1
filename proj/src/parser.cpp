#include "parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "errors.hpp"

namespace mcl {

namespace {

enum class Tok { Ident, Colon, Period, Subsumes, LParen, RParen, Comma, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_ws();
        int line = line_, col = col_;
        if (pos_ >= text_.size()) return {Tok::End, "", line, col};
        char c = text_[pos_];
        if (ident_start(c)) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && ident_char(text_[pos_])) advance();
            return {Tok::Ident, std::string(text_.substr(start, pos_ - start)), line, col};
        }
        switch (c) {
            case ':':
                advance();
                return {Tok::Colon, ":", line, col};
            case '.':
                advance();
                return {Tok::Period, ".", line, col};
            case '(':
                advance();
                return {Tok::LParen, "(", line, col};
            case ')':
                advance();
                return {Tok::RParen, ")", line, col};
            case ',':
                advance();
                return {Tok::Comma, ",", line, col};
            case '<':
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
                    advance();
                    advance();
                    return {Tok::Subsumes, "<=", line, col};
                }
                break;
            default:
                break;
        }
        throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

const std::array<std::string_view, 11> kKeywords = {"strict", "module", "subject", "abox",  "not", "and",
                                                    "or",     "exists", "forall",  "Top",   "Bot"};

bool is_keyword(std::string_view s) {
    return std::find(kKeywords.begin(), kKeywords.end(), s) != kKeywords.end();
}

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) { shift(); }

    ModularKB kb() {
        ModularKB out;
        if (cur_.kind == Tok::End) fail("expected at least one section");
        while (cur_.kind != Tok::End) section(out);
        return out;
    }

    Query query() {
        Query q = query_body();
        expect(Tok::Period, "'.'");
        if (cur_.kind != Tok::End) fail("trailing input after query");
        return q;
    }

    Concept bare_concept() {
        Concept c = concept_expr();
        if (cur_.kind != Tok::End) fail("trailing input after concept");
        return c;
    }

private:
    void shift() {
        cur_ = peeked_ ? *peeked_ : lexer_.next();
        peeked_.reset();
    }

    const Token& peek() {
        if (!peeked_) peeked_ = lexer_.next();
        return *peeked_;
    }

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(cur_.line, cur_.col, msg); }

    bool at_ident(std::string_view word) const { return cur_.kind == Tok::Ident && cur_.text == word; }

    Token expect(Tok kind, const std::string& what) {
        if (cur_.kind != kind) fail("expected " + what);
        Token t = cur_;
        shift();
        return t;
    }

    std::string expect_name(const std::string& what) {
        if (cur_.kind != Tok::Ident) fail("expected " + what);
        if (is_keyword(cur_.text)) fail("keyword '" + cur_.text + "' cannot be used as " + what);
        std::string n = cur_.text;
        shift();
        return n;
    }

    bool at_section_start() const {
        return at_ident("strict") || at_ident("module") || at_ident("abox");
    }

    void section(ModularKB& out) {
        if (at_ident("strict")) {
            shift();
            expect(Tok::Colon, "':' after 'strict'");
            while (cur_.kind != Tok::End && !at_section_start()) out.strict.push_back(axiom());
        } else if (at_ident("module")) {
            shift();
            Token name_tok = cur_;
            std::string name = expect_name("a module name");
            if (out.find_module(name))
                throw ParseError(name_tok.line, name_tok.col, "duplicate module name: " + name);
            if (!at_ident("subject")) fail("expected 'subject'");
            shift();
            Concept subject = concept_expr();
            expect(Tok::Colon, "':' after the module subject");
            DefeasibleModule mod{name, subject, {}};
            while (cur_.kind != Tok::End && !at_section_start()) {
                TypicalityInclusion d = default_inclusion();
                if (std::find(mod.defaults.begin(), mod.defaults.end(), d) == mod.defaults.end())
                    mod.defaults.push_back(d);
            }
            out.modules.push_back(std::move(mod));
        } else if (at_ident("abox")) {
            shift();
            expect(Tok::Colon, "':' after 'abox'");
            while (cur_.kind != Tok::End && !at_section_start()) out.abox.push_back(assertion());
        } else {
            fail("expected a 'strict', 'module' or 'abox' section");
        }
    }

    StrictInclusion axiom() {
        Concept lhs = concept_expr();
        expect(Tok::Subsumes, "'<='");
        Concept rhs = concept_expr();
        expect(Tok::Period, "'.' at the end of the axiom");
        return {lhs, rhs};
    }

    bool at_typicality() {
        return cur_.kind == Tok::Ident && cur_.text == "T" && peek().kind == Tok::LParen;
    }

    TypicalityInclusion default_inclusion() {
        if (!at_typicality()) fail("expected a default of the form 'T(C) <= D.'");
        shift();  // T
        expect(Tok::LParen, "'('");
        Concept ante = concept_expr();
        expect(Tok::RParen, "')'");
        expect(Tok::Subsumes, "'<='");
        Concept cons = concept_expr();
        expect(Tok::Period, "'.' at the end of the default");
        return {ante, cons};
    }

    Assertion assertion() {
        std::string first = expect_name("a concept or role name");
        expect(Tok::LParen, "'('");
        std::string a = expect_name("an individual name");
        if (cur_.kind == Tok::Comma) {
            shift();
            std::string b = expect_name("an individual name");
            expect(Tok::RParen, "')'");
            expect(Tok::Period, "'.'");
            return RoleAssertion{first, a, b};
        }
        expect(Tok::RParen, "')'");
        expect(Tok::Period, "'.'");
        return ConceptAssertion{Concept::name(first), a};
    }

    Query query_body() {
        if (at_typicality()) {
            shift();
            expect(Tok::LParen, "'('");
            Concept ante = concept_expr();
            expect(Tok::RParen, "')'");
            expect(Tok::Subsumes, "'<='");
            Concept cons = concept_expr();
            return DefeasibleQuery{ante, cons};
        }
        if (cur_.kind == Tok::Ident && !is_keyword(cur_.text) && peek().kind == Tok::LParen) {
            std::string first = expect_name("a name");
            expect(Tok::LParen, "'('");
            std::string a = expect_name("an individual name");
            if (cur_.kind == Tok::Comma) {
                shift();
                std::string b = expect_name("an individual name");
                expect(Tok::RParen, "')'");
                return Assertion{RoleAssertion{first, a, b}};
            }
            expect(Tok::RParen, "')'");
            return Assertion{ConceptAssertion{Concept::name(first), a}};
        }
        Concept lhs = concept_expr();
        expect(Tok::Subsumes, "'<='");
        Concept rhs = concept_expr();
        return StrictInclusion{lhs, rhs};
    }

    // concept := or_expr; "not" binds tighter than "and" which binds tighter
    // than "or"; a quantifier takes the longest concept after its dot.
    Concept concept_expr() { return or_expr(); }

    Concept or_expr() {
        Concept c = and_expr();
        while (at_ident("or")) {
            shift();
            c = Concept::disj(c, and_expr());
        }
        return c;
    }

    Concept and_expr() {
        Concept c = unary();
        while (at_ident("and")) {
            shift();
            c = Concept::conj(c, unary());
        }
        return c;
    }

    Concept unary() {
        if (++depth_ > kMaxNesting) fail("concept nesting too deep");
        Concept c = unary_inner();
        --depth_;
        return c;
    }

    Concept unary_inner() {
        if (at_ident("not")) {
            shift();
            return Concept::negation(unary());
        }
        if (at_ident("exists") || at_ident("forall")) {
            bool ex = cur_.text == "exists";
            shift();
            std::string role = expect_name("a role name");
            expect(Tok::Period, "'.' after the role name");
            Concept body = or_expr();
            return ex ? Concept::exists(role, body) : Concept::forall(role, body);
        }
        return primary();
    }

    Concept primary() {
        if (at_ident("Top")) {
            shift();
            return Concept::top();
        }
        if (at_ident("Bot")) {
            shift();
            return Concept::bot();
        }
        if (cur_.kind == Tok::LParen) {
            shift();
            Concept c = or_expr();
            expect(Tok::RParen, "')'");
            return c;
        }
        if (cur_.kind == Tok::Ident) {
            if (is_keyword(cur_.text)) fail("unexpected keyword '" + cur_.text + "'");
            if (cur_.text == "T" && peek().kind == Tok::LParen)
                fail("typicality wrapper is only allowed on the left-hand side of a default");
            std::string n = cur_.text;
            shift();
            return Concept::name(n);
        }
        fail("expected a concept");
    }

    static constexpr int kMaxNesting = 4096;

    Lexer lexer_;
    Token cur_{Tok::End, "", 0, 0};
    std::optional<Token> peeked_;
    int depth_ = 0;
};

}  // namespace

ModularKB parse_kb(std::string_view text) { return Parser(text).kb(); }

Query parse_query(std::string_view text) { return Parser(text).query(); }

Concept parse_concept(std::string_view text) { return Parser(text).bare_concept(); }

}  // namespace mcl
