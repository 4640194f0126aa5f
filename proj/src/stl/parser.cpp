#include "t3/stl/parser.hpp"

#include <cctype>
#include <cstdlib>

namespace t3::stl {

namespace {

enum class Tok {
    Ident,   // IDENT or keyword (and/or/not/in/holds/F/G/U/inf)
    Number,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Arrow,     // ->
    DblArrow,  // <->
    End,
};

struct Token {
    Tok kind;
    std::string text;
    double number = 0.0;
    int line = 1;
    int column = 1;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) bump();
        current_.line = line_;
        current_.column = column_;
        if (pos_ >= text_.size()) {
            current_.kind = Tok::End;
            current_.text = "<end of input>";
            return;
        }
        char c = text_[pos_];
        if (c == '(') { single(Tok::LParen, "("); return; }
        if (c == ')') { single(Tok::RParen, ")"); return; }
        if (c == '[') { single(Tok::LBracket, "["); return; }
        if (c == ']') { single(Tok::RBracket, "]"); return; }
        if (c == ',') { single(Tok::Comma, ","); return; }
        if (c == '<') {
            expect_seq("<->", Tok::DblArrow);
            return;
        }
        if (c == '-') {
            expect_seq("->", Tok::Arrow);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::string num;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
                    text_[pos_] == 'e' || text_[pos_] == 'E' ||
                    ((text_[pos_] == '+' || text_[pos_] == '-') && pos_ > 0 &&
                     (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')))) {
                num += text_[pos_];
                bump();
            }
            current_.kind = Tok::Number;
            current_.text = num;
            current_.number = std::strtod(num.c_str(), nullptr);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string ident;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ident += text_[pos_];
                bump();
            }
            current_.kind = Tok::Ident;
            current_.text = ident;
            return;
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", line_, column_, {});
    }

    void single(Tok kind, const char* text) {
        current_.kind = kind;
        current_.text = text;
        bump();
    }

    void expect_seq(const std::string& seq, Tok kind) {
        if (text_.compare(pos_, seq.size(), seq) != 0)
            throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", line_,
                             column_, {seq});
        current_.kind = kind;
        current_.text = seq;
        for (size_t i = 0; i < seq.size(); ++i) bump();
    }

    void bump() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    const std::string& text_;
    size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
    Token current_;
};

class Parser {
  public:
    explicit Parser(const std::string& text) : lex_(text) {}

    FormulaPtr parse() {
        FormulaPtr f = parse_iff();
        if (lex_.peek().kind != Tok::End)
            fail("trailing input after formula", {"<end of input>"});
        return f;
    }

  private:
    [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) {
        const Token& t = lex_.peek();
        throw ParseError(what + " (got '" + t.text + "')", t.line, t.column, std::move(expected));
    }

    bool at_keyword(const char* kw) const {
        return lex_.peek().kind == Tok::Ident && lex_.peek().text == kw;
    }

    void expect(Tok kind, const char* what) {
        if (lex_.peek().kind != kind) fail(std::string("expected ") + what, {what});
        lex_.take();
    }

    FormulaPtr parse_iff() {
        FormulaPtr f = parse_implies();
        while (lex_.peek().kind == Tok::DblArrow) {
            lex_.take();
            f = mk_iff(std::move(f), parse_implies());
        }
        return f;
    }

    FormulaPtr parse_implies() {
        FormulaPtr f = parse_or();
        while (lex_.peek().kind == Tok::Arrow) {
            lex_.take();
            f = mk_implies(std::move(f), parse_or());
        }
        return f;
    }

    FormulaPtr parse_or() {
        FormulaPtr f = parse_and();
        while (at_keyword("or")) {
            lex_.take();
            f = mk_or(std::move(f), parse_and());
        }
        return f;
    }

    FormulaPtr parse_and() {
        FormulaPtr f = parse_term();
        while (at_keyword("and")) {
            lex_.take();
            f = mk_and(std::move(f), parse_term());
        }
        return f;
    }

    Interval parse_optional_interval() {
        if (lex_.peek().kind != Tok::LBracket) return Interval::all();
        lex_.take();
        if (lex_.peek().kind != Tok::Number) fail("expected interval lower bound", {"NUMBER"});
        double lo = lex_.take().number;
        expect(Tok::Comma, ",");
        double hi;
        if (at_keyword("inf")) {
            lex_.take();
            hi = std::numeric_limits<double>::infinity();
        } else if (lex_.peek().kind == Tok::Number) {
            hi = lex_.take().number;
        } else {
            fail("expected interval upper bound", {"NUMBER", "inf"});
        }
        const Token& close = lex_.peek();
        if (hi < lo)
            throw ParseError("interval upper bound is below lower bound", close.line, close.column, {});
        expect(Tok::RBracket, "]");
        return Interval{lo, hi};
    }

    FormulaPtr parse_predicate(PredicateKind kind) {
        lex_.take();  // 'in' / 'holds'
        expect(Tok::LParen, "(");
        if (lex_.peek().kind != Tok::Ident) fail("expected identifier", {"IDENT"});
        std::string name = lex_.take().text;
        expect(Tok::RParen, ")");
        return kind == PredicateKind::In ? pred_in(std::move(name)) : pred_holds(std::move(name));
    }

    FormulaPtr parse_term() {
        if (at_keyword("not")) {
            lex_.take();
            return mk_not(parse_term());
        }
        if (at_keyword("F") || at_keyword("G")) {
            bool is_finally = lex_.peek().text == "F";
            lex_.take();
            Interval iv = parse_optional_interval();
            expect(Tok::LParen, "(");
            FormulaPtr body = parse_iff();
            expect(Tok::RParen, ")");
            return is_finally ? mk_finally(iv, std::move(body)) : mk_globally(iv, std::move(body));
        }
        if (at_keyword("in")) return parse_predicate(PredicateKind::In);
        if (at_keyword("holds")) return parse_predicate(PredicateKind::Holds);
        if (lex_.peek().kind == Tok::LParen) {
            lex_.take();
            FormulaPtr f = parse_iff();
            if (at_keyword("U")) {
                lex_.take();
                Interval iv = parse_optional_interval();
                FormulaPtr g = parse_iff();
                expect(Tok::RParen, ")");
                return mk_until(iv, std::move(f), std::move(g));
            }
            expect(Tok::RParen, ")");
            return f;
        }
        fail("expected formula term", {"not", "F", "G", "in", "holds", "("});
    }

    Lexer lex_;
};

}  // namespace

FormulaPtr parse_stl(const std::string& text) { return Parser(text).parse(); }

}  // namespace t3::stl
