#include "rpbis/parser.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace rpbis {

namespace {

enum class Tok { Ident, Number, Minus, Arrow, LBrace, RBrace, LParen, RParen,
                 Comma, Colon, Slash, Lt, Gt, Amp, Pipe, Bang, End };

struct Token {
    Tok kind;
    std::string text;
    SourceSpan span;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrKind::SyntaxError, msg, tok_.span);
    }

  private:
    void advance() {
        skip_ws();
        tok_.span = SourceSpan{line_, col_};
        if (pos_ >= text_.size()) {
            tok_ = Token{Tok::End, "", tok_.span};
            return;
        }
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '_'))
                id += get();
            tok_ = Token{Tok::Ident, std::move(id), tok_.span};
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                num += get();
            if (pos_ + 1 < text_.size() && text_[pos_] == '.' &&
                std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
                num += get();
                while (pos_ < text_.size() &&
                       std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    num += get();
            }
            tok_ = Token{Tok::Number, std::move(num), tok_.span};
            return;
        }
        switch (c) {
            case '-':
                get();
                if (pos_ < text_.size() && text_[pos_] == '>') {
                    get();
                    tok_ = Token{Tok::Arrow, "->", tok_.span};
                } else {
                    tok_ = Token{Tok::Minus, "-", tok_.span};
                }
                return;
            case '{': get(); tok_ = Token{Tok::LBrace, "{", tok_.span}; return;
            case '}': get(); tok_ = Token{Tok::RBrace, "}", tok_.span}; return;
            case '(': get(); tok_ = Token{Tok::LParen, "(", tok_.span}; return;
            case ')': get(); tok_ = Token{Tok::RParen, ")", tok_.span}; return;
            case ',': get(); tok_ = Token{Tok::Comma, ",", tok_.span}; return;
            case ':': get(); tok_ = Token{Tok::Colon, ":", tok_.span}; return;
            case '/': get(); tok_ = Token{Tok::Slash, "/", tok_.span}; return;
            case '<': get(); tok_ = Token{Tok::Lt, "<", tok_.span}; return;
            case '>': get(); tok_ = Token{Tok::Gt, ">", tok_.span}; return;
            case '&': get(); tok_ = Token{Tok::Amp, "&", tok_.span}; return;
            case '|': get(); tok_ = Token{Tok::Pipe, "|", tok_.span}; return;
            case '!': get(); tok_ = Token{Tok::Bang, "!", tok_.span}; return;
            default:
                throw Error(ErrKind::SyntaxError,
                            std::string("unexpected character '") + c + "'",
                            tok_.span);
        }
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') get();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                get();
            } else {
                break;
            }
        }
    }

    char get() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    unsigned line_ = 1;
    unsigned col_ = 1;
    Token tok_;
};

std::int64_t parse_int(const Token& t) {
    try {
        return std::stoll(t.text);
    } catch (const std::out_of_range&) {
        throw Error(ErrKind::SyntaxError, "integer literal too large", t.span);
    }
}

Rat parse_rat(Lexer& lx) {
    Token first = lx.peek();
    if (first.kind != Tok::Number) lx.fail("expected a probability literal");
    lx.take();
    if (first.text.find('.') != std::string::npos) {
        try {
            return Rat::from_decimal(first.text);
        } catch (const std::overflow_error&) {
            throw Error(ErrKind::SyntaxError, "decimal literal too precise",
                        first.span);
        }
    }
    std::int64_t num = parse_int(first);
    if (lx.peek().kind == Tok::Slash) {
        lx.take();
        Token den = lx.peek();
        if (den.kind != Tok::Number || den.text.find('.') != std::string::npos)
            lx.fail("expected an integer denominator");
        lx.take();
        std::int64_t d = parse_int(den);
        if (d == 0)
            throw Error(ErrKind::SyntaxError, "zero denominator", den.span);
        return Rat(num, d);
    }
    return Rat(num);
}

std::string parse_ident(Lexer& lx, const char* what) {
    Token t = lx.peek();
    if (t.kind != Tok::Ident) lx.fail(std::string("expected ") + what);
    lx.take();
    return t.text;
}

// --- formulas ---------------------------------------------------------

bool starts_unary(Tok k) {
    return k == Tok::Bang || k == Tok::Lt || k == Tok::LParen || k == Tok::Ident;
}

FormulaPtr parse_formula_expr(Lexer& lx);

FormulaPtr parse_unary(Lexer& lx) {
    Token t = lx.peek();
    switch (t.kind) {
        case Tok::Bang:
            lx.take();
            return f_neg(parse_unary(lx));
        case Tok::Lt: {
            lx.take();
            std::string action = parse_ident(lx, "an action name");
            if (lx.peek().kind != Tok::Gt) lx.fail("expected '>'");
            lx.take();
            SourceSpan where = lx.peek().span;
            Rat bound = parse_rat(lx);
            if (!bound.is_prob())
                throw Error(ErrKind::ProbOutOfRange,
                            "diamond bound " + bound.str() + " outside [0,1]", where);
            FormulaPtr body =
                starts_unary(lx.peek().kind) ? parse_unary(lx) : f_top();
            return f_dia(std::move(action), bound, std::move(body));
        }
        case Tok::LParen: {
            lx.take();
            FormulaPtr inner = parse_formula_expr(lx);
            if (lx.peek().kind != Tok::RParen) lx.fail("expected ')'");
            lx.take();
            return inner;
        }
        case Tok::Ident:
            if (t.text == "true") {
                lx.take();
                return f_top();
            }
            lx.fail("expected a formula");
        default:
            lx.fail("expected a formula");
    }
}

FormulaPtr parse_formula_expr(Lexer& lx) {
    FormulaPtr acc = parse_unary(lx);
    Tok seen = Tok::End;
    while (lx.peek().kind == Tok::Amp || lx.peek().kind == Tok::Pipe) {
        Tok op = lx.peek().kind;
        if (seen != Tok::End && op != seen)
            lx.fail("mixing '&' and '|' requires parentheses");
        seen = op;
        lx.take();
        FormulaPtr rhs = parse_unary(lx);
        acc = op == Tok::Amp ? f_and(acc, rhs) : f_or(acc, rhs);
    }
    return acc;
}

} // namespace

Rplts parse_system(const std::string& text) {
    Lexer lx(text);
    std::vector<RawTransition> raw;
    while (lx.peek().kind != Tok::End) {
        RawTransition t;
        t.source = parse_ident(lx, "a state name");
        if (lx.peek().kind != Tok::Minus) lx.fail("expected '-'");
        lx.take();
        t.action = parse_ident(lx, "an action name");
        if (lx.peek().kind != Tok::Arrow) lx.fail("expected '->'");
        lx.take();
        if (lx.peek().kind != Tok::LBrace) lx.fail("expected '{'");
        lx.take();
        while (true) {
            Rat p = parse_rat(lx);
            if (lx.peek().kind != Tok::Colon) lx.fail("expected ':'");
            lx.take();
            t.branches.emplace_back(parse_ident(lx, "a target state"), p);
            if (lx.peek().kind == Tok::Comma) {
                lx.take();
                continue;
            }
            break;
        }
        if (lx.peek().kind != Tok::RBrace) lx.fail("expected '}'");
        lx.take();
        raw.push_back(std::move(t));
    }
    return validate_rplts(raw);
}

FormulaPtr parse_formula(const std::string& text) {
    Lexer lx(text);
    FormulaPtr f = parse_formula_expr(lx);
    if (lx.peek().kind != Tok::End) lx.fail("trailing input after formula");
    return f;
}

namespace {

void render_rec(const FormulaPtr& f, bool decimal, std::ostringstream& out) {
    auto rat = [&](const Rat& r) { return decimal ? r.str_decimal() : r.str(); };
    switch (f->kind) {
        case FKind::Top:
            out << "true";
            return;
        case FKind::Neg:
            out << '!';
            if (f->lhs->kind == FKind::And || f->lhs->kind == FKind::Or) {
                out << '(';
                render_rec(f->lhs, decimal, out);
                out << ')';
            } else {
                render_rec(f->lhs, decimal, out);
            }
            return;
        case FKind::And:
        case FKind::Or: {
            const char* op = f->kind == FKind::And ? " & " : " | ";
            // Left operand of the same kind chains without parentheses
            // (left-associativity); anything else binary needs them.
            bool lparen = f->lhs->kind == FKind::And || f->lhs->kind == FKind::Or
                              ? f->lhs->kind != f->kind
                              : false;
            if (lparen) out << '(';
            render_rec(f->lhs, decimal, out);
            if (lparen) out << ')';
            out << op;
            bool rparen = f->rhs->kind == FKind::And || f->rhs->kind == FKind::Or;
            if (rparen) out << '(';
            render_rec(f->rhs, decimal, out);
            if (rparen) out << ')';
            return;
        }
        case FKind::Diamond:
            out << '<' << f->action << '>' << rat(f->bound);
            if (f->lhs->kind == FKind::Top) return;
            out << ' ';
            if (f->lhs->kind == FKind::And || f->lhs->kind == FKind::Or) {
                out << '(';
                render_rec(f->lhs, decimal, out);
                out << ')';
            } else {
                render_rec(f->lhs, decimal, out);
            }
            return;
    }
}

} // namespace

std::string render_formula(const FormulaPtr& f, bool decimal) {
    std::ostringstream out;
    render_rec(f, decimal, out);
    return out.str();
}

std::string render_system(const Rplts& sys) {
    // Ordered by names, not intern ids, so the text is a pure function of
    // the abstract system and re-parsing reaches a fixpoint.
    std::vector<std::pair<std::string, std::string>> decls;
    for (StateId s = 0; s < sys.num_states(); ++s) {
        for (const auto& [a, dist] : sys.transitions(s)) {
            std::vector<std::pair<std::string, Rat>> branches;
            for (const auto& [tgt, p] : dist.entries())
                branches.emplace_back(sys.state_name(tgt), p);
            std::sort(branches.begin(), branches.end());
            std::ostringstream line;
            line << sys.state_name(s) << " -" << sys.action_name(a) << "-> { ";
            for (std::size_t i = 0; i < branches.size(); ++i) {
                if (i) line << ", ";
                line << branches[i].second.str() << ": " << branches[i].first;
            }
            line << " }\n";
            decls.emplace_back(sys.state_name(s) + "\x1f" + sys.action_name(a),
                               line.str());
        }
    }
    std::sort(decls.begin(), decls.end());
    std::ostringstream out;
    for (const auto& [key, line] : decls) out << line;
    return out.str();
}

} // namespace rpbis
