#include "frozencheck/syntax.hpp"

namespace frozencheck::syntax {

namespace {

enum class Scope { TopLevel, Method };

std::string unescape(std::string_view quoted) {
    std::string out;
    const auto body = quoted.substr(1, quoted.size() - 2);
    for (std::size_t i = 0; i < body.size(); ++i) {
        if (body[i] != '\\' || i + 1 == body.size()) {
            out += body[i];
            continue;
        }
        const char next = body[++i];
        switch (next) {
            case 'n': out += '\n'; break;
            case 't': out += '\t'; break;
            default: out += next; break;
        }
    }
    return out;
}

class Parser {
public:
    explicit Parser(std::span<const Token> tokens) : toks_(tokens) {}

    ParseResult run() {
        ParseResult result;
        if (toks_.empty() || toks_.back().kind != TokenKind::Eof) {
            result.errors.push_back({"token stream must end with Eof", {}});
            return result;
        }
        while (!at(TokenKind::Eof)) {
            if (at(TokenKind::Newline)) {
                advance();
                continue;
            }
            try {
                if (peek().is_keyword("class")) {
                    result.tree.items.emplace_back(parse_class());
                } else if (peek().is_keyword("def")) {
                    const auto start = peek().span;
                    parse_method();
                    error("method definition outside of a class", start);
                } else if (peek().is_keyword("end")) {
                    error("unexpected 'end'", peek().span);
                    advance();
                } else {
                    result.tree.items.emplace_back(parse_stmt(Scope::TopLevel));
                }
            } catch (const Abort&) {
                synchronize();
            }
        }
        result.errors = std::move(errors_);
        return result;
    }

private:
    struct Abort {};

    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    bool at(TokenKind kind) const { return peek().kind == kind; }
    const Token& advance() {
        const Token& tok = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        last_ = tok.span;
        return tok;
    }

    void error(std::string message, SourceSpan span) { errors_.push_back({std::move(message), span}); }

    [[noreturn]] void fail(std::string message) {
        error(std::move(message), peek().span);
        throw Abort{};
    }

    const Token& expect_op(std::string_view op) {
        if (!peek().is_op(op)) fail("expected '" + std::string(op) + "', found " + describe(peek()));
        return advance();
    }

    void expect_line_end() {
        if (at(TokenKind::Newline)) {
            advance();
        } else if (!at(TokenKind::Eof)) {
            fail("expected end of line, found " + describe(peek()));
        }
    }

    static std::string describe(const Token& tok) {
        switch (tok.kind) {
            case TokenKind::Newline: return "end of line";
            case TokenKind::Eof: return "end of input";
            default: return "'" + tok.lexeme + "'";
        }
    }

    bool at_boundary() const {
        const auto& tok = peek();
        return tok.kind == TokenKind::Eof || tok.is_keyword("class") || tok.is_keyword("def") ||
               tok.is_keyword("end");
    }

    void synchronize() {
        while (!at_boundary()) advance();
    }

    ClassDef parse_class() {
        ClassDef cls;
        const auto start = advance().span;
        if (at(TokenKind::Const)) {
            cls.name = peek().lexeme;
            cls.name_span = advance().span;
        } else if (at(TokenKind::Ident) || at(TokenKind::Keyword)) {
            error("class name must be a constant", peek().span);
            cls.name = peek().lexeme;
            cls.name_span = advance().span;
        } else {
            fail("class name expected");
        }
        if (peek().is_op("<")) {
            advance();
            if (!at(TokenKind::Const)) fail("superclass name must be a constant");
            cls.superclass = peek().lexeme;
            cls.superclass_span = advance().span;
        }
        expect_line_end();

        while (true) {
            if (at(TokenKind::Newline)) {
                advance();
                continue;
            }
            if (peek().is_keyword("end")) {
                advance();
                break;
            }
            if (at(TokenKind::Eof) || peek().is_keyword("class")) {
                error("missing 'end' for class " + cls.name, peek().span);
                break;
            }
            try {
                if (peek().is_keyword("def")) {
                    cls.body.emplace_back(parse_method());
                } else if (at(TokenKind::Ident) && (peek().lexeme == "attr_reader" || peek().lexeme == "attr_writer" ||
                                                    peek().lexeme == "attr_accessor")) {
                    cls.body.emplace_back(parse_attr());
                } else {
                    fail("expected attribute declaration, method definition or 'end', found " + describe(peek()));
                }
            } catch (const Abort&) {
                synchronize();
            }
        }
        cls.span = join(start, last_);
        return cls;
    }

    AttrDecl parse_attr() {
        AttrDecl decl;
        const auto& kw = advance();
        decl.kind = kw.lexeme == "attr_reader"   ? AttrKind::Reader
                    : kw.lexeme == "attr_writer" ? AttrKind::Writer
                                                 : AttrKind::Accessor;
        while (true) {
            if (!at(TokenKind::Symbol)) fail("expected symbol, found " + describe(peek()));
            decl.names.push_back(advance().lexeme.substr(1));
            if (!peek().is_op(",")) break;
            advance();
        }
        decl.span = join(kw.span, last_);
        expect_line_end();
        return decl;
    }

    MethodDef parse_method() {
        MethodDef def;
        const auto start = advance().span;
        if (!at(TokenKind::Ident)) fail("method name expected, found " + describe(peek()));
        def.name = peek().lexeme;
        def.name_span = advance().span;
        if (peek().is_op("(")) {
            advance();
            if (!peek().is_op(")")) def.params = parse_params();
            expect_op(")");
        } else if (at(TokenKind::Ident)) {
            def.params = parse_params();
        }
        expect_line_end();

        while (true) {
            if (at(TokenKind::Newline)) {
                advance();
                continue;
            }
            if (peek().is_keyword("end")) {
                advance();
                break;
            }
            if (at_boundary()) {
                error("missing 'end' for method " + def.name, peek().span);
                break;
            }
            try {
                def.body.push_back(parse_stmt(Scope::Method));
            } catch (const Abort&) {
                synchronize();
            }
        }
        def.span = join(start, last_);
        return def;
    }

    std::vector<std::string> parse_params() {
        std::vector<std::string> params;
        while (true) {
            if (!at(TokenKind::Ident)) fail("parameter name expected, found " + describe(peek()));
            params.push_back(advance().lexeme);
            if (!peek().is_op(",")) break;
            advance();
        }
        return params;
    }

    Stmt parse_stmt(Scope scope) {
        Stmt stmt;
        const Token& first = peek();
        const auto start = first.span;

        if (first.kind == TokenKind::IVar && peek(1).is_op("=")) {
            if (scope == Scope::TopLevel) error("instance variable assignment outside of a method", first.span);
            stmt.kind = StmtKind::IVarAssign;
            stmt.name = advance().lexeme;
            advance();
            stmt.exprs.push_back(parse_expr(true));
        } else if (first.kind == TokenKind::Ident && peek(1).is_op("=")) {
            stmt.kind = StmtKind::LocalAssign;
            stmt.name = advance().lexeme;
            advance();
            stmt.exprs.push_back(parse_expr(true));
        } else if (first.kind == TokenKind::Ident && first.lexeme == "puts") {
            advance();
            stmt.kind = StmtKind::Puts;
            stmt.exprs.push_back(parse_expr(true));
        } else if (first.is_keyword("return")) {
            advance();
            stmt.kind = StmtKind::Return;
            stmt.exprs.push_back(parse_expr(true));
        } else if (first.is_keyword("super")) {
            if (scope == Scope::TopLevel) error("'super' outside of a method", first.span);
            advance();
            stmt.kind = StmtKind::SuperCall;
            if (peek().is_op("(")) {
                advance();
                if (!peek().is_op(")")) stmt.exprs = parse_args();
                expect_op(")");
            } else if (starts_expr(peek())) {
                stmt.exprs = parse_args();
            }
        } else {
            Expr target = parse_expr(true);
            if (peek().is_op("=")) {
                if (!target.is_call() || target.operands.size() != 1)
                    fail("invalid assignment target");
                advance();
                stmt.kind = StmtKind::AttrWrite;
                stmt.name = target.text;
                Expr receiver = std::move(target.operands.front());
                stmt.exprs.push_back(std::move(receiver));
                stmt.exprs.push_back(parse_expr(true));
            } else {
                stmt.kind = StmtKind::ExprStmt;
                stmt.exprs.push_back(std::move(target));
            }
        }
        stmt.span = join(start, last_);
        expect_line_end();
        return stmt;
    }

    static bool starts_expr(const Token& tok) {
        switch (tok.kind) {
            case TokenKind::StringLit:
            case TokenKind::IntLit:
            case TokenKind::IVar:
            case TokenKind::Ident:
            case TokenKind::Const:
                return true;
            case TokenKind::Keyword:
                return tok.lexeme == "nil" || tok.lexeme == "true" || tok.lexeme == "false" || tok.lexeme == "self";
            default:
                return false;
        }
    }

    std::vector<Expr> parse_args() {
        std::vector<Expr> args;
        while (true) {
            args.push_back(parse_expr(false));
            if (!peek().is_op(",")) break;
            advance();
        }
        return args;
    }

    // `allow_command` permits a trailing call with unparenthesized arguments,
    // e.g. `Person.new name, address`. Such a call ends the chain.
    Expr parse_expr(bool allow_command) {
        Expr expr = parse_primary();
        while (peek().is_op(".")) {
            advance();
            if (!at(TokenKind::Ident)) fail("method name expected after '.', found " + describe(peek()));
            Expr call;
            call.kind = ExprKind::MethodCall;
            call.text = advance().lexeme;
            call.operands.push_back(std::move(expr));
            bool command = false;
            if (peek().is_op("(")) {
                advance();
                if (!peek().is_op(")")) {
                    auto args = parse_args();
                    for (auto& a : args) call.operands.push_back(std::move(a));
                }
                expect_op(")");
            } else if (allow_command && starts_expr(peek())) {
                auto args = parse_args();
                for (auto& a : args) call.operands.push_back(std::move(a));
                command = true;
            }
            call.span = join(call.operands.front().span, last_);
            expr = std::move(call);
            if (command) break;
        }
        return expr;
    }

    Expr parse_primary() {
        const Token& tok = peek();
        Expr e;
        switch (tok.kind) {
            case TokenKind::StringLit:
                e.kind = ExprKind::StringLit;
                e.text = unescape(tok.lexeme);
                break;
            case TokenKind::IntLit:
                e.kind = ExprKind::IntLit;
                e.text = tok.lexeme;
                break;
            case TokenKind::IVar:
                e.kind = ExprKind::IVarRef;
                e.text = tok.lexeme;
                break;
            case TokenKind::Ident:
                e.kind = ExprKind::LocalRef;
                e.text = tok.lexeme;
                break;
            case TokenKind::Const:
                e.kind = ExprKind::ConstRef;
                e.text = tok.lexeme;
                break;
            case TokenKind::Keyword:
                if (tok.lexeme == "nil") {
                    e.kind = ExprKind::NilLit;
                } else if (tok.lexeme == "true" || tok.lexeme == "false") {
                    e.kind = ExprKind::BoolLit;
                    e.text = tok.lexeme;
                } else if (tok.lexeme == "self") {
                    e.kind = ExprKind::SelfRef;
                } else {
                    fail("expected expression, found " + describe(tok));
                }
                break;
            default:
                fail("expected expression, found " + describe(tok));
        }
        e.span = advance().span;
        return e;
    }

    std::span<const Token> toks_;
    std::size_t pos_ = 0;
    SourceSpan last_;
    std::vector<ParseError> errors_;
};

std::string format_errors(const std::vector<ParseError>& errors) {
    if (errors.empty()) return "syntax error";
    const auto& e = errors.front();
    return std::to_string(e.span.start_line) + ":" + std::to_string(e.span.start_col) + ": " + e.message;
}

}  // namespace

ParseResult parse_program(std::span<const Token> tokens) { return Parser(tokens).run(); }

SyntaxFailure::SyntaxFailure(std::vector<ParseError> errors)
    : std::runtime_error(format_errors(errors)), errors_(std::move(errors)) {}

SyntaxTree parse_source(std::string_view source, FileId file_id) {
    std::vector<Token> tokens;
    try {
        tokens = tokenize(source, file_id);
    } catch (const LexError& e) {
        throw SyntaxFailure({{e.what(), e.span()}});
    }
    auto result = parse_program(tokens);
    if (!result.ok()) throw SyntaxFailure(std::move(result.errors));
    return std::move(result.tree);
}

}  // namespace frozencheck::syntax
