#pragma once

// MiniRuby front end: tokens, syntax tree, lexer, parser and printer.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace frozencheck::syntax {

/// Opaque handle naming the source a span belongs to.
using FileId = std::uint32_t;

/// 1-based source range. The end column is exclusive.
struct SourceSpan {
    FileId file_id = 0;
    std::uint32_t start_line = 1;
    std::uint32_t start_col = 1;
    std::uint32_t end_line = 1;
    std::uint32_t end_col = 1;

    bool operator==(const SourceSpan&) const = default;

    /// True when `inner` lies within this span.
    [[nodiscard]] bool encloses(const SourceSpan& inner) const;
};

/// Smallest span covering both arguments.
SourceSpan join(const SourceSpan& first, const SourceSpan& last);

enum class TokenKind {
    Keyword,
    Const,
    Ident,
    IVar,
    Symbol,
    StringLit,
    IntLit,
    Op,
    Newline,
    Eof,
};

std::string_view to_string(TokenKind kind);

struct Token {
    TokenKind kind = TokenKind::Eof;
    std::string lexeme;
    SourceSpan span;
    std::size_t offset = 0;  // byte offset of the lexeme in the source

    [[nodiscard]] bool is(TokenKind k, std::string_view text) const {
        return kind == k && lexeme == text;
    }
    [[nodiscard]] bool is_keyword(std::string_view text) const { return is(TokenKind::Keyword, text); }
    [[nodiscard]] bool is_op(std::string_view text) const { return is(TokenKind::Op, text); }
};

class LexError : public std::runtime_error {
public:
    LexError(const std::string& message, SourceSpan span)
        : std::runtime_error(message), span_(span) {}
    [[nodiscard]] const SourceSpan& span() const { return span_; }

private:
    SourceSpan span_;
};

/// Splits `source` into tokens. The last token is always Eof.
/// Throws LexError on an unterminated string or an illegal character.
std::vector<Token> tokenize(std::string_view source, FileId file_id = 0);

// ---------------------------------------------------------------------------
// Syntax tree

enum class ExprKind {
    StringLit,
    IntLit,
    NilLit,
    BoolLit,
    SelfRef,
    IVarRef,
    LocalRef,
    ConstRef,
    MethodCall,
};

struct Expr {
    ExprKind kind = ExprKind::NilLit;
    // Literal value (string contents, decimal digits, "true"/"false") or the
    // referenced name. For MethodCall it is the method name.
    std::string text;
    // MethodCall only: the receiver followed by the arguments.
    std::vector<Expr> operands;
    SourceSpan span;

    [[nodiscard]] bool is_call() const { return kind == ExprKind::MethodCall; }
    [[nodiscard]] bool is_call(std::string_view name) const { return is_call() && text == name; }
    [[nodiscard]] const Expr& receiver() const { return operands.front(); }
    [[nodiscard]] std::span<const Expr> args() const {
        return std::span<const Expr>(operands).subspan(1);
    }
    [[nodiscard]] bool is_literal() const {
        return kind == ExprKind::StringLit || kind == ExprKind::IntLit ||
               kind == ExprKind::NilLit || kind == ExprKind::BoolLit;
    }
};

enum class StmtKind {
    IVarAssign,
    LocalAssign,
    AttrWrite,
    ExprStmt,
    Return,
    Puts,
    SuperCall,
};

struct Stmt {
    StmtKind kind = StmtKind::ExprStmt;
    // Assigned ivar ("@x"), local, or attribute name; empty otherwise.
    std::string name;
    // AttrWrite: [receiver, value]. SuperCall: arguments. Others: [value].
    std::vector<Expr> exprs;
    SourceSpan span;

    [[nodiscard]] const Expr& value() const { return exprs.back(); }
    [[nodiscard]] const Expr& receiver() const { return exprs.front(); }
};

enum class AttrKind { Reader, Writer, Accessor };

std::string_view to_string(AttrKind kind);

struct AttrDecl {
    AttrKind kind = AttrKind::Reader;
    std::vector<std::string> names;  // without the leading ':'
    SourceSpan span;
};

struct MethodDef {
    std::string name;
    std::vector<std::string> params;
    std::vector<Stmt> body;
    SourceSpan span;
    SourceSpan name_span;
};

using Member = std::variant<AttrDecl, MethodDef>;

struct ClassDef {
    std::string name;
    std::optional<std::string> superclass;
    std::vector<Member> body;
    SourceSpan span;
    SourceSpan name_span;
    std::optional<SourceSpan> superclass_span;
};

using Item = std::variant<ClassDef, Stmt>;

struct SyntaxTree {
    std::vector<Item> items;
};

// Structural equality that ignores spans.
bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const Stmt& a, const Stmt& b);
bool structurally_equal(const SyntaxTree& a, const SyntaxTree& b);

// ---------------------------------------------------------------------------
// Parsing

struct ParseError {
    std::string message;
    SourceSpan span;
};

struct ParseResult {
    SyntaxTree tree;
    std::vector<ParseError> errors;

    [[nodiscard]] bool ok() const { return errors.empty(); }
};

/// Parses a token sequence ending in Eof. Errors are collected; after an
/// error the parser resumes at the next `class`, `def` or `end`.
ParseResult parse_program(std::span<const Token> tokens);

/// Thrown by parse_source when lexing or parsing fails.
class SyntaxFailure : public std::runtime_error {
public:
    explicit SyntaxFailure(std::vector<ParseError> errors);
    [[nodiscard]] const std::vector<ParseError>& errors() const { return errors_; }

private:
    std::vector<ParseError> errors_;
};

/// tokenize + parse_program; throws SyntaxFailure on any error.
SyntaxTree parse_source(std::string_view source, FileId file_id = 0);

/// Canonical MiniRuby text: two-space indent, one statement per line.
std::string pretty_print(const SyntaxTree& tree);
std::string pretty_print(const Expr& expr);

/// Indented node-per-line dump with spans, used by `frozencheck ast`.
std::string dump(const SyntaxTree& tree);

/// Every node's span encloses its children's spans.
bool spans_nested(const SyntaxTree& tree);

}  // namespace frozencheck::syntax
