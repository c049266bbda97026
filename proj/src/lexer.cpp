#include "frozencheck/syntax.hpp"

#include <algorithm>
#include <array>

namespace frozencheck::syntax {

namespace {

constexpr std::array<std::string_view, 9> kKeywords = {
    "class", "def", "end", "super", "return", "self", "nil", "true", "false"};

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return (c >= 'a' && c <= 'z') || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_word(char c) { return is_upper(c) || is_lower(c) || is_digit(c); }
bool is_continuation(unsigned char c) { return (c & 0xC0) == 0x80; }

class Lexer {
public:
    Lexer(std::string_view source, FileId file_id) : src_(source), file_(file_id) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r') {
                advance();
            } else if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (c == '\n') {
                const auto start = mark();
                advance();
                out.push_back(make(TokenKind::Newline, start));
            } else if (c == '"') {
                out.push_back(string_literal());
            } else if (c == '@') {
                out.push_back(prefixed(TokenKind::IVar, "instance variable name expected after '@'"));
            } else if (c == ':') {
                out.push_back(prefixed(TokenKind::Symbol, "symbol name expected after ':'"));
            } else if (is_upper(c)) {
                const auto start = mark();
                while (pos_ < src_.size() && is_word(src_[pos_])) advance();
                out.push_back(make(TokenKind::Const, start));
            } else if (is_lower(c)) {
                out.push_back(identifier());
            } else if (is_digit(c)) {
                const auto start = mark();
                while (pos_ < src_.size() && is_digit(src_[pos_])) advance();
                auto tok = make(TokenKind::IntLit, start);
                if (tok.lexeme.size() > 18)
                    throw LexError("integer literal out of range", tok.span);
                out.push_back(std::move(tok));
            } else if (c == '=' || c == '<' || c == '.' || c == ',' || c == '(' || c == ')') {
                const auto start = mark();
                advance();
                out.push_back(make(TokenKind::Op, start));
            } else {
                const auto start = mark();
                advance_char();
                throw LexError("illegal character '" + std::string(src_.substr(start.offset, pos_ - start.offset)) + "'",
                               span_from(start));
            }
        }
        const auto end = mark();
        out.push_back(make(TokenKind::Eof, end));
        return out;
    }

private:
    struct Mark {
        std::size_t offset;
        std::uint32_t line;
        std::uint32_t col;
    };

    Mark mark() const { return {pos_, line_, col_}; }

    SourceSpan span_from(const Mark& m) const { return {file_, m.line, m.col, line_, col_}; }

    Token make(TokenKind kind, const Mark& m) const {
        return Token{kind, std::string(src_.substr(m.offset, pos_ - m.offset)), span_from(m), m.offset};
    }

    // Advances one byte, tracking line and column in code points.
    void advance() {
        const auto c = static_cast<unsigned char>(src_[pos_]);
        ++pos_;
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else if (!is_continuation(c)) {
            ++col_;
        }
    }

    void advance_char() {
        advance();
        while (pos_ < src_.size() && is_continuation(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    Token prefixed(TokenKind kind, const char* error) {
        const auto start = mark();
        advance();
        if (pos_ >= src_.size() || (!is_lower(src_[pos_]) && !is_upper(src_[pos_])))
            throw LexError(error, span_from(start));
        while (pos_ < src_.size() && is_word(src_[pos_])) advance();
        return make(kind, start);
    }

    Token identifier() {
        const auto start = mark();
        while (pos_ < src_.size() && is_word(src_[pos_])) advance();
        if (pos_ < src_.size() && (src_[pos_] == '?' || src_[pos_] == '!')) advance();
        auto tok = make(TokenKind::Ident, start);
        if (std::find(kKeywords.begin(), kKeywords.end(), tok.lexeme) != kKeywords.end())
            tok.kind = TokenKind::Keyword;
        return tok;
    }

    Token string_literal() {
        const auto start = mark();
        advance();
        while (true) {
            if (pos_ >= src_.size() || src_[pos_] == '\n')
                throw LexError("unterminated string literal", span_from(start));
            const char c = src_[pos_];
            if (c == '"') {
                advance();
                break;
            }
            if (c == '\\') {
                advance();
                if (pos_ >= src_.size() || src_[pos_] == '\n')
                    throw LexError("unterminated string literal", span_from(start));
            }
            advance();
        }
        return make(TokenKind::StringLit, start);
    }

    std::string_view src_;
    FileId file_;
    std::size_t pos_ = 0;
    std::uint32_t line_ = 1;
    std::uint32_t col_ = 1;
};

}  // namespace

bool SourceSpan::encloses(const SourceSpan& inner) const {
    auto before = [](std::uint32_t l1, std::uint32_t c1, std::uint32_t l2, std::uint32_t c2) {
        return l1 < l2 || (l1 == l2 && c1 <= c2);
    };
    return file_id == inner.file_id && before(start_line, start_col, inner.start_line, inner.start_col) &&
           before(inner.end_line, inner.end_col, end_line, end_col);
}

SourceSpan join(const SourceSpan& first, const SourceSpan& last) {
    return {first.file_id, first.start_line, first.start_col, last.end_line, last.end_col};
}

std::string_view to_string(TokenKind kind) {
    switch (kind) {
        case TokenKind::Keyword: return "Keyword";
        case TokenKind::Const: return "Const";
        case TokenKind::Ident: return "Ident";
        case TokenKind::IVar: return "IVar";
        case TokenKind::Symbol: return "Symbol";
        case TokenKind::StringLit: return "StringLit";
        case TokenKind::IntLit: return "IntLit";
        case TokenKind::Op: return "Op";
        case TokenKind::Newline: return "Newline";
        case TokenKind::Eof: return "Eof";
    }
    return "?";
}

std::string_view to_string(AttrKind kind) {
    switch (kind) {
        case AttrKind::Reader: return "attr_reader";
        case AttrKind::Writer: return "attr_writer";
        case AttrKind::Accessor: return "attr_accessor";
    }
    return "?";
}

std::vector<Token> tokenize(std::string_view source, FileId file_id) {
    return Lexer(source, file_id).run();
}

}  // namespace frozencheck::syntax
