#ifndef FSING_SCRIPT_HPP
#define FSING_SCRIPT_HPP

#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "ideal.hpp"

namespace fsing {

struct ParseError : std::runtime_error {
    std::size_t line, column;
    ParseError(std::size_t l, std::size_t c, const std::string& msg)
        : std::runtime_error("line " + std::to_string(l) + ", column " + std::to_string(c) +
                             ": " + msg),
          line(l), column(c) {}
};

namespace detail {

/// Recursive-descent parser for the infix polynomial syntax: + - * ^,
/// parentheses, integer literals, variable names. '^' takes a nonnegative
/// integer exponent and binds tighter than '*'.
class PolyParser {
public:
    PolyParser(const RingContext& ctx, const std::string& text, std::size_t line,
               std::size_t col_offset)
        : ctx_(ctx), s_(text), line_(line), off_(col_offset) {}

    Poly parse() {
        Poly r = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected character");
        return r;
    }

private:
    const RingContext& ctx_;
    std::string s_;
    std::size_t pos_ = 0;
    std::size_t line_, off_;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(line_, off_ + pos_ + 1, msg);
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool eat(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }

    Poly expr() {
        skip_ws();
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        Poly acc = term();
        if (neg) acc = poly_neg(ctx_, acc);
        while (true) {
            if (eat('+')) acc = poly_add(ctx_, acc, term());
            else if (eat('-')) acc = poly_sub(ctx_, acc, term());
            else break;
        }
        return acc;
    }

    Poly term() {
        Poly acc = power();
        while (eat('*')) acc = poly_mul(ctx_, acc, power());
        return acc;
    }

    Poly power() {
        Poly base = atom();
        if (eat('^')) {
            skip_ws();
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                fail("expected exponent");
            std::uint64_t e = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                e = e * 10 + std::uint64_t(s_[pos_] - '0');
                if (e > 100000) fail("exponent too large");
                ++pos_;
            }
            base = poly_pow(ctx_, base, e);
        }
        return base;
    }

    Poly atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of polynomial");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Poly r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::int64_t v = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                v = v * 10 + (s_[pos_] - '0');
                v %= ctx_.p(); // stay in machine range
                ++pos_;
            }
            return poly_const(ctx_, v);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            int idx = ctx_.var_index(name);
            if (idx < 0) {
                pos_ = start;
                fail("unknown variable '" + name + "'");
            }
            return poly_var(ctx_, std::size_t(idx));
        }
        fail("unexpected character");
    }
};

inline std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

} // namespace detail

inline Poly parse_poly(const RingContext& ctx, const std::string& text,
                       std::size_t line = 1, std::size_t col_offset = 0) {
    return detail::PolyParser(ctx, text, line, col_offset).parse();
}

/// One session: a single ring, named ideals and parameter systems, and
/// domain assertions. The grammar, one directive per line:
///   ring <p> <var>... [order=grevlex|lex]
///   ideal <name> = <poly>, <poly>, ...
///   params <name> = <poly>, ...
///   assert domain <name>
///   # comment
struct SessionScript {
    std::shared_ptr<RingContext> ring;
    std::vector<std::string> ideal_order; // declaration order
    std::map<std::string, Ideal> ideals;
    std::map<std::string, std::vector<Poly>> params;
    std::set<std::string> domain_asserted;
    std::string source;

    const RingContext& ctx() const {
        if (!ring) throw std::runtime_error("script declares no ring");
        return *ring;
    }
};

inline SessionScript parse_script(const std::string& text) {
    SessionScript sc;
    sc.source = text;
    std::size_t lineno = 0, pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string raw = text.substr(pos, eol - pos);
        ++lineno;
        std::size_t base = pos;
        pos = eol + 1;
        std::string line = raw;
        if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
        auto words = detail::split_ws(line);
        if (words.empty()) {
            if (eol == text.size() && base >= text.size()) break;
            if (eol == text.size()) break;
            continue;
        }
        auto col_of = [&](const std::string& word) {
            auto at = raw.find(word);
            return at == std::string::npos ? std::size_t(1) : at + 1;
        };
        const std::string& kw = words[0];
        if (kw == "ring") {
            if (sc.ring) throw ParseError(lineno, 1, "only one ring per script");
            if (words.size() < 3) throw ParseError(lineno, 1, "ring needs a prime and variables");
            std::int64_t p = 0;
            try {
                p = std::stoll(words[1]);
            } catch (...) {
                throw ParseError(lineno, col_of(words[1]), "bad characteristic");
            }
            OrderSpec ord;
            std::vector<std::string> vars;
            for (std::size_t i = 2; i < words.size(); ++i) {
                if (words[i].rfind("order=", 0) == 0) {
                    std::string o = words[i].substr(6);
                    if (o == "grevlex") ord.kind = OrderKind::Grevlex;
                    else if (o == "lex") ord.kind = OrderKind::Lex;
                    else throw ParseError(lineno, col_of(words[i]), "unknown order '" + o + "'");
                } else {
                    vars.push_back(words[i]);
                }
            }
            try {
                sc.ring = std::make_shared<RingContext>(p, vars, ord);
            } catch (const std::exception& ex) {
                throw ParseError(lineno, col_of(words[1]), ex.what());
            }
        } else if (kw == "ideal" || kw == "params") {
            if (!sc.ring) throw ParseError(lineno, 1, "declare the ring first");
            if (words.size() < 2) throw ParseError(lineno, 1, kw + " needs a name");
            const std::string& name = words[1];
            if (sc.ideals.count(name) || sc.params.count(name))
                throw ParseError(lineno, col_of(name), "duplicate name '" + name + "'");
            auto eq = raw.find('=');
            if (eq == std::string::npos) throw ParseError(lineno, 1, "expected '='");
            std::string rhs = raw.substr(eq + 1);
            if (auto h = rhs.find('#'); h != std::string::npos) rhs = rhs.substr(0, h);
            std::vector<Poly> polys;
            std::size_t start = 0, coloff = base; // column bookkeeping relative to raw line
            (void)coloff;
            while (start <= rhs.size()) {
                std::size_t comma = rhs.find(',', start);
                std::string piece = comma == std::string::npos ? rhs.substr(start)
                                                               : rhs.substr(start, comma - start);
                bool blank = piece.find_first_not_of(" \t\r") == std::string::npos;
                if (blank && comma == std::string::npos && !polys.empty()) break;
                if (blank) throw ParseError(lineno, eq + 2 + start, "empty polynomial");
                polys.push_back(parse_poly(*sc.ring, piece, lineno, eq + 1 + start));
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
            if (polys.empty()) throw ParseError(lineno, eq + 2, "no polynomials given");
            if (kw == "ideal") {
                sc.ideals.emplace(name, Ideal{polys});
                sc.ideal_order.push_back(name);
            } else {
                sc.params.emplace(name, polys);
            }
        } else if (kw == "assert") {
            if (words.size() != 3 || words[1] != "domain")
                throw ParseError(lineno, 1, "expected 'assert domain <name>'");
            if (!sc.ideals.count(words[2]))
                throw ParseError(lineno, col_of(words[2]), "unknown ideal '" + words[2] + "'");
            sc.domain_asserted.insert(words[2]);
        } else {
            throw ParseError(lineno, col_of(kw), "unknown directive '" + kw + "'");
        }
        if (eol == text.size()) break;
    }
    if (!sc.ring) throw ParseError(1, 1, "script declares no ring");
    return sc;
}

} // namespace fsing

#endif
