// parser.hpp
//
// Recursive-descent reader for polynomial text:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary | '/' unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := integer | 'i' | variable | '(' expr ')'
//
// Division is only allowed by nonzero constants, so "3/4*x" and "x/2" parse.

#pragma once

#include "lgtft/polynomial.hpp"

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lgtft {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

namespace detail {

class PolynomialParser {
public:
    PolynomialParser(std::string_view src, RingPtr ring) : src_(src), ring_(std::move(ring)) {}

    Polynomial parse() {
        skip_ws();
        if (pos_ == src_.size()) throw ParseError("empty expression", pos_);
        Polynomial p = expr();
        skip_ws();
        if (pos_ != src_.size()) throw ParseError(std::string("unexpected character '") + src_[pos_] + "'", pos_);
        return p;
    }

private:
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expr() {
        Polynomial acc = term();
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    Polynomial term() {
        Polynomial acc = unary();
        for (;;) {
            if (accept('*')) {
                acc *= unary();
            } else if (accept('/')) {
                std::size_t at = pos_;
                Polynomial den = unary();
                if (!den.is_constant()) throw ParseError("division by a non-constant", at);
                if (den.is_zero()) throw ParseError("division by zero", at);
                acc *= den.constant_term().inverse();
            } else {
                return acc;
            }
        }
    }

    Polynomial unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Polynomial power() {
        Polynomial base = primary();
        if (!accept('^')) return base;
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == '-') throw ParseError("negative exponent", pos_);
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
            throw ParseError("expected exponent", pos_);
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        std::string digits(src_.substr(start, pos_ - start));
        if (digits.size() > 6) throw ParseError("exponent too large", start);
        return base.pow(static_cast<unsigned>(std::stoul(digits)));
    }

    Polynomial primary() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial inner = expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            return Polynomial(ring_, Scalar(mpq_class(std::string(src_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
            std::string name(src_.substr(start, pos_ - start));
            if (name == "i") return Polynomial(ring_, Scalar::i());
            int k = ring_->index_of(name);
            if (k < 0) throw ParseError("undeclared variable '" + name + "'", start);
            return Polynomial::variable(ring_, static_cast<std::size_t>(k));
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    std::string_view src_;
    RingPtr ring_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parse_polynomial(std::string_view src, const RingPtr& ring) {
    return detail::PolynomialParser(src, ring).parse();
}

inline Polynomial parse_polynomial(std::string_view src, std::vector<std::string> variables) {
    return parse_polynomial(src, make_ring(std::move(variables)));
}

}  // namespace lgtft
