/*
   Copyright 2026 The qdiff authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "qdiff/parse.hpp"

#include <cctype>

namespace qdiff {

namespace {

class ExprParser {
  public:
    explicit ExprParser(const std::string& s) : s_(s) {}

    RatFun parse() {
        RatFun out = expr();
        skip_ws();
        if (pos_ != s_.size()) throw parse_error("unexpected trailing input", pos_);
        return out;
    }

  private:
    const std::string& s_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    RatFun expr() {
        RatFun acc = term();
        while (true) {
            char c = peek();
            if (c == '+') {
                ++pos_;
                acc += term();
            } else if (c == '-') {
                ++pos_;
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    RatFun term() {
        RatFun acc = factor();
        while (true) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                acc *= factor();
            } else if (c == '/') {
                ++pos_;
                acc /= factor();
            } else {
                return acc;
            }
        }
    }

    RatFun factor() {
        bool neg = false;
        while (true) {
            char c = peek();
            if (c == '-') {
                neg = !neg;
                ++pos_;
            } else if (c == '+') {
                ++pos_;
            } else {
                break;
            }
        }
        RatFun base = power();
        return neg ? -base : base;
    }

    RatFun power() {
        RatFun base = atom();
        if (peek() == '^') {
            ++pos_;
            long e = integer_exponent();
            base = base.pow(e);
        }
        return base;
    }

    long integer_exponent() {
        skip_ws();
        bool paren = eat('(');
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        }
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            throw parse_error("expected an integer exponent", pos_);
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > 100000) throw parse_error("exponent too large", pos_);
            ++pos_;
        }
        if (paren && !eat(')')) throw parse_error("expected ')'", pos_);
        return neg ? -v : v;
    }

    RatFun atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            RatFun inner = expr();
            if (!eat(')')) throw parse_error("expected ')'", pos_);
            return inner;
        }
        if (c == 'x') {
            ++pos_;
            return RatFun::x();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Int v(0);
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                v = v * 10 + (s_[pos_] - '0');
                ++pos_;
            }
            return RatFun(Rat(v));
        }
        throw parse_error("expected a literal, 'x' or '('", pos_);
    }
};

}  // namespace

RatFun parse_ratfun(const std::string& s) { return ExprParser(s).parse(); }

Rat parse_rational(const std::string& s) {
    RatFun f = parse_ratfun(s);
    if (!f.is_constant()) throw parse_error("expected a rational constant", 0);
    return f.constant();
}

ParamValue parse_param(const std::string& s) {
    std::size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i < s.size() && s[i] == 'q') {
        ++i;
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i == s.size()) return ParamValue::exponent(Rat(1));
        if (s[i] != '^') throw parse_error("expected '^' after q", i);
        ++i;
        std::string rest = s.substr(i);
        // strip one level of parentheses
        auto strip = [](std::string t) {
            std::size_t a = t.find_first_not_of(" \t");
            std::size_t b = t.find_last_not_of(" \t");
            if (a == std::string::npos) return std::string();
            t = t.substr(a, b - a + 1);
            if (!t.empty() && t.front() == '(' && t.back() == ')')
                t = t.substr(1, t.size() - 2);
            return t;
        };
        rest = strip(rest);
        if (rest.empty()) throw parse_error("expected an exponent after q^", i);
        // exponent of the form e or e/d with optional sign
        Rat e;
        try {
            std::size_t slash = rest.find('/');
            if (slash == std::string::npos) {
                e = Rat(Int(rest));
            } else {
                e = Rat(Int(rest.substr(0, slash)), Int(rest.substr(slash + 1)));
                e.canonicalize();
            }
        } catch (const std::invalid_argument&) {
            throw parse_error("malformed exponent '" + rest + "'", i);
        }
        return ParamValue::exponent(e);
    }
    return ParamValue::rational(parse_rational(s));
}

std::string format_ratfun(const RatFun& f) { return f.str(); }

}  // namespace qdiff
