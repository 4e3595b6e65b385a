#pragma once

// A small infix expression language for guards and action right-hand sides.
//
//   expr    := or
//   or      := and { "||" and }
//   and     := not { "&&" not }
//   not     := "!" not | cmp
//   cmp     := sum [ ("==" | "!=" | "<" | "<=" | ">" | ">=") sum ]
//   sum     := product { ("+" | "-") product }
//   product := unary { "*" unary }
//   unary   := "-" unary | primary
//   primary := integer | "true" | "false" | identifier | "'" atom "'" | "(" expr ")"
//
// Integers are 64-bit; atoms are enum constants and only support == and !=.

#include "hdam/error.hpp"

#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace hdam {

/// A variable value: an integer or an enum atom.
using Value = std::variant<std::int64_t, std::string>;

inline std::string to_string(const Value& v)
{
    if (auto i = std::get_if<std::int64_t>(&v))
        return std::to_string(*i);
    return "'" + std::get<std::string>(v) + "'";
}

enum class Type { boolean, integer, atom };

inline const char* to_string(Type t)
{
    switch (t) {
    case Type::boolean: return "boolean";
    case Type::integer: return "integer";
    case Type::atom: return "atom";
    }
    return "?";
}

inline Type type_of(const Value& v)
{
    return std::holds_alternative<std::int64_t>(v) ? Type::integer : Type::atom;
}

enum class Op {
    literal_int,
    literal_bool,
    literal_atom,
    variable,
    negate,
    logical_not,
    add,
    sub,
    mul,
    eq,
    ne,
    lt,
    le,
    gt,
    ge,
    logical_and,
    logical_or,
};

struct Expr {
    Op op = Op::literal_bool;
    std::int64_t number = 0; // literal_int; literal_bool uses 0/1
    std::string name;        // variable or atom
    std::vector<Expr> args;

    friend bool operator==(const Expr&, const Expr&) = default;
};

namespace detail {

inline int precedence(Op op)
{
    switch (op) {
    case Op::logical_or: return 1;
    case Op::logical_and: return 2;
    case Op::logical_not: return 3;
    case Op::eq:
    case Op::ne:
    case Op::lt:
    case Op::le:
    case Op::gt:
    case Op::ge: return 4;
    case Op::add:
    case Op::sub: return 5;
    case Op::mul: return 6;
    case Op::negate: return 7;
    default: return 8;
    }
}

inline const char* symbol(Op op)
{
    switch (op) {
    case Op::negate: return "-";
    case Op::logical_not: return "!";
    case Op::add: return "+";
    case Op::sub: return "-";
    case Op::mul: return "*";
    case Op::eq: return "==";
    case Op::ne: return "!=";
    case Op::lt: return "<";
    case Op::le: return "<=";
    case Op::gt: return ">";
    case Op::ge: return ">=";
    case Op::logical_and: return "&&";
    case Op::logical_or: return "||";
    default: return "";
    }
}

class ExprParser {
public:
    explicit ExprParser(const std::string& text) : s_(text) {}

    Expr parse()
    {
        Expr e = parse_or();
        skip();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ParseError("expression \"" + s_ + "\": " + msg, 1, pos_ + 1);
    }

    void skip()
    {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r'))
            ++pos_;
    }

    bool eat(const char* tok)
    {
        skip();
        const std::string t(tok);
        if (s_.compare(pos_, t.size(), t) != 0)
            return false;
        pos_ += t.size();
        return true;
    }

    static Expr node(Op op, Expr a, Expr b)
    {
        Expr e;
        e.op = op;
        e.args.push_back(std::move(a));
        e.args.push_back(std::move(b));
        return e;
    }

    Expr parse_or()
    {
        Expr e = parse_and();
        while (eat("||"))
            e = node(Op::logical_or, std::move(e), parse_and());
        return e;
    }

    Expr parse_and()
    {
        Expr e = parse_not();
        while (eat("&&"))
            e = node(Op::logical_and, std::move(e), parse_not());
        return e;
    }

    Expr parse_not()
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == '!' && s_.compare(pos_, 2, "!=") != 0) {
            ++pos_;
            Expr e;
            e.op = Op::logical_not;
            e.args.push_back(parse_not());
            return e;
        }
        return parse_cmp();
    }

    Expr parse_cmp()
    {
        Expr e = parse_sum();
        // two-character operators first
        static const std::pair<const char*, Op> ops[] = {{"==", Op::eq}, {"!=", Op::ne}, {"<=", Op::le},
                                                         {">=", Op::ge}, {"<", Op::lt},  {">", Op::gt}};
        for (const auto& [tok, op] : ops) {
            if (eat(tok)) {
                e = node(op, std::move(e), parse_sum());
                skip();
                for (const auto& [tok2, op2] : ops) {
                    (void)op2;
                    if (s_.compare(pos_, std::string(tok2).size(), tok2) == 0)
                        fail("comparisons do not chain; add parentheses");
                }
                break;
            }
        }
        return e;
    }

    Expr parse_sum()
    {
        Expr e = parse_product();
        for (;;) {
            if (eat("+"))
                e = node(Op::add, std::move(e), parse_product());
            else if (eat("-"))
                e = node(Op::sub, std::move(e), parse_product());
            else
                return e;
        }
    }

    Expr parse_product()
    {
        Expr e = parse_unary();
        while (eat("*"))
            e = node(Op::mul, std::move(e), parse_unary());
        return e;
    }

    Expr parse_unary()
    {
        if (eat("-")) {
            Expr e;
            e.op = Op::negate;
            e.args.push_back(parse_unary());
            return e;
        }
        return parse_primary();
    }

    static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    Expr parse_primary()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end of expression");
        const char c = s_[pos_];
        Expr e;
        if (c == '(') {
            ++pos_;
            e = parse_or();
            if (!eat(")"))
                fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::int64_t v = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                const int d = s_[pos_] - '0';
                if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, d, &v))
                    fail("integer literal out of range");
                ++pos_;
            }
            if (pos_ < s_.size() && ident_char(s_[pos_]))
                fail("malformed integer literal");
            e.op = Op::literal_int;
            e.number = v;
            return e;
        }
        if (c == '\'') {
            const std::size_t close = s_.find('\'', pos_ + 1);
            if (close == std::string::npos)
                fail("unterminated atom");
            e.op = Op::literal_atom;
            e.name = s_.substr(pos_ + 1, close - pos_ - 1);
            if (e.name.empty())
                fail("empty atom");
            pos_ = close + 1;
            return e;
        }
        if (ident_start(c)) {
            const std::size_t begin = pos_;
            while (pos_ < s_.size() && ident_char(s_[pos_]))
                ++pos_;
            e.name = s_.substr(begin, pos_ - begin);
            if (e.name == "true" || e.name == "false") {
                e.op = Op::literal_bool;
                e.number = e.name == "true";
                e.name.clear();
            } else {
                e.op = Op::variable;
            }
            return e;
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

inline void print_into(const Expr& e, std::string& out)
{
    switch (e.op) {
    case Op::literal_int: out += std::to_string(e.number); return;
    case Op::literal_bool: out += e.number ? "true" : "false"; return;
    case Op::literal_atom: out += "'" + e.name + "'"; return;
    case Op::variable: out += e.name; return;
    case Op::negate:
    case Op::logical_not: {
        out += symbol(e.op);
        const bool wrap = precedence(e.args[0].op) < precedence(e.op);
        if (wrap)
            out += "(";
        print_into(e.args[0], out);
        if (wrap)
            out += ")";
        return;
    }
    default: break;
    }
    const int p = precedence(e.op);
    const bool cmp = p == 4;
    // left-associative: a right operand of equal precedence needs parentheses;
    // comparisons do not associate at all
    const bool wrap_left = precedence(e.args[0].op) < p || (cmp && precedence(e.args[0].op) == p);
    const bool wrap_right = precedence(e.args[1].op) <= p;
    if (wrap_left)
        out += "(";
    print_into(e.args[0], out);
    if (wrap_left)
        out += ")";
    out += " ";
    out += symbol(e.op);
    out += " ";
    if (wrap_right)
        out += "(";
    print_into(e.args[1], out);
    if (wrap_right)
        out += ")";
}

} // namespace detail

inline Expr parse_expr(const std::string& text)
{
    return detail::ExprParser(text).parse();
}

/// Canonical text with minimal parentheses; parse_expr inverts it.
inline std::string print_expr(const Expr& e)
{
    std::string out;
    detail::print_into(e, out);
    return out;
}

inline void collect_variables(const Expr& e, std::set<std::string>& out)
{
    if (e.op == Op::variable)
        out.insert(e.name);
    for (const Expr& a : e.args)
        collect_variables(a, out);
}

/// Static type of e given variable types; throws invalid_input on
/// mismatches or unknown variables.
inline Type check_type(const Expr& e, const std::map<std::string, Type>& vars)
{
    auto want = [&](const Expr& a, Type t) {
        const Type got = check_type(a, vars);
        if (got != t)
            throw Error(ErrorKind::invalid_input, "expression \"" + print_expr(e) + "\": operand \"" + print_expr(a)
                                                      + "\" is " + to_string(got) + ", expected " + to_string(t));
    };
    switch (e.op) {
    case Op::literal_int: return Type::integer;
    case Op::literal_bool: return Type::boolean;
    case Op::literal_atom: return Type::atom;
    case Op::variable: {
        auto it = vars.find(e.name);
        if (it == vars.end())
            throw Error(ErrorKind::invalid_input, "variable " + e.name + " is not in scope");
        return it->second;
    }
    case Op::negate: want(e.args[0], Type::integer); return Type::integer;
    case Op::logical_not: want(e.args[0], Type::boolean); return Type::boolean;
    case Op::add:
    case Op::sub:
    case Op::mul:
        want(e.args[0], Type::integer);
        want(e.args[1], Type::integer);
        return Type::integer;
    case Op::lt:
    case Op::le:
    case Op::gt:
    case Op::ge:
        want(e.args[0], Type::integer);
        want(e.args[1], Type::integer);
        return Type::boolean;
    case Op::eq:
    case Op::ne: want(e.args[1], check_type(e.args[0], vars)); return Type::boolean;
    case Op::logical_and:
    case Op::logical_or:
        want(e.args[0], Type::boolean);
        want(e.args[1], Type::boolean);
        return Type::boolean;
    }
    return Type::boolean;
}

using Datum = std::variant<bool, std::int64_t, std::string>;
using Evaluation = std::map<std::string, Value>;

/// Evaluates a type-checked expression. Integer overflow is a domain
/// violation.
inline Datum evaluate(const Expr& e, const Evaluation& env)
{
    auto num = [&](std::size_t k) { return std::get<std::int64_t>(evaluate(e.args[k], env)); };
    auto truth = [&](std::size_t k) { return std::get<bool>(evaluate(e.args[k], env)); };
    auto overflow = [&] { return Error(ErrorKind::domain_violation, "integer overflow in " + print_expr(e)); };
    std::int64_t r = 0;
    switch (e.op) {
    case Op::literal_int: return e.number;
    case Op::literal_bool: return e.number != 0;
    case Op::literal_atom: return e.name;
    case Op::variable: {
        auto it = env.find(e.name);
        if (it == env.end())
            throw Error(ErrorKind::invalid_input, "variable " + e.name + " has no value");
        if (auto i = std::get_if<std::int64_t>(&it->second))
            return *i;
        return std::get<std::string>(it->second);
    }
    case Op::negate:
        if (__builtin_sub_overflow(std::int64_t{0}, num(0), &r))
            throw overflow();
        return r;
    case Op::logical_not: return !truth(0);
    case Op::add:
        if (__builtin_add_overflow(num(0), num(1), &r))
            throw overflow();
        return r;
    case Op::sub:
        if (__builtin_sub_overflow(num(0), num(1), &r))
            throw overflow();
        return r;
    case Op::mul:
        if (__builtin_mul_overflow(num(0), num(1), &r))
            throw overflow();
        return r;
    case Op::eq: return evaluate(e.args[0], env) == evaluate(e.args[1], env);
    case Op::ne: return evaluate(e.args[0], env) != evaluate(e.args[1], env);
    case Op::lt: return num(0) < num(1);
    case Op::le: return num(0) <= num(1);
    case Op::gt: return num(0) > num(1);
    case Op::ge: return num(0) >= num(1);
    case Op::logical_and: return truth(0) && truth(1);
    case Op::logical_or: return truth(0) || truth(1);
    }
    return false;
}

/// An expression together with the text it was read from, so files can be
/// written back byte for byte.
struct SourceExpr {
    std::string text;
    Expr ast;

    static SourceExpr from_text(std::string text)
    {
        Expr ast = parse_expr(text);
        return {std::move(text), std::move(ast)};
    }

    friend bool operator==(const SourceExpr&, const SourceExpr&) = default;
};

} // namespace hdam
