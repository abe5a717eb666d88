#pragma once

#include <array>
#include <cctype>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "hausd/rational.hpp"

namespace hausd {

/// A deliberately small expression language for the scalar shape functions
/// of extended distances: constants, named variables, +, -, *, abs, min,
/// max, and integer powers. Anything outside this grammar is rejected, which
/// keeps the admissible shape functions auditable.
template <class S>
class Expr {
public:
    static Expr constant(S v) { return Expr(Node{Op::Const, std::move(v), -1, 0, {}}); }
    static Expr var(int index) { return Expr(Node{Op::Var, S(0), index, 0, {}}); }
    static Expr add(Expr a, Expr b) { return binary(Op::Add, std::move(a), std::move(b)); }
    static Expr sub(Expr a, Expr b) { return binary(Op::Sub, std::move(a), std::move(b)); }
    static Expr mul(Expr a, Expr b) { return binary(Op::Mul, std::move(a), std::move(b)); }
    static Expr min(Expr a, Expr b) { return binary(Op::Min, std::move(a), std::move(b)); }
    static Expr max(Expr a, Expr b) { return binary(Op::Max, std::move(a), std::move(b)); }
    static Expr abs(Expr a) {
        Node n{Op::Abs, S(0), -1, 0, {}};
        n.kids.push_back(std::make_shared<Node>(std::move(a.node_)));
        return Expr(std::move(n));
    }
    static Expr pow(Expr a, int exponent) {
        if (exponent < 0) throw std::invalid_argument("Expr::pow: negative exponent");
        Node n{Op::Pow, S(0), -1, exponent, {}};
        n.kids.push_back(std::make_shared<Node>(std::move(a.node_)));
        return Expr(std::move(n));
    }

    S eval(const std::array<S, 3>& vars) const { return eval_node(node_, vars); }

    /// Parses the grammar  expr := term (('+'|'-') term)* ; term := atom ('*' atom)* ;
    /// atom := number | name | fn '(' ... ')' | '(' expr ')'  with the given
    /// variable names. "id" is accepted as a synonym for the first variable.
    static Expr parse(const std::string& text, const std::vector<std::string>& var_names) {
        Parser p{text, 0, var_names};
        Expr e = p.parse_expr();
        p.skip_ws();
        if (p.pos != text.size()) throw std::invalid_argument("Expr::parse: trailing input in '" + text + "'");
        return e;
    }

private:
    enum class Op { Const, Var, Add, Sub, Mul, Abs, Min, Max, Pow };

    struct Node {
        Op op;
        S k;
        int var;
        int exponent;
        std::vector<std::shared_ptr<Node>> kids;
    };

    explicit Expr(Node n) : node_(std::move(n)) {}

    static Expr binary(Op op, Expr a, Expr b) {
        Node n{op, S(0), -1, 0, {}};
        n.kids.push_back(std::make_shared<Node>(std::move(a.node_)));
        n.kids.push_back(std::make_shared<Node>(std::move(b.node_)));
        return Expr(std::move(n));
    }

    static S eval_node(const Node& n, const std::array<S, 3>& vars) {
        switch (n.op) {
            case Op::Const: return n.k;
            case Op::Var: return vars[n.var];
            case Op::Add: return eval_node(*n.kids[0], vars) + eval_node(*n.kids[1], vars);
            case Op::Sub: return eval_node(*n.kids[0], vars) - eval_node(*n.kids[1], vars);
            case Op::Mul: return eval_node(*n.kids[0], vars) * eval_node(*n.kids[1], vars);
            case Op::Min: return std::min(eval_node(*n.kids[0], vars), eval_node(*n.kids[1], vars));
            case Op::Max: return std::max(eval_node(*n.kids[0], vars), eval_node(*n.kids[1], vars));
            case Op::Abs: return num::abs_val(eval_node(*n.kids[0], vars));
            case Op::Pow: return num::int_pow(eval_node(*n.kids[0], vars), n.exponent);
        }
        throw std::logic_error("unreachable");
    }

    struct Parser {
        const std::string& text;
        std::size_t pos;
        const std::vector<std::string>& vars;

        void skip_ws() {
            while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        }
        bool eat(char c) {
            skip_ws();
            if (pos < text.size() && text[pos] == c) { ++pos; return true; }
            return false;
        }
        void expect(char c) {
            if (!eat(c)) throw std::invalid_argument(std::string("Expr::parse: expected '") + c + "'");
        }

        Expr parse_expr() {
            Expr acc = parse_term();
            while (true) {
                if (eat('+')) acc = Expr::add(std::move(acc), parse_term());
                else if (eat('-')) acc = Expr::sub(std::move(acc), parse_term());
                else return acc;
            }
        }
        Expr parse_term() {
            Expr acc = parse_atom();
            while (eat('*')) acc = Expr::mul(std::move(acc), parse_atom());
            return acc;
        }
        Expr parse_atom() {
            skip_ws();
            if (pos >= text.size()) throw std::invalid_argument("Expr::parse: unexpected end of input");
            char c = text[pos];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
            if (c == '(') {
                ++pos;
                Expr e = parse_expr();
                expect(')');
                return e;
            }
            std::string name = parse_name();
            if (name == "abs") {
                expect('(');
                Expr a = parse_expr();
                expect(')');
                return Expr::abs(std::move(a));
            }
            if (name == "min" || name == "max") {
                expect('(');
                Expr a = parse_expr();
                expect(',');
                Expr b = parse_expr();
                expect(')');
                return name == "min" ? Expr::min(std::move(a), std::move(b)) : Expr::max(std::move(a), std::move(b));
            }
            if (name == "pow") {
                expect('(');
                Expr a = parse_expr();
                expect(',');
                skip_ws();
                std::size_t start = pos;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
                if (start == pos) throw std::invalid_argument("Expr::parse: pow needs an integer exponent");
                int e = std::stoi(text.substr(start, pos - start));
                expect(')');
                return Expr::pow(std::move(a), e);
            }
            if (name == "id") return Expr::var(0);
            for (std::size_t i = 0; i < vars.size(); ++i)
                if (vars[i] == name) return Expr::var(static_cast<int>(i));
            throw std::invalid_argument("Expr::parse: unknown name '" + name + "'");
        }
        Expr parse_number() {
            std::size_t start = pos;
            while (pos < text.size() &&
                   (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.' || text[pos] == '/'))
                ++pos;
            const std::string lit = text.substr(start, pos - start);
            if constexpr (std::is_same_v<S, double>) return Expr::constant(std::stod(lit));
            else return Expr::constant(Rational::parse(lit));
        }
        std::string parse_name() {
            skip_ws();
            std::size_t start = pos;
            while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                ++pos;
            if (start == pos) throw std::invalid_argument("Expr::parse: expected a name at '" + text.substr(pos) + "'");
            return text.substr(start, pos - start);
        }
    };

    Node node_;
};

}  // namespace hausd
