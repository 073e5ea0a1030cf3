#include "twocross/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

namespace twocross {

struct Expression::Node {
    enum Kind { Number, Variable, Neg, Add, Sub, Mul, Div, Pow, Sqrt } kind;
    double value = 0.0;   // Number
    int var = 0;          // Variable: 0..2
    long ipow = 0;        // Pow exponent
    std::shared_ptr<const Node> a, b;
};

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

namespace {

NodePtr num(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Number;
    n->value = v;
    return n;
}

NodePtr make(Node::Kind k, NodePtr a, NodePtr b = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

double eval_node(const Node& n, double x1, double x2, double x3) {
    switch (n.kind) {
        case Node::Number: return n.value;
        case Node::Variable: return n.var == 0 ? x1 : (n.var == 1 ? x2 : x3);
        case Node::Neg: return -eval_node(*n.a, x1, x2, x3);
        case Node::Add: return eval_node(*n.a, x1, x2, x3) + eval_node(*n.b, x1, x2, x3);
        case Node::Sub: return eval_node(*n.a, x1, x2, x3) - eval_node(*n.b, x1, x2, x3);
        case Node::Mul: return eval_node(*n.a, x1, x2, x3) * eval_node(*n.b, x1, x2, x3);
        case Node::Div: {
            double d = eval_node(*n.b, x1, x2, x3);
            if (d == 0.0) throw EvalError("division by zero");
            return eval_node(*n.a, x1, x2, x3) / d;
        }
        case Node::Pow: {
            double base = eval_node(*n.a, x1, x2, x3);
            long e = n.ipow;
            if (e < 0) {
                if (base == 0.0) throw EvalError("zero raised to a negative power");
                return 1.0 / std::pow(base, static_cast<double>(-e));
            }
            double r = 1.0;
            for (long i = 0; i < e; ++i) r *= base;
            return r;
        }
        case Node::Sqrt: {
            double v = eval_node(*n.a, x1, x2, x3);
            if (v < 0.0) throw EvalError("sqrt of a negative value");
            return std::sqrt(v);
        }
    }
    throw EvalError("corrupt expression node");
}

bool const_node(const Node& n) {
    switch (n.kind) {
        case Node::Number: return true;
        case Node::Variable: return false;
        case Node::Neg:
        case Node::Sqrt: return const_node(*n.a);
        case Node::Pow: return const_node(*n.a);
        default: return const_node(*n.a) && const_node(*n.b);
    }
}

std::string fmt_number(double v) {
    if (v == static_cast<long long>(v) && std::abs(v) < 1e15) {
        return std::to_string(static_cast<long long>(v));
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Precedence levels used for printing: add=1, mul=2, neg=3, pow=4, atom=5.
int level(const Node& n) {
    switch (n.kind) {
        case Node::Add:
        case Node::Sub: return 1;
        case Node::Mul:
        case Node::Div: return 2;
        case Node::Neg: return 3;
        case Node::Pow: return 4;
        default: return 5;
    }
}

std::string print_node(const Node& n);

std::string child(const Node& c, int min_level) {
    std::string s = print_node(c);
    if (level(c) < min_level) return "(" + s + ")";
    return s;
}

std::string print_node(const Node& n) {
    switch (n.kind) {
        case Node::Number:
            if (n.value < 0) return "(" + fmt_number(n.value) + ")";
            return fmt_number(n.value);
        case Node::Variable: return n.var == 0 ? "x1" : (n.var == 1 ? "x2" : "x3");
        case Node::Neg: return "-" + child(*n.a, 3);
        case Node::Add: return child(*n.a, 1) + " + " + child(*n.b, 1);
        // right side of - and / needs one level more to survive reparse
        case Node::Sub: return child(*n.a, 1) + " - " + child(*n.b, 2);
        case Node::Mul: return child(*n.a, 2) + " * " + child(*n.b, 2);
        case Node::Div: return child(*n.a, 2) + " / " + child(*n.b, 3);
        case Node::Pow: return child(*n.a, 5) + "^" + std::to_string(n.ipow);
        case Node::Sqrt: return "sqrt(" + print_node(*n.a) + ")";
    }
    return "?";
}

class Parser {
public:
    Parser(const std::string& text, const std::map<std::string, double>& params)
        : s_(text), params_(params) {}

    NodePtr run() {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError("empty expression", 0);
        NodePtr e = sum();
        skip_ws();
        if (pos_ < s_.size()) throw ParseError("trailing input", pos_);
        return e;
    }

private:
    const std::string& s_;
    const std::map<std::string, double>& params_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) { ++pos_; return true; }
        return false;
    }

    NodePtr sum() {
        NodePtr e = term();
        for (;;) {
            if (accept('+')) e = make(Node::Add, e, term());
            else if (accept('-')) e = make(Node::Sub, e, term());
            else return e;
        }
    }

    NodePtr term() {
        NodePtr e = unary();
        for (;;) {
            if (accept('*')) e = make(Node::Mul, e, unary());
            else if (accept('/')) e = make(Node::Div, e, unary());
            else return e;
        }
    }

    NodePtr unary() {
        if (accept('-')) return make(Node::Neg, unary());
        return power();
    }

    NodePtr power() {
        NodePtr base = atom();
        if (accept('^')) {
            skip_ws();
            std::size_t at = pos_;
            bool neg = false;
            if (pos_ < s_.size() && s_[pos_] == '-') { neg = true; ++pos_; }
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                throw ParseError("integer exponent expected after '^'", at);
            long e = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                e = e * 10 + (s_[pos_++] - '0');
            auto n = std::make_shared<Node>();
            n->kind = Node::Pow;
            n->a = base;
            n->ipow = neg ? -e : e;
            return n;
        }
        return base;
    }

    NodePtr atom() {
        skip_ws();
        std::size_t at = pos_;
        if (pos_ >= s_.size()) throw ParseError("unexpected end of expression", at);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = sum();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        throw ParseError(std::string("unexpected character '") + c + "'", at);
    }

    NodePtr number() {
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
            ++pos_;
        // exponent form 1e-3
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t save = pos_;
            ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            } else {
                pos_ = save;
            }
        }
        try {
            return num(std::stod(s_.substr(start, pos_ - start)));
        } catch (const std::exception&) {
            throw ParseError("malformed number", start);
        }
    }

    NodePtr identifier() {
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        std::string name = s_.substr(start, pos_ - start);
        if (name == "x1" || name == "x2" || name == "x3") {
            auto n = std::make_shared<Node>();
            n->kind = Node::Variable;
            n->var = name[1] - '1';
            return n;
        }
        if (name == "sqrt") {
            if (!accept('(')) throw ParseError("expected '(' after sqrt", pos_);
            NodePtr arg = sum();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return make(Node::Sqrt, arg);
        }
        auto it = params_.find(name);
        if (it != params_.end()) return num(it->second);
        throw ParseError("unknown identifier '" + name + "'", start);
    }
};

}  // namespace

double Expression::eval(double x1, double x2, double x3) const {
    if (!root_) throw EvalError("empty expression");
    return eval_node(*root_, x1, x2, x3);
}

std::string Expression::pretty() const {
    if (!root_) return "";
    return print_node(*root_);
}

bool Expression::is_constant() const { return root_ && const_node(*root_); }

Expression parse_expression(const std::string& text,
                            const std::map<std::string, double>& params) {
    return Expression(Parser(text, params).run());
}

Expression make_constant(double value) { return Expression(num(value)); }

}  // namespace twocross
