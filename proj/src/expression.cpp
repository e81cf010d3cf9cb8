#include "gconc/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "gconc/autodiff.hpp"
#include "gconc/errors.hpp"

namespace gconc {

namespace {

// ---------------------------------------------------------------------------
// Evaluation, generic over double and Dual.

template <class T>
T make_const(double c, const std::vector<T>& vars);

template <>
double make_const<double>(double c, const std::vector<double>&) {
    return c;
}
template <>
Dual make_const<Dual>(double c, const std::vector<Dual>& vars) {
    return Dual::constant(c, vars.empty() ? 0 : vars.front().g.size());
}

inline double value_of(double x) { return x; }
inline double value_of(const Dual& x) { return x.v; }

template <class T>
T eval_node(const ExprNode& node, const std::vector<T>& vars) {
    using std::abs;
    using std::cos;
    using std::exp;
    using std::log;
    using std::pow;
    using std::sin;
    using std::sqrt;
    using std::tanh;

    if (const auto* c = std::get_if<ConstantNode>(&node.node)) return make_const<T>(c->value, vars);
    if (const auto* v = std::get_if<VariableNode>(&node.node))
        return vars[static_cast<std::size_t>(v->index)];
    if (const auto* u = std::get_if<NegateNode>(&node.node)) return -eval_node(*u->operand, vars);
    if (const auto* b = std::get_if<BinaryNode>(&node.node)) {
        T lhs = eval_node(*b->lhs, vars);
        switch (b->op) {
            case BinaryOp::Add: return lhs + eval_node(*b->rhs, vars);
            case BinaryOp::Sub: return lhs - eval_node(*b->rhs, vars);
            case BinaryOp::Mul: return lhs * eval_node(*b->rhs, vars);
            case BinaryOp::Div: return lhs / eval_node(*b->rhs, vars);
            case BinaryOp::Pow:
                // Constant exponents use the power rule, which stays valid
                // for non-positive bases with integer exponents.
                if (const auto* ce = std::get_if<ConstantNode>(&b->rhs->node))
                    return pow(lhs, ce->value);
                return pow(lhs, eval_node(*b->rhs, vars));
        }
    }
    const auto& call = std::get<CallNode>(node.node);
    if (call.func == FuncOp::Max || call.func == FuncOp::Min) {
        T best = eval_node(*call.args[0], vars);
        for (std::size_t i = 1; i < call.args.size(); ++i) {
            T cand = eval_node(*call.args[i], vars);
            bool better = call.func == FuncOp::Max ? value_of(cand) > value_of(best)
                                                   : value_of(cand) < value_of(best);
            if (better) best = cand;  // ties keep the earliest argument
        }
        return best;
    }
    T arg = eval_node(*call.args[0], vars);
    switch (call.func) {
        case FuncOp::Exp: return exp(arg);
        case FuncOp::Log: return log(arg);
        case FuncOp::Sqrt: return sqrt(arg);
        case FuncOp::Sin: return sin(arg);
        case FuncOp::Cos: return cos(arg);
        case FuncOp::Tanh: return tanh(arg);
        case FuncOp::Abs: return abs(arg);
        default: break;
    }
    throw Error("unreachable: bad function op");
}

// ---------------------------------------------------------------------------
// Lexer.

enum class TokKind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
    TokKind kind;
    std::size_t pos;
    double number = 0.0;
    std::string text;
};

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto isdig = [](char c) { return c >= '0' && c <= '9'; };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (isdig(c) || (c == '.' && i + 1 < src.size() && isdig(src[i + 1]))) {
            while (i < src.size() && isdig(src[i])) ++i;
            if (i < src.size() && src[i] == '.') {
                ++i;
                while (i < src.size() && isdig(src[i])) ++i;
            }
            if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
                std::size_t mark = i;
                ++i;
                if (i < src.size() && (src[i] == '+' || src[i] == '-')) ++i;
                if (i < src.size() && isdig(src[i])) {
                    while (i < src.size() && isdig(src[i])) ++i;
                } else {
                    i = mark;  // "2e" is the number 2 followed by identifier e
                }
            }
            Token t{TokKind::Number, start};
            t.number = std::strtod(src.substr(start, i - start).c_str(), nullptr);
            out.push_back(std::move(t));
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
                ++i;
            Token t{TokKind::Ident, start};
            t.text = src.substr(start, i - start);
            out.push_back(std::move(t));
            continue;
        }
        TokKind kind;
        switch (c) {
            case '+': kind = TokKind::Plus; break;
            case '-': kind = TokKind::Minus; break;
            case '*': kind = TokKind::Star; break;
            case '/': kind = TokKind::Slash; break;
            case '^': kind = TokKind::Caret; break;
            case '(': kind = TokKind::LParen; break;
            case ')': kind = TokKind::RParen; break;
            case ',': kind = TokKind::Comma; break;
            default:
                throw SyntaxError(std::string("unexpected character '") + c + "'", start);
        }
        out.push_back(Token{kind, start});
        ++i;
    }
    out.push_back(Token{TokKind::End, src.size()});
    return out;
}

// ---------------------------------------------------------------------------
// Recursive-descent parser.

const std::unordered_map<std::string, FuncOp>& function_table() {
    static const std::unordered_map<std::string, FuncOp> table = {
        {"exp", FuncOp::Exp}, {"log", FuncOp::Log},   {"sqrt", FuncOp::Sqrt},
        {"sin", FuncOp::Sin}, {"cos", FuncOp::Cos},   {"tanh", FuncOp::Tanh},
        {"abs", FuncOp::Abs}, {"max", FuncOp::Max},   {"min", FuncOp::Min},
    };
    return table;
}

class Parser {
public:
    Parser(std::vector<Token> tokens, int dim) : tokens_(std::move(tokens)), dim_(dim) {}

    ExprPtr parse() {
        ExprPtr e = parse_expr();
        expect(TokKind::End, "trailing input");
        return e;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    Token take() { return tokens_[pos_++]; }
    bool accept(TokKind k) {
        if (peek().kind == k) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(TokKind k, const char* what) {
        if (!accept(k)) throw SyntaxError(std::string("expected ") + what, peek().pos);
    }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        for (;;) {
            if (accept(TokKind::Plus))
                lhs = make(BinaryNode{BinaryOp::Add, lhs, parse_term()});
            else if (accept(TokKind::Minus))
                lhs = make(BinaryNode{BinaryOp::Sub, lhs, parse_term()});
            else
                return lhs;
        }
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_factor();
        for (;;) {
            if (accept(TokKind::Star))
                lhs = make(BinaryNode{BinaryOp::Mul, lhs, parse_factor()});
            else if (accept(TokKind::Slash))
                lhs = make(BinaryNode{BinaryOp::Div, lhs, parse_factor()});
            else
                return lhs;
        }
    }

    ExprPtr parse_factor() {
        ExprPtr base = parse_unary();
        if (accept(TokKind::Caret)) return make(BinaryNode{BinaryOp::Pow, base, parse_factor()});
        return base;
    }

    ExprPtr parse_unary() {
        if (accept(TokKind::Minus)) return make(NegateNode{parse_atom()});
        return parse_atom();
    }

    ExprPtr parse_atom() {
        const Token& t = peek();
        if (t.kind == TokKind::Number) return make(ConstantNode{take().number});
        if (t.kind == TokKind::LParen) {
            take();
            ExprPtr inner = parse_expr();
            expect(TokKind::RParen, "')'");
            return inner;
        }
        if (t.kind == TokKind::Ident) {
            Token ident = take();
            auto fn = function_table().find(ident.text);
            if (fn != function_table().end()) return parse_call(fn->second, ident.pos);
            if (ident.text.size() >= 2 && ident.text[0] == 'x' &&
                ident.text.find_first_not_of("0123456789", 1) == std::string::npos) {
                long idx = std::strtol(ident.text.c_str() + 1, nullptr, 10);
                if (idx < 1 || idx > dim_)
                    throw VariableIndexOutOfRange("variable " + ident.text +
                                                      " out of range for dimension " +
                                                      std::to_string(dim_),
                                                  ident.pos);
                return make(VariableNode{static_cast<int>(idx - 1)});
            }
            throw UnknownIdentifier("unknown identifier '" + ident.text + "'", ident.pos);
        }
        throw SyntaxError("expected number, variable, function or '('", t.pos);
    }

    ExprPtr parse_call(FuncOp func, std::size_t pos) {
        expect(TokKind::LParen, "'(' after function name");
        std::vector<ExprPtr> args;
        args.push_back(parse_expr());
        while (accept(TokKind::Comma)) args.push_back(parse_expr());
        expect(TokKind::RParen, "')'");
        bool variadic = func == FuncOp::Max || func == FuncOp::Min;
        if (!variadic && args.size() != 1)
            throw SyntaxError("function takes exactly one argument", pos);
        return make(CallNode{func, std::move(args)});
    }

    template <class N>
    static ExprPtr make(N&& n) {
        return std::make_shared<const ExprNode>(ExprNode{std::forward<N>(n)});
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    int dim_;
};

// ---------------------------------------------------------------------------
// Printer (fully parenthesized; reparsing yields an equivalent tree).

const char* func_name(FuncOp f) {
    switch (f) {
        case FuncOp::Exp: return "exp";
        case FuncOp::Log: return "log";
        case FuncOp::Sqrt: return "sqrt";
        case FuncOp::Sin: return "sin";
        case FuncOp::Cos: return "cos";
        case FuncOp::Tanh: return "tanh";
        case FuncOp::Abs: return "abs";
        case FuncOp::Max: return "max";
        case FuncOp::Min: return "min";
    }
    return "?";
}

void print_node(const ExprNode& node, std::string& out) {
    if (const auto* c = std::get_if<ConstantNode>(&node.node)) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", c->value);
        out += buf;
        return;
    }
    if (const auto* v = std::get_if<VariableNode>(&node.node)) {
        out += "x" + std::to_string(v->index + 1);
        return;
    }
    if (const auto* u = std::get_if<NegateNode>(&node.node)) {
        out += "(-";
        print_node(*u->operand, out);
        out += ")";
        return;
    }
    if (const auto* b = std::get_if<BinaryNode>(&node.node)) {
        const char* op = nullptr;
        switch (b->op) {
            case BinaryOp::Add: op = " + "; break;
            case BinaryOp::Sub: op = " - "; break;
            case BinaryOp::Mul: op = " * "; break;
            case BinaryOp::Div: op = " / "; break;
            case BinaryOp::Pow: op = " ^ "; break;
        }
        out += "(";
        print_node(*b->lhs, out);
        out += op;
        print_node(*b->rhs, out);
        out += ")";
        return;
    }
    const auto& call = std::get<CallNode>(node.node);
    out += func_name(call.func);
    out += "(";
    for (std::size_t i = 0; i < call.args.size(); ++i) {
        if (i) out += ", ";
        print_node(*call.args[i], out);
    }
    out += ")";
}

}  // namespace

double ExpressionAST::evaluate(const Eigen::VectorXd& x) const {
    std::vector<double> vars(x.data(), x.data() + x.size());
    return eval_node(*root_, vars);
}

Eigen::VectorXd ExpressionAST::gradient(const Eigen::VectorXd& x) const {
    std::vector<Dual> vars;
    vars.reserve(static_cast<std::size_t>(x.size()));
    for (Eigen::Index i = 0; i < x.size(); ++i)
        vars.push_back(Dual::variable(x[i], x.size(), i));
    return eval_node(*root_, vars).g;
}

std::string ExpressionAST::print() const {
    std::string out;
    print_node(*root_, out);
    return out;
}

ExpressionAST parse_expression_ast(const std::string& text, int dim) {
    if (dim < 1) throw NonPositiveInput("dimension must be >= 1");
    Parser parser(lex(text), dim);
    return ExpressionAST(parser.parse(), dim);
}

}  // namespace gconc
