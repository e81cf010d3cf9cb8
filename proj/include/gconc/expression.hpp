#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace gconc {

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class FuncOp { Exp, Log, Sqrt, Sin, Cos, Tanh, Abs, Max, Min };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ConstantNode {
    double value;
};
struct VariableNode {
    int index;  // 0-based
};
struct NegateNode {
    ExprPtr operand;
};
struct BinaryNode {
    BinaryOp op;
    ExprPtr lhs;
    ExprPtr rhs;
};
struct CallNode {
    FuncOp func;
    std::vector<ExprPtr> args;
};

struct ExprNode {
    std::variant<ConstantNode, VariableNode, NegateNode, BinaryNode, CallNode> node;
};

/// Parsed expression over variables x1..xd.
///
/// Grammar (whitespace insignificant, ^ right-associative, unary minus binds
/// the atom before ^ applies):
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := unary ("^" factor)?
///   unary  := "-"? atom
///   atom   := number | var | func "(" expr ("," expr)* ")" | "(" expr ")"
///   var    := "x" integer   (1-based, in [1, d])
///   func   := exp | log | sqrt | sin | cos | tanh | abs | max | min
class ExpressionAST {
public:
    ExpressionAST(ExprPtr root, int dim) : root_(std::move(root)), dim_(dim) {}

    int dim() const { return dim_; }
    const ExprPtr& root() const { return root_; }

    double evaluate(const Eigen::VectorXd& x) const;

    /// Gradient by forward-mode dual numbers in a single pass.
    Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;

    std::string print() const;

private:
    ExprPtr root_;
    int dim_;
};

/// Throws SyntaxError / UnknownIdentifier / VariableIndexOutOfRange, each
/// carrying the byte offset into `text`.
ExpressionAST parse_expression_ast(const std::string& text, int dim);

}  // namespace gconc
