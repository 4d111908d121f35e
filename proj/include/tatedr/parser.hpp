#pragma once

#include <string>
#include <vector>

#include "tatedr/exact_weyl.hpp"
#include "tatedr/weyl.hpp"

namespace tatedr {

/// Abstract syntax of an operator expression. Atoms are rational literals,
/// the uniformizer t, coordinates x<i> and derivations d<i>; operations are
/// binary +, -, *, unary -, and integer powers. Each node remembers its
/// source offset for error reporting.
///
/// Grammar:
///   expr     := term (("+" | "-") term)*
///   term     := factor ("*" factor)*
///   factor   := "-" factor | atom ("^" int)?
///   atom     := rational | "t" | "x"nat | "d"nat | "(" expr ")"
///   rational := nat ("/" nat)?
struct OperatorExpression {
    enum class Kind { Literal, T, Coordinate, Derivation, Sum, Difference, Product, Negation, Power };

    Kind kind = Kind::Literal;
    Rational literal = 0;  // Literal
    int index = 0;         // Coordinate / Derivation, 1-based
    int exponent = 1;      // Power
    std::size_t offset = 0;
    std::vector<OperatorExpression> children;
};

/// Recursive-descent parse. Coordinate and derivation indices are validated
/// against varCount (IndexOutOfRangeError); malformed input raises
/// SyntaxError carrying the byte offset of the offending token.
OperatorExpression parseOperator(const std::string& src, int varCount);

/// Evaluates into the truncated operator algebra at precision `prec`,
/// normalizing products through the commutation rule. Negative powers are
/// accepted only on subexpressions that evaluate to scalars, where inversion
/// is meaningful; x1^-1 or d1^-1 raise SyntaxError.
WeylOperator evaluateTruncated(const OperatorExpression& e, int varCount,
                               int prec = kDefaultTPrecision);

/// Evaluates into the exact operator class with rational-function
/// coefficients (the input of the holonomicity layer); scalar inverses are
/// exact here. The same negative-power restriction applies.
ExactWeyl evaluateExact(const OperatorExpression& e, int varCount);

WeylOperator parseTruncatedOperator(const std::string& src, int varCount,
                                    int prec = kDefaultTPrecision);
ExactWeyl parseExactOperator(const std::string& src, int varCount);

}  // namespace tatedr
