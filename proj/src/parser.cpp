#include "tatedr/parser.hpp"

#include <cctype>
#include <utility>

#include "tatedr/errors.hpp"

namespace tatedr {

namespace {

struct Token {
    enum class Type { Number, T, Coordinate, Derivation, Plus, Minus, Star, Caret, Slash, LParen, RParen, End };
    Type type = Type::End;
    Rational number = 0;  // Number
    int index = 0;        // Coordinate / Derivation
    std::size_t offset = 0;
};

class Lexer {
public:
    Lexer(const std::string& src, int varCount) : src_(src), varCount_(varCount) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        current_ = Token{};
        current_.offset = pos_;
        if (pos_ >= src_.size()) {
            current_.type = Token::Type::End;
            return;
        }
        const char c = src_[pos_];
        switch (c) {
            case '+': current_.type = Token::Type::Plus; ++pos_; return;
            case '-': current_.type = Token::Type::Minus; ++pos_; return;
            case '*': current_.type = Token::Type::Star; ++pos_; return;
            case '^': current_.type = Token::Type::Caret; ++pos_; return;
            case '/': current_.type = Token::Type::Slash; ++pos_; return;
            case '(': current_.type = Token::Type::LParen; ++pos_; return;
            case ')': current_.type = Token::Type::RParen; ++pos_; return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            current_.type = Token::Type::Number;
            current_.number = readNat();
            return;
        }
        if (c == 't' && !followedByDigit()) {
            current_.type = Token::Type::T;
            ++pos_;
            return;
        }
        if (c == 'x' || c == 'd') {
            const std::size_t at = pos_;
            ++pos_;
            if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
                throw SyntaxError(std::string("'") + c + "' needs a variable index", at);
            const Rational idx = readNat();
            if (idx < 1 || idx > varCount_)
                throw IndexOutOfRangeError("variable index " + toString(idx) + " outside 1.." +
                                           std::to_string(varCount_));
            current_.type = c == 'x' ? Token::Type::Coordinate : Token::Type::Derivation;
            current_.index = static_cast<int>(idx.get_num().get_si());
            return;
        }
        throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
    }

    bool followedByDigit() const {
        return pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]));
    }

    Rational readNat() {
        Rational value = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            value = value * 10 + (src_[pos_] - '0');
            ++pos_;
        }
        return value;
    }

    const std::string& src_;
    int varCount_;
    std::size_t pos_ = 0;
    Token current_;
};

class Parser {
public:
    Parser(const std::string& src, int varCount) : lexer_(src, varCount) {}

    OperatorExpression parse() {
        OperatorExpression e = parseExpr();
        if (lexer_.peek().type != Token::Type::End)
            throw SyntaxError("trailing input after expression", lexer_.peek().offset);
        return e;
    }

private:
    static OperatorExpression node(OperatorExpression::Kind kind, std::size_t offset) {
        OperatorExpression e;
        e.kind = kind;
        e.offset = offset;
        return e;
    }

    OperatorExpression parseExpr() {
        OperatorExpression lhs = parseTerm();
        while (lexer_.peek().type == Token::Type::Plus || lexer_.peek().type == Token::Type::Minus) {
            const Token op = lexer_.take();
            OperatorExpression parent = node(op.type == Token::Type::Plus
                                                 ? OperatorExpression::Kind::Sum
                                                 : OperatorExpression::Kind::Difference,
                                             op.offset);
            parent.children.push_back(std::move(lhs));
            parent.children.push_back(parseTerm());
            lhs = std::move(parent);
        }
        return lhs;
    }

    OperatorExpression parseTerm() {
        OperatorExpression lhs = parseFactor();
        while (lexer_.peek().type == Token::Type::Star) {
            const Token op = lexer_.take();
            OperatorExpression parent = node(OperatorExpression::Kind::Product, op.offset);
            parent.children.push_back(std::move(lhs));
            parent.children.push_back(parseFactor());
            lhs = std::move(parent);
        }
        return lhs;
    }

    OperatorExpression parseFactor() {
        if (lexer_.peek().type == Token::Type::Minus) {
            const Token op = lexer_.take();
            OperatorExpression neg = node(OperatorExpression::Kind::Negation, op.offset);
            neg.children.push_back(parseFactor());
            return neg;
        }
        OperatorExpression base = parseAtom();
        if (lexer_.peek().type == Token::Type::Caret) {
            const Token caret = lexer_.take();
            OperatorExpression pow = node(OperatorExpression::Kind::Power, caret.offset);
            pow.exponent = parseSignedInt();
            pow.children.push_back(std::move(base));
            return pow;
        }
        return base;
    }

    int parseSignedInt() {
        int sign = 1;
        if (lexer_.peek().type == Token::Type::Minus) {
            lexer_.take();
            sign = -1;
        }
        const Token t = lexer_.take();
        if (t.type != Token::Type::Number) throw SyntaxError("exponent must be an integer", t.offset);
        return sign * static_cast<int>(t.number.get_num().get_si());
    }

    OperatorExpression parseAtom() {
        const Token t = lexer_.take();
        switch (t.type) {
            case Token::Type::Number: {
                OperatorExpression e = node(OperatorExpression::Kind::Literal, t.offset);
                e.literal = t.number;
                if (lexer_.peek().type == Token::Type::Slash) {
                    lexer_.take();
                    const Token den = lexer_.take();
                    if (den.type != Token::Type::Number)
                        throw SyntaxError("denominator must be a natural number", den.offset);
                    if (den.number == 0) throw SyntaxError("division by zero", den.offset);
                    e.literal = e.literal / den.number;
                }
                return e;
            }
            case Token::Type::T:
                return node(OperatorExpression::Kind::T, t.offset);
            case Token::Type::Coordinate: {
                OperatorExpression e = node(OperatorExpression::Kind::Coordinate, t.offset);
                e.index = t.index;
                return e;
            }
            case Token::Type::Derivation: {
                OperatorExpression e = node(OperatorExpression::Kind::Derivation, t.offset);
                e.index = t.index;
                return e;
            }
            case Token::Type::LParen: {
                OperatorExpression e = parseExpr();
                const Token close = lexer_.take();
                if (close.type != Token::Type::RParen)
                    throw SyntaxError("expected ')'", close.offset);
                return e;
            }
            default:
                throw SyntaxError("expected a rational, t, x<i>, d<i>, or '('", t.offset);
        }
    }

    Lexer lexer_;
};

bool scalarOperator(const WeylOperator& op) {
    if (op.termCount() != 1) return false;
    const MultiIndex zero(static_cast<std::size_t>(op.varCount()), 0);
    const TateElement c = op.coefficientOf(zero);
    return c.isScalar() && op.order() <= 0;
}

}  // namespace

OperatorExpression parseOperator(const std::string& src, int varCount) {
    if (varCount < 1) throw std::invalid_argument("variable count must be at least 1");
    return Parser(src, varCount).parse();
}

WeylOperator evaluateTruncated(const OperatorExpression& e, int varCount, int prec) {
    switch (e.kind) {
        case OperatorExpression::Kind::Literal:
            return WeylOperator::fromScalar(LaurentScalar::fromRational(e.literal, prec), varCount);
        case OperatorExpression::Kind::T:
            return WeylOperator::fromScalar(LaurentScalar::tPower(1, prec), varCount);
        case OperatorExpression::Kind::Coordinate:
            return WeylOperator::fromCoefficient(TateElement::variable(e.index, varCount, prec));
        case OperatorExpression::Kind::Derivation:
            return WeylOperator::derivation(e.index, varCount, prec);
        case OperatorExpression::Kind::Sum:
            return evaluateTruncated(e.children[0], varCount, prec) +
                   evaluateTruncated(e.children[1], varCount, prec);
        case OperatorExpression::Kind::Difference:
            return evaluateTruncated(e.children[0], varCount, prec) -
                   evaluateTruncated(e.children[1], varCount, prec);
        case OperatorExpression::Kind::Product:
            return evaluateTruncated(e.children[0], varCount, prec) *
                   evaluateTruncated(e.children[1], varCount, prec);
        case OperatorExpression::Kind::Negation:
            return -evaluateTruncated(e.children[0], varCount, prec);
        case OperatorExpression::Kind::Power: {
            const WeylOperator base = evaluateTruncated(e.children[0], varCount, prec);
            int n = e.exponent;
            if (n < 0) {
                if (!scalarOperator(base))
                    throw SyntaxError("negative powers require an invertible scalar subexpression",
                                      e.offset);
                const MultiIndex zero(static_cast<std::size_t>(varCount), 0);
                const LaurentScalar inv = base.coefficientOf(zero).asScalar().inverse();
                WeylOperator acc = WeylOperator::one(varCount, prec);
                const WeylOperator step = WeylOperator::fromScalar(inv, varCount);
                for (int i = 0; i < -n; ++i) acc = acc * step;
                return acc;
            }
            WeylOperator acc = WeylOperator::one(varCount, prec);
            for (int i = 0; i < n; ++i) acc = acc * base;
            return acc;
        }
    }
    throw std::logic_error("unhandled expression node");
}

ExactWeyl evaluateExact(const OperatorExpression& e, int varCount) {
    switch (e.kind) {
        case OperatorExpression::Kind::Literal:
            return ExactWeyl::fromRatFun(RatFun::constant(e.literal), varCount);
        case OperatorExpression::Kind::T:
            return ExactWeyl::fromRatFun(RatFun::t(), varCount);
        case OperatorExpression::Kind::Coordinate:
            return ExactWeyl::x(e.index, varCount);
        case OperatorExpression::Kind::Derivation:
            return ExactWeyl::d(e.index, varCount);
        case OperatorExpression::Kind::Sum:
            return evaluateExact(e.children[0], varCount) + evaluateExact(e.children[1], varCount);
        case OperatorExpression::Kind::Difference:
            return evaluateExact(e.children[0], varCount) - evaluateExact(e.children[1], varCount);
        case OperatorExpression::Kind::Product:
            return evaluateExact(e.children[0], varCount) * evaluateExact(e.children[1], varCount);
        case OperatorExpression::Kind::Negation:
            return -evaluateExact(e.children[0], varCount);
        case OperatorExpression::Kind::Power: {
            const ExactWeyl base = evaluateExact(e.children[0], varCount);
            int n = e.exponent;
            if (n < 0) {
                if (!base.isScalar())
                    throw SyntaxError("negative powers require an invertible scalar subexpression",
                                      e.offset);
                const RatFun value = base.asRatFun();
                if (value.isZero())
                    throw SyntaxError("negative power of zero", e.offset);
                ExactWeyl acc = ExactWeyl::one(varCount);
                const ExactWeyl step = ExactWeyl::fromRatFun(value.inverse(), varCount);
                for (int i = 0; i < -n; ++i) acc = acc * step;
                return acc;
            }
            ExactWeyl acc = ExactWeyl::one(varCount);
            for (int i = 0; i < n; ++i) acc = acc * base;
            return acc;
        }
    }
    throw std::logic_error("unhandled expression node");
}

WeylOperator parseTruncatedOperator(const std::string& src, int varCount, int prec) {
    return evaluateTruncated(parseOperator(src, varCount), varCount, prec);
}

ExactWeyl parseExactOperator(const std::string& src, int varCount) {
    return evaluateExact(parseOperator(src, varCount), varCount);
}

}  // namespace tatedr
