#include "mixweyl/expr.hpp"

#include <cctype>
#include <climits>

namespace mixweyl {

namespace {

ExprPtr make_node(ExprKind kind, ExprPtr lhs, ExprPtr rhs = nullptr)
{
    auto node = std::make_shared<ExprNode>();
    node->kind = kind;
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    return node;
}

ExprPtr make_number(const mpq_class& value, std::string literal)
{
    auto node = std::make_shared<ExprNode>();
    node->kind = ExprKind::number;
    node->value = value;
    node->value.canonicalize();
    node->literal = std::move(literal);
    return node;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExprPtr parse()
    {
        skip_space();
        if (pos_ == text_.size()) {
            throw SyntaxError("empty expression", pos_);
        }
        ExprPtr e = expr();
        skip_space();
        if (pos_ != text_.size()) {
            throw SyntaxError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        }
        return e;
    }

private:
    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            if (pos_ == text_.size()) {
                throw SyntaxError(std::string("expected '") + c + "' but reached end of input", pos_);
            }
            throw SyntaxError(std::string("expected '") + c + "' but found '" + text_[pos_] + "'", pos_);
        }
    }

    ExprPtr expr()
    {
        ExprPtr lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = make_node(ExprKind::add, lhs, term());
            } else if (accept('-')) {
                lhs = make_node(ExprKind::subtract, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    ExprPtr term()
    {
        ExprPtr lhs = factor();
        for (;;) {
            if (accept('*')) {
                lhs = make_node(ExprKind::multiply, lhs, factor());
            } else if (accept('/')) {
                lhs = make_node(ExprKind::divide, lhs, factor());
            } else {
                return lhs;
            }
        }
    }

    ExprPtr factor()
    {
        if (accept('-')) {
            return make_node(ExprKind::negate, power());
        }
        return power();
    }

    ExprPtr power()
    {
        ExprPtr base = atom();
        if (accept('^')) {
            return make_node(ExprKind::power, base, factor());
        }
        return base;
    }

    ExprPtr atom()
    {
        skip_space();
        if (pos_ == text_.size()) {
            throw SyntaxError("unexpected end of input", pos_);
        }
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            const std::string_view name = text_.substr(start, pos_ - start);
            if (name == "t") {
                return make_node(ExprKind::variable, nullptr);
            }
            if (name == "sqrt") {
                expect('(');
                ExprPtr arg = expr();
                expect(')');
                return make_node(ExprKind::sqrt, arg);
            }
            throw SyntaxError("unknown identifier '" + std::string(name) + "'", start);
        }
        if (accept('(')) {
            ExprPtr inner = expr();
            expect(')');
            return inner;
        }
        throw SyntaxError(std::string("unexpected '") + c + "'", pos_);
    }

    ExprPtr number()
    {
        const std::size_t start = pos_;
        std::string digits;
        std::size_t fraction_digits = 0;
        bool seen_point = false;
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                digits += c;
                if (seen_point) {
                    ++fraction_digits;
                }
            } else if (c == '.' && !seen_point) {
                seen_point = true;
            } else {
                break;
            }
            ++pos_;
        }
        if (digits.empty()) {
            throw SyntaxError("malformed number", start);
        }
        mpz_class numerator(digits, 10);
        mpz_class denominator;
        mpz_ui_pow_ui(denominator.get_mpz_t(), 10, fraction_digits);
        return make_number(mpq_class(numerator, denominator), std::string(text_.substr(start, pos_ - start)));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

// Binding strength used by the printer: higher binds tighter.
int strength(ExprKind kind)
{
    switch (kind) {
    case ExprKind::add:
    case ExprKind::subtract:
        return 1;
    case ExprKind::multiply:
    case ExprKind::divide:
        return 2;
    case ExprKind::negate:
        return 3;
    case ExprKind::power:
        return 4;
    default:
        return 5;
    }
}

void print(const ExprNode& node, std::string& out);

void print_at_least(const ExprNode& node, int min_strength, std::string& out)
{
    const bool wrap = strength(node.kind) < min_strength;
    if (wrap) {
        out += '(';
    }
    print(node, out);
    if (wrap) {
        out += ')';
    }
}

void print(const ExprNode& node, std::string& out)
{
    switch (node.kind) {
    case ExprKind::number:
        out += node.literal.empty() ? node.value.get_str() : node.literal;
        return;
    case ExprKind::variable:
        out += 't';
        return;
    case ExprKind::negate:
        out += '-';
        print_at_least(*node.lhs, 4, out);
        return;
    case ExprKind::add:
    case ExprKind::subtract:
        print_at_least(*node.lhs, 1, out);
        out += node.kind == ExprKind::add ? " + " : " - ";
        print_at_least(*node.rhs, 2, out);
        return;
    case ExprKind::multiply:
    case ExprKind::divide:
        print_at_least(*node.lhs, 2, out);
        out += node.kind == ExprKind::multiply ? "*" : "/";
        print_at_least(*node.rhs, 3, out);
        return;
    case ExprKind::power:
        print_at_least(*node.lhs, 5, out);
        out += '^';
        print_at_least(*node.rhs, 4, out);
        return;
    case ExprKind::sqrt:
        out += "sqrt(";
        print(*node.lhs, out);
        out += ')';
        return;
    }
}

Real evaluate(const ExprNode& node, long t, const PrecisionConfig& precision, Bits bits)
{
    Real result(bits);
    switch (node.kind) {
    case ExprKind::number:
        result = Real::from_rational(node.value, bits);
        break;
    case ExprKind::variable:
        result = Real(t, bits);
        break;
    case ExprKind::negate:
        result = -evaluate(*node.lhs, t, precision, bits);
        break;
    case ExprKind::add:
        result = evaluate(*node.lhs, t, precision, bits) + evaluate(*node.rhs, t, precision, bits);
        break;
    case ExprKind::subtract:
        result = evaluate(*node.lhs, t, precision, bits) - evaluate(*node.rhs, t, precision, bits);
        break;
    case ExprKind::multiply:
        result = evaluate(*node.lhs, t, precision, bits) * evaluate(*node.rhs, t, precision, bits);
        break;
    case ExprKind::divide: {
        const Real divisor = evaluate(*node.rhs, t, precision, bits);
        if (divisor.is_zero()) {
            throw DivisionByZero("division by zero at t=" + std::to_string(t));
        }
        result = evaluate(*node.lhs, t, precision, bits) / divisor;
        break;
    }
    case ExprKind::power: {
        const Real base = evaluate(*node.lhs, t, precision, bits);
        const Real exponent = evaluate(*node.rhs, t, precision, bits);
        if (base.is_zero() && exponent.sign() < 0) {
            throw DivisionByZero("zero raised to a negative power at t=" + std::to_string(t));
        }
        if (exponent.is_integer() && mpfr_fits_slong_p(exponent.get(), MPFR_RNDN)) {
            result = pow(base, exponent.to_long());
        } else if (base.sign() < 0) {
            throw EvaluationError("non-integer power of negative base at t=" + std::to_string(t));
        } else {
            result = pow(base, exponent);
        }
        break;
    }
    case ExprKind::sqrt: {
        const Real arg = evaluate(*node.lhs, t, precision, bits);
        if (arg.sign() < 0) {
            throw EvaluationError("sqrt of negative value " + arg.to_string(12) + " at t=" + std::to_string(t));
        }
        result = sqrt(arg);
        break;
    }
    }
    check_range(result, precision, "coefficient value at t=" + std::to_string(t));
    return result;
}

}  // namespace

CoefficientExpr CoefficientExpr::parse(std::string_view text) { return CoefficientExpr(Parser(text).parse()); }

CoefficientExpr CoefficientExpr::constant(const mpq_class& value)
{
    const mpq_class v = abs(value);
    ExprPtr magnitude = make_number(mpq_class(v.get_num()), v.get_num().get_str());
    if (v.get_den() != 1) {
        magnitude = make_node(ExprKind::divide, magnitude, make_number(mpq_class(v.get_den()), v.get_den().get_str()));
    }
    if (sgn(value) < 0) {
        return CoefficientExpr(make_node(ExprKind::negate, magnitude));
    }
    return CoefficientExpr(magnitude);
}

CoefficientExpr CoefficientExpr::from_node(ExprPtr root) { return CoefficientExpr(std::move(root)); }

std::string CoefficientExpr::to_string() const
{
    std::string out;
    print(*root_, out);
    return out;
}

bool CoefficientExpr::is_literal_zero() const
{
    const ExprNode* node = root_.get();
    while (node->kind == ExprKind::negate) {
        node = node->lhs.get();
    }
    return node->kind == ExprKind::number && node->value == 0;
}

bool structurally_equal(const ExprNode& lhs, const ExprNode& rhs)
{
    if (lhs.kind != rhs.kind) {
        return false;
    }
    if (lhs.kind == ExprKind::number) {
        return lhs.value == rhs.value;
    }
    if ((lhs.lhs == nullptr) != (rhs.lhs == nullptr) || (lhs.rhs == nullptr) != (rhs.rhs == nullptr)) {
        return false;
    }
    if (lhs.lhs && !structurally_equal(*lhs.lhs, *rhs.lhs)) {
        return false;
    }
    return !lhs.rhs || structurally_equal(*lhs.rhs, *rhs.rhs);
}

bool operator==(const CoefficientExpr& lhs, const CoefficientExpr& rhs) { return structurally_equal(*lhs.root_, *rhs.root_); }

Real eval_coefficient(const CoefficientExpr& expr, long t, const PrecisionConfig& precision)
{
    return evaluate(expr.root(), t, precision, precision.bits());
}

}  // namespace mixweyl
