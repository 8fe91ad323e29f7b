#include "varbound/potential.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>

namespace varbound {

Potential::Potential(std::vector<PowerTerm> terms, double kinetic_factor)
    : kinetic_factor_(kinetic_factor) {
    if (kinetic_factor != 1.0 && kinetic_factor != 0.5)
        throw domain_error("kinetic_factor must be 1 or 1/2, got " +
                           std::to_string(kinetic_factor));
    for (const auto& term : terms) {
        if (!std::isfinite(term.coefficient) || !std::isfinite(term.exponent))
            throw domain_error("potential term with non-finite coefficient or exponent");
        if (term.coefficient == 0.0) continue;
        auto it = std::find_if(terms_.begin(), terms_.end(), [&](const PowerTerm& u) {
            return u.exponent == term.exponent;
        });
        if (it != terms_.end())
            it->coefficient += term.coefficient;
        else
            terms_.push_back(term);
    }
    std::erase_if(terms_, [](const PowerTerm& u) { return u.coefficient == 0.0; });
    std::sort(terms_.begin(), terms_.end(), [](const PowerTerm& a, const PowerTerm& b) {
        return a.exponent < b.exponent;
    });
}

double Potential::min_exponent() const {
    if (terms_.empty()) return std::numeric_limits<double>::infinity();
    return terms_.front().exponent;
}

double Potential::coefficient(double q) const {
    for (const auto& term : terms_)
        if (term.exponent == q) return term.coefficient;
    return 0.0;
}

double Potential::operator()(double r) const {
    double v = 0.0;
    for (const auto& term : terms_) v += term.coefficient * std::pow(r, term.exponent);
    return v;
}

Channel::Channel(int dimension, int angular_momentum) : d_(dimension), l_(angular_momentum) {
    if (d_ < 2) throw domain_error("dimension must be >= 2, got " + std::to_string(d_));
    if (l_ < 0) throw domain_error("angular momentum must be >= 0, got " + std::to_string(l_));
}

BasisSpec::BasisSpec(int size, double power, double exponent_shift, double scale)
    : n_(size), p_(power), t_(exponent_shift), s_(scale) {
    if (n_ < 1) throw domain_error("basis size must be >= 1, got " + std::to_string(n_));
    if (!(p_ > 0.0)) throw domain_error("basis power p must be > 0, got " + std::to_string(p_));
    if (!(t_ > 0.0)) throw domain_error("basis shift t must be > 0, got " + std::to_string(t_));
    if (!(s_ > 0.0)) throw domain_error("basis scale s must be > 0, got " + std::to_string(s_));
}

namespace {

// Recursive-descent parser for the potential grammar.
class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    std::vector<PowerTerm> parse() {
        skip_space();
        if (at_end()) throw parse_error("empty potential expression", pos_);
        std::vector<PowerTerm> terms;
        double sign = leading_sign();
        terms.push_back(term(sign));
        skip_space();
        while (!at_end()) {
            char c = text_[pos_];
            if (c != '+' && c != '-')
                throw parse_error(std::string("expected '+' or '-', got '") + c + "'", pos_);
            ++pos_;
            skip_space();
            if (!at_end() && (text_[pos_] == '+' || text_[pos_] == '-'))
                throw parse_error("duplicate sign", pos_);
            terms.push_back(term(c == '-' ? -1.0 : 1.0));
            skip_space();
        }
        return terms;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    double leading_sign() {
        if (!at_end() && (text_[pos_] == '+' || text_[pos_] == '-')) {
            char c = text_[pos_++];
            skip_space();
            if (!at_end() && (text_[pos_] == '+' || text_[pos_] == '-'))
                throw parse_error("duplicate sign", pos_);
            return c == '-' ? -1.0 : 1.0;
        }
        return 1.0;
    }

    // term := [number '*'] 'r' ['^' number] | number ['/' 'r' ['^' number]] | number
    PowerTerm term(double sign) {
        skip_space();
        if (at_end()) throw parse_error("expected a term", pos_);
        double coeff = 1.0;
        bool have_number = false;
        if (text_[pos_] != 'r') {
            coeff = number();
            have_number = true;
            skip_space();
            if (at_end() || (text_[pos_] != '*' && text_[pos_] != '/'))
                return {sign * coeff, 0.0};  // bare constant
            char op = text_[pos_++];
            skip_space();
            if (at_end() || text_[pos_] != 'r')
                throw parse_error("expected 'r' after '" + std::string(1, op) + "'", pos_);
            ++pos_;
            double q = maybe_exponent();
            return {sign * coeff, op == '/' ? -q : q};
        }
        (void)have_number;
        ++pos_;  // consume 'r'
        double q = maybe_exponent();
        return {sign * coeff, q};
    }

    double maybe_exponent() {
        skip_space();
        if (!at_end() && text_[pos_] == '^') {
            ++pos_;
            skip_space();
            double sign = 1.0;
            if (!at_end() && (text_[pos_] == '+' || text_[pos_] == '-'))
                sign = text_[pos_++] == '-' ? -1.0 : 1.0;
            return sign * number();
        }
        return 1.0;
    }

    double number() {
        skip_space();
        std::size_t start = pos_;
        while (!at_end() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
            ++pos_;
        if (pos_ == start) throw parse_error("expected a number", pos_);
        // optional e-notation exponent
        if (!at_end() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t mark = pos_++;
            if (!at_end() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                pos_ = mark;  // not an exponent after all
            else
                while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        try {
            std::size_t used = 0;
            double value = std::stod(text_.substr(start, pos_ - start), &used);
            if (used != pos_ - start) throw parse_error("malformed number", start);
            return value;
        } catch (const std::exception&) {
            throw parse_error("malformed number", start);
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

std::string format_real(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

Potential parse_potential(const std::string& expression) {
    return Potential(Parser(expression).parse());
}

std::string render(const Potential& potential) {
    if (potential.empty()) return "0*r";
    std::string out;
    bool first = true;
    for (const auto& term : potential.terms()) {
        double c = term.coefficient;
        if (first) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        out += format_real(std::abs(c));
        if (term.exponent != 0.0) {
            out += "*r";
            if (term.exponent != 1.0) out += "^" + format_real(term.exponent);
        }
    }
    return out;
}

std::uint64_t degeneracy(const Channel& channel) {
    const int d = channel.dimension();
    const int l = channel.angular_momentum();
    if (l == 0) return 1;
    if (d == 2) return 2;  // (2l)(l-1)!/l! = 2 for every l >= 1
    // (2l+d-2) * (l+d-3)!/l! / (d-2)!, with (l+d-3)!/l! expanded as a product.
    unsigned __int128 num = std::uint64_t(2 * l + d - 2);
    for (int j = l + 1; j <= l + d - 3; ++j) num *= std::uint64_t(j);
    unsigned __int128 den = 1;
    for (int j = 2; j <= d - 2; ++j) den *= std::uint64_t(j);
    return std::uint64_t(num / den);
}

double minimum_t(const Potential& potential) {
    const double q_min = potential.min_exponent();
    if (!std::isfinite(q_min)) return 0.0;
    return std::max(0.0, -(2.0 + q_min));
}

void validate_basis(const BasisSpec& basis, const Potential& potential) {
    for (const auto& term : potential.terms()) {
        const double bound = -(term.exponent + 2.0);
        if (!(basis.exponent_shift() > bound))
            throw domain_error("basis shift t = " + std::to_string(basis.exponent_shift()) +
                               " too small for potential term r^" + std::to_string(term.exponent) +
                               ": need t > " + std::to_string(bound));
    }
}

}  // namespace varbound
