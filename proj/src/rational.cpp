#include "snlab/rational.hpp"
#include "snlab/errors.hpp"

#include <cctype>
#include <cmath>
#include <string>

namespace snlab {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

mpz_class pow10(unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

}

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    if (text.empty()) {
        throw ParseError("empty number");
    }
    const std::string original(text);

    bool negative = false;
    if (text.front() == '-' || text.front() == '+') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }

    Rational result;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = text.substr(0, slash);
        auto den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            throw ParseError("malformed rational '" + original + "'");
        }
        mpz_class d(std::string(den), 10);
        if (d == 0) {
            throw ParseError("zero denominator in '" + original + "'");
        }
        result = Rational(mpz_class(std::string(num), 10), d);
    } else {
        long exponent = 0;
        if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
            auto exp_text = std::string(text.substr(e + 1));
            std::string_view digits = exp_text;
            if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
                digits.remove_prefix(1);
            }
            if (!all_digits(digits) || digits.size() > 6) {
                throw ParseError("malformed exponent in '" + original + "'");
            }
            exponent = std::stol(exp_text);
            text = text.substr(0, e);
        }
        std::string mantissa;
        long frac_digits = 0;
        if (auto dot = text.find('.'); dot != std::string_view::npos) {
            auto int_part = text.substr(0, dot);
            auto frac_part = text.substr(dot + 1);
            if ((int_part.empty() && frac_part.empty()) ||
                (!int_part.empty() && !all_digits(int_part)) ||
                (!frac_part.empty() && !all_digits(frac_part))) {
                throw ParseError("malformed decimal '" + original + "'");
            }
            mantissa = std::string(int_part) + std::string(frac_part);
            frac_digits = static_cast<long>(frac_part.size());
        } else {
            if (!all_digits(text)) {
                throw ParseError("malformed number '" + original + "'");
            }
            mantissa = std::string(text);
        }
        if (mantissa.empty()) {
            mantissa = "0";
        }
        long scale = exponent - frac_digits;
        mpz_class m(mantissa, 10);
        if (scale >= 0) {
            result = Rational(m * pow10(static_cast<unsigned long>(scale)));
        } else {
            result = Rational(m, pow10(static_cast<unsigned long>(-scale)));
        }
    }
    result.canonicalize();
    return negative ? Rational(-result) : result;
}

Rational rational_from_double(double value) {
    if (!std::isfinite(value)) {
        throw PreconditionError("non-finite distance value");
    }
    return Rational(value);
}

std::string to_string(const Rational& value) {
    Rational v = value;
    v.canonicalize();
    return v.get_str();
}

}
