#include "berge/extreal.hpp"

#include <string>

namespace berge::ext {

namespace {

std::string num(double a) {
    if (a == pos_inf) return "inf";
    if (a == neg_inf) return "-inf";
    return std::to_string(a);
}

}  // namespace

double add(double a, double b) {
    if (std::isinf(a) && std::isinf(b) && a != b)
        throw DomainError("undefined sum " + num(a) + " + " + num(b));
    return a + b;
}

double sub(double a, double b) { return add(a, -b); }

double mul(double a, double b) {
    if ((a == 0.0 && std::isinf(b)) || (b == 0.0 && std::isinf(a)))
        throw DomainError("undefined product " + num(a) + " * " + num(b));
    return a * b;
}

double div(double a, double b) {
    if (b == 0.0) {
        if (a == 0.0) throw DomainError("undefined quotient 0 / 0");
        return a > 0.0 ? pos_inf : neg_inf;  // sign of the numerator
    }
    if (std::isinf(a) && std::isinf(b))
        throw DomainError("undefined quotient " + num(a) + " / " + num(b));
    return a / b;
}

double pow(double a, double b) {
    double r = std::pow(a, b);
    if (std::isnan(r))
        throw DomainError("undefined power " + num(a) + " ^ " + num(b));
    return r;
}

double log(double a) {
    if (a <= 0.0) throw DomainError("log of nonpositive value " + num(a));
    return std::log(a);
}

double sqrt(double a) {
    if (a < 0.0) throw DomainError("sqrt of negative value " + num(a));
    return std::sqrt(a);
}

double exp(double a) { return std::exp(a); }

}  // namespace berge::ext
