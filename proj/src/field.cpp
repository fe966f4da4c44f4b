#include "gmq/field.hpp"

namespace gmq {

Fp Fp::inverse() const {
    if (is_zero()) throw FieldError("division by zero");
    if (!bound()) {
        if (raw_ == 1 || raw_ == -1) return *this;
        throw FieldError("cannot invert an integer literal outside a field");
    }
    std::int64_t a = raw_, m = p_, x0 = 1, x1 = 0;
    while (m) {
        std::int64_t q = a / m;
        std::int64_t t = a - q * m;
        a = m;
        m = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
    }
    return Fp(x0, p_);
}

std::string to_string(const Fp& x) { return std::to_string(x.bound() ? x.value() : x.raw()); }

std::string to_string(const Q& x) { return x.str(); }

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
    if (p == 2) throw FieldError("characteristic 2 is not supported");
    if (!is_prime(p)) throw FieldError("modulus " + std::to_string(p) + " is not prime");
    if (p >= (1u << 31)) throw FieldError("modulus too large");
}

bool PrimeField::is_square(const Fp& x) const {
    if (x.is_zero()) return true;
    Fp r = (*this)(1), b = x.bind(p_);
    for (std::uint64_t e = (p_ - 1) / 2; e; e >>= 1) {
        if (e & 1) r *= b;
        b *= b;
    }
    return r == (*this)(1);
}

}  // namespace gmq
