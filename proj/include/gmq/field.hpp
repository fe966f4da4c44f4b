#pragma once

// Scalar types for exact linear algebra: a prime field element that carries
// its modulus, and GMP-backed rationals. Both plug into Eigen as custom
// scalars so dense containers and products come from Eigen unchanged.

#include <Eigen/Core>
#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <ostream>

namespace gmq {

class FieldError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Element of F_p. The modulus travels with the value; a modulus of 0 marks an
/// integer literal (Eigen builds Scalar(0) and Scalar(1) internally) that binds
/// to the field of the first bound operand it meets.
class Fp {
public:
    Fp() = default;
    Fp(int v) : raw_(v) {}
    Fp(long v) : raw_(v) {}
    Fp(long long v) : raw_(v) {}
    Fp(long long v, std::uint32_t p) : raw_(reduce(v, p)), p_(p) {}

    std::uint32_t modulus() const { return p_; }
    bool bound() const { return p_ != 0; }
    std::int64_t raw() const { return raw_; }

    /// Representative in [0, p); literals must be non-negative.
    std::uint32_t value() const {
        if (!bound() && raw_ < 0) throw FieldError("unbound negative literal has no residue");
        return static_cast<std::uint32_t>(raw_);
    }
    /// Signed representative in (-p/2, p/2], handy for printing small forms.
    std::int64_t centered() const {
        if (!bound()) return raw_;
        return raw_ > static_cast<std::int64_t>(p_) / 2 ? raw_ - p_ : raw_;
    }

    bool is_zero() const { return raw_ == 0; }
    Fp inverse() const;
    Fp bind(std::uint32_t p) const { return bound() ? *this : Fp(raw_, p); }

    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }
    Fp& operator/=(const Fp& o) { return *this = *this / o; }

    friend Fp operator+(const Fp& a, const Fp& b) {
        std::uint32_t p = common(a, b);
        if (!p) return Fp(a.raw_ + b.raw_);
        std::int64_t s = a.residue(p) + b.residue(p);
        return raw_fp(s >= p ? s - p : s, p);
    }
    friend Fp operator-(const Fp& a, const Fp& b) {
        std::uint32_t p = common(a, b);
        if (!p) return Fp(a.raw_ - b.raw_);
        std::int64_t s = a.residue(p) - b.residue(p);
        return raw_fp(s < 0 ? s + p : s, p);
    }
    friend Fp operator*(const Fp& a, const Fp& b) {
        std::uint32_t p = common(a, b);
        if (!p) return Fp(a.raw_ * b.raw_);
        return raw_fp(a.residue(p) * b.residue(p) % p, p);
    }
    friend Fp operator/(const Fp& a, const Fp& b) {
        std::uint32_t p = common(a, b);
        return a * (p ? b.bind(p) : b).inverse();
    }
    Fp operator-() const {
        if (!bound()) return Fp(-raw_);
        return raw_fp(raw_ == 0 ? 0 : p_ - raw_, p_);
    }
    friend bool operator==(const Fp& a, const Fp& b) {
        std::uint32_t p = common(a, b);
        if (!p) return a.raw_ == b.raw_;
        return a.residue(p) == b.residue(p);
    }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

private:
    static std::int64_t reduce(long long v, std::uint32_t p) {
        std::int64_t r = v % static_cast<std::int64_t>(p);
        return r < 0 ? r + p : r;
    }
    static Fp raw_fp(std::int64_t r, std::uint32_t p) {
        Fp x;
        x.raw_ = r;
        x.p_ = p;
        return x;
    }
    static std::uint32_t common(const Fp& a, const Fp& b) {
        if (a.p_ && b.p_ && a.p_ != b.p_) throw FieldError("mixing elements of different prime fields");
        return a.p_ ? a.p_ : b.p_;
    }
    std::int64_t residue(std::uint32_t p) const { return p_ ? raw_ : reduce(raw_, p); }

    std::int64_t raw_ = 0;
    std::uint32_t p_ = 0;
};

using Q = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                        boost::multiprecision::et_off>;

inline bool is_zero(const Fp& x) { return x.is_zero(); }
inline bool is_zero(const Q& x) { return x.is_zero(); }
inline Fp inverse(const Fp& x) { return x.inverse(); }
inline Q inverse(const Q& x) {
    if (x.is_zero()) throw FieldError("division by zero");
    return Q(1) / x;
}
std::string to_string(const Fp& x);
std::string to_string(const Q& x);
inline std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << to_string(x); }

bool is_prime(std::uint64_t n);

/// Prime field F_p with p odd. Produces bound elements.
class PrimeField {
public:
    using Scalar = Fp;
    static constexpr bool finite = true;

    explicit PrimeField(std::uint32_t p);

    std::uint32_t characteristic() const { return p_; }
    std::uint64_t order() const { return p_; }
    Fp operator()(long long v) const { return Fp(v, p_); }
    Fp random(std::mt19937_64& rng) const { return Fp(static_cast<long long>(rng() % p_), p_); }
    Fp random_nonzero(std::mt19937_64& rng) const {
        return Fp(static_cast<long long>(1 + rng() % (p_ - 1)), p_);
    }
    /// i-th element in the order 0, 1, ..., p-1.
    Fp element(std::uint64_t i) const { return Fp(static_cast<long long>(i), p_); }
    /// Legendre symbol test; 0 counts as a square.
    bool is_square(const Fp& x) const;
    std::string name() const { return "Fp " + std::to_string(p_); }
    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

private:
    std::uint32_t p_;
};

/// The rationals. Random elements are small integers, which is enough for
/// generic-position constructions.
class RationalField {
public:
    using Scalar = Q;
    static constexpr bool finite = false;

    explicit RationalField(int random_bound = 9) : bound_(random_bound) {}

    Q operator()(long long v) const { return Q(v); }
    Q random(std::mt19937_64& rng) const {
        return Q(static_cast<long long>(rng() % (2 * bound_ + 1)) - bound_);
    }
    Q random_nonzero(std::mt19937_64& rng) const {
        Q x;
        do x = random(rng);
        while (x.is_zero());
        return x;
    }
    std::string name() const { return "QQ"; }
    bool operator==(const RationalField&) const { return true; }

private:
    int bound_;
};

/// Field of a scalar, recovered from a sample element. Needed where code only
/// sees matrices (Fp literals are bound to the modulus of the sample).
inline Fp like(const Fp& sample, long long v) { return sample.bound() ? Fp(v, sample.modulus()) : Fp(v); }
inline Q like(const Q&, long long v) { return Q(v); }
inline bool is_bound(const Fp& x) { return x.bound(); }
inline bool is_bound(const Q&) { return true; }
/// Whichever of two samples carries a field.
template <class S>
S either(const S& a, const S& b) { return is_bound(a) ? a : b; }

}  // namespace gmq

namespace Eigen {

template <>
struct NumTraits<gmq::Fp> : GenericNumTraits<gmq::Fp> {
    using Real = gmq::Fp;
    using NonInteger = gmq::Fp;
    using Literal = gmq::Fp;
    using Nested = gmq::Fp;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 2,
        MulCost = 4
    };
    static inline gmq::Fp epsilon() { return gmq::Fp(0); }
    static inline gmq::Fp dummy_precision() { return gmq::Fp(0); }
    static inline int digits10() { return 0; }
};

template <>
struct NumTraits<gmq::Q> : GenericNumTraits<gmq::Q> {
    using Real = gmq::Q;
    using NonInteger = gmq::Q;
    using Literal = gmq::Q;
    using Nested = gmq::Q;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 20,
        MulCost = 40
    };
    static inline gmq::Q epsilon() { return gmq::Q(0); }
    static inline gmq::Q dummy_precision() { return gmq::Q(0); }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen
