#pragma once

#include <gmpxx.h>

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <string>

namespace qbound::oracle {

/// Exact rational. Values whose reduced numerator and denominator fit in 64
/// bits stay inline; anything larger moves to GMP, so results never overflow.
class Rat {
public:
    Rat() = default;
    Rat(long n) : n_(n) {}
    Rat(long num, long den);
    explicit Rat(const mpq_class& q);

    bool is_zero() const { return !big_ && n_ == 0; }
    int sign() const;
    Rat operator+(const Rat& o) const;
    Rat operator-(const Rat& o) const;
    Rat operator-() const;
    Rat operator*(const Rat& o) const;
    Rat operator/(const Rat& o) const;
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    bool operator==(const Rat& o) const;
    bool operator!=(const Rat& o) const { return !(*this == o); }
    Rat abs() const { return sign() < 0 ? -*this : *this; }
    double get_d() const;
    mpq_class to_mpq() const;
    std::string str() const;

private:
    static Rat make(__int128 n, __int128 d);
    static Rat make(mpq_class q);
    std::int64_t n_ = 0, d_ = 1;
    std::shared_ptr<const mpq_class> big_; ///< set only when the value does not fit inline
};

/// Element of Q(ζ) with ζ = e^{iπ/8}, stored in the power basis 1, ζ, ..., ζ^7
/// modulo ζ^8 = -1.
class Cyclo16 {
public:
    Cyclo16() = default;
    Cyclo16(long n) { c_[0] = n; }
    Cyclo16(const Rat& x) { c_[0] = x; }
    /// ζ^k for any integer k.
    static Cyclo16 zeta(int k);

    const Rat& operator[](int k) const { return c_[k]; }
    Rat& operator[](int k) { return c_[k]; }
    bool is_zero() const;
    bool is_rational() const;

    Cyclo16 operator+(const Cyclo16& o) const;
    Cyclo16 operator-(const Cyclo16& o) const;
    Cyclo16 operator-() const;
    Cyclo16 operator*(const Cyclo16& o) const;
    Cyclo16& operator+=(const Cyclo16& o);
    bool operator==(const Cyclo16& o) const { return c_ == o.c_; }
    /// Complex conjugation ζ ↦ ζ^{-1}.
    Cyclo16 conj() const;
    /// Throws on zero.
    Cyclo16 inverse() const;
    std::complex<double> value() const;
    std::string str() const;

private:
    std::array<Rat, 8> c_{};
};

/// Element a + b·q of Q(ζ)(q) with q = 2^{1/4}, q² = √2 = ζ² − ζ⁶. The
/// extension is proper because 2^{1/4} generates a non-normal field.
class Scalar {
public:
    Scalar() = default;
    Scalar(long n) : a_(n) {}
    Scalar(const Rat& x) : a_(x) {}
    Scalar(Cyclo16 a, Cyclo16 b = {}) : a_(std::move(a)), b_(std::move(b)) {}

    static Scalar zeta(int k) { return Scalar(Cyclo16::zeta(k)); }
    static Scalar i() { return zeta(4); }
    static Scalar sqrt2();
    static Scalar q() { return Scalar(Cyclo16{}, Cyclo16(1)); }
    static Scalar rational(long num, long den) { return Scalar(Rat(num, den)); }

    const Cyclo16& a() const { return a_; }
    const Cyclo16& b() const { return b_; }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_one() const;

    Scalar operator+(const Scalar& o) const { return {a_ + o.a_, b_ + o.b_}; }
    Scalar operator-(const Scalar& o) const { return {a_ - o.a_, b_ - o.b_}; }
    Scalar operator-() const { return {-a_, -b_}; }
    Scalar operator*(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o);
    Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }
    bool operator==(const Scalar& o) const { return a_ == o.a_ && b_ == o.b_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    Scalar conj() const { return {a_.conj(), b_.conj()}; }
    Scalar inverse() const;
    std::complex<double> value() const;
    std::string str() const;

private:
    Cyclo16 a_, b_;
};

} // namespace qbound::oracle
