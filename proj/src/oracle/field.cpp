#include "qbound/oracle/field.hpp"

#include "qbound/common.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qbound::oracle {

// ---------------------------------------------------------------- Rat

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 gcd128(u128 a, u128 b)
{
    while (b) {
        const u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

mpz_class to_mpz(i128 v)
{
    const bool neg = v < 0;
    u128 m = neg ? -static_cast<u128>(v) : static_cast<u128>(v);
    const std::uint64_t words[2] = {static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(m >> 64)};
    mpz_class z;
    mpz_import(z.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
    if (neg) z = -z;
    return z;
}

bool fits64(const mpz_class& z) { return mpz_sizeinbase(z.get_mpz_t(), 2) <= 62; }

} // namespace

Rat::Rat(long num, long den)
{
    if (den == 0) throw Error("oracle: zero denominator");
    *this = make(num, den);
}

Rat::Rat(const mpq_class& q) { *this = make(q); }

Rat Rat::make(i128 n, i128 d)
{
    if (d < 0) n = -n, d = -d;
    const u128 g = gcd128(n < 0 ? -static_cast<u128>(n) : static_cast<u128>(n), static_cast<u128>(d));
    if (g > 1) n /= static_cast<i128>(g), d /= static_cast<i128>(g);
    constexpr i128 lim = static_cast<i128>(1) << 62;
    Rat r;
    if (n < lim && n > -lim && d < lim) {
        r.n_ = static_cast<std::int64_t>(n);
        r.d_ = static_cast<std::int64_t>(d);
        return r;
    }
    mpq_class q(to_mpz(n), to_mpz(d));
    q.canonicalize();
    r.big_ = std::make_shared<const mpq_class>(std::move(q));
    return r;
}

Rat Rat::make(mpq_class q)
{
    q.canonicalize();
    Rat r;
    if (fits64(q.get_num()) && fits64(q.get_den())) {
        r.n_ = q.get_num().get_si();
        r.d_ = q.get_den().get_si();
    } else {
        r.big_ = std::make_shared<const mpq_class>(std::move(q));
    }
    return r;
}

mpq_class Rat::to_mpq() const
{
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(n_)), mpz_class(static_cast<long>(d_)));
}

int Rat::sign() const
{
    if (big_) return sgn(*big_);
    return (n_ > 0) - (n_ < 0);
}

Rat Rat::operator+(const Rat& o) const
{
    if (!big_ && !o.big_) {
        if (d_ == o.d_) return make(static_cast<i128>(n_) + o.n_, d_);
        return make(static_cast<i128>(n_) * o.d_ + static_cast<i128>(o.n_) * d_, static_cast<i128>(d_) * o.d_);
    }
    return make(to_mpq() + o.to_mpq());
}

Rat Rat::operator-() const
{
    if (big_) return make(-*big_);
    Rat r = *this;
    r.n_ = -n_;
    return r;
}

Rat Rat::operator-(const Rat& o) const { return *this + (-o); }

Rat Rat::operator*(const Rat& o) const
{
    if (!big_ && !o.big_) return make(static_cast<i128>(n_) * o.n_, static_cast<i128>(d_) * o.d_);
    return make(to_mpq() * o.to_mpq());
}

Rat Rat::operator/(const Rat& o) const
{
    if (o.is_zero()) throw Error("oracle: division by zero");
    if (!big_ && !o.big_) return make(static_cast<i128>(n_) * o.d_, static_cast<i128>(d_) * o.n_);
    return make(to_mpq() / o.to_mpq());
}

bool Rat::operator==(const Rat& o) const
{
    if (!big_ && !o.big_) return n_ == o.n_ && d_ == o.d_;
    if (big_ && o.big_) return *big_ == *o.big_;
    return false; // canonical: a value has exactly one representation
}

double Rat::get_d() const { return big_ ? big_->get_d() : static_cast<double>(n_) / static_cast<double>(d_); }

std::string Rat::str() const
{
    if (big_) return big_->get_str();
    return d_ == 1 ? std::to_string(n_) : std::to_string(n_) + "/" + std::to_string(d_);
}

// ---------------------------------------------------------------- Cyclo16

Cyclo16 Cyclo16::zeta(int k)
{
    k %= 16;
    if (k < 0) k += 16;
    Cyclo16 z;
    if (k < 8) z.c_[k] = 1;
    else z.c_[k - 8] = -1;
    return z;
}

bool Cyclo16::is_zero() const
{
    for (const auto& x : c_)
        if (!x.is_zero()) return false;
    return true;
}

bool Cyclo16::is_rational() const
{
    for (int k = 1; k < 8; ++k)
        if (!c_[k].is_zero()) return false;
    return true;
}

Cyclo16 Cyclo16::operator+(const Cyclo16& o) const
{
    Cyclo16 r = *this;
    r += o;
    return r;
}

Cyclo16& Cyclo16::operator+=(const Cyclo16& o)
{
    for (int k = 0; k < 8; ++k)
        if (!o.c_[k].is_zero()) c_[k] += o.c_[k];
    return *this;
}

Cyclo16 Cyclo16::operator-(const Cyclo16& o) const
{
    Cyclo16 r = *this;
    for (int k = 0; k < 8; ++k)
        if (!o.c_[k].is_zero()) r.c_[k] -= o.c_[k];
    return r;
}

Cyclo16 Cyclo16::operator-() const
{
    Cyclo16 r;
    for (int k = 0; k < 8; ++k) r.c_[k] = -c_[k];
    return r;
}

Cyclo16 Cyclo16::operator*(const Cyclo16& o) const
{
    Cyclo16 r;
    for (int j = 0; j < 8; ++j) {
        if (c_[j].is_zero()) continue;
        for (int k = 0; k < 8; ++k) {
            if (o.c_[k].is_zero()) continue;
            const int e = j + k;
            if (e < 8) r.c_[e] += c_[j] * o.c_[k];
            else r.c_[e - 8] -= c_[j] * o.c_[k];
        }
    }
    return r;
}

Cyclo16 Cyclo16::conj() const
{
    // ζ^{-k} = -ζ^{8-k} for 1 <= k <= 7
    Cyclo16 r;
    r.c_[0] = c_[0];
    for (int k = 1; k < 8; ++k) r.c_[8 - k] = -c_[k];
    return r;
}

Cyclo16 Cyclo16::inverse() const
{
    if (is_zero()) throw Error("oracle: division by zero");
    // solve (multiplication by this) · y = 1 over Q
    std::array<std::array<Rat, 9>, 8> M;
    for (int k = 0; k < 8; ++k) {
        const Cyclo16 col = *this * zeta(k);
        for (int j = 0; j < 8; ++j) M[j][k] = col.c_[j];
    }
    for (int j = 0; j < 8; ++j) M[j][8] = j == 0 ? 1 : 0;
    for (int col = 0; col < 8; ++col) {
        int piv = col;
        while (piv < 8 && M[piv][col].is_zero()) ++piv;
        if (piv == 8) throw Error("oracle: singular cyclotomic element");
        std::swap(M[piv], M[col]);
        const Rat p = M[col][col];
        for (int k = col; k < 9; ++k) M[col][k] = M[col][k] / p;
        for (int j = 0; j < 8; ++j) {
            if (j == col || M[j][col].is_zero()) continue;
            const Rat f = M[j][col];
            for (int k = col; k < 9; ++k) M[j][k] -= f * M[col][k];
        }
    }
    Cyclo16 r;
    for (int j = 0; j < 8; ++j) r.c_[j] = M[j][8];
    return r;
}

std::complex<double> Cyclo16::value() const
{
    std::complex<double> s = 0;
    for (int k = 0; k < 8; ++k)
        if (!c_[k].is_zero()) s += c_[k].get_d() * std::polar(1.0, k * std::numbers::pi / 8);
    return s;
}

std::string Cyclo16::str() const
{
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k < 8; ++k) {
        if (c_[k].is_zero()) continue;
        if (!first) os << (c_[k].sign() > 0 ? " + " : " - ");
        else if (c_[k].sign() < 0) os << "-";
        first = false;
        const Rat a = c_[k].abs();
        if (k == 0) os << a.str();
        else {
            if (a != Rat(1)) os << a.str() << "·";
            os << "ζ" << (k > 1 ? "^" + std::to_string(k) : "");
        }
    }
    return first ? "0" : os.str();
}

Scalar Scalar::sqrt2() { return Scalar(Cyclo16::zeta(2) - Cyclo16::zeta(6)); }

bool Scalar::is_one() const { return b_.is_zero() && a_ == Cyclo16(1); }

Scalar Scalar::operator*(const Scalar& o) const
{
    const bool bz = b_.is_zero(), obz = o.b_.is_zero();
    if (bz && obz) return Scalar(a_ * o.a_);
    Cyclo16 a = a_ * o.a_;
    if (!bz && !obz) a += (b_ * o.b_) * sqrt2().a_;
    Cyclo16 b;
    if (!obz) b += a_ * o.b_;
    if (!bz) b += b_ * o.a_;
    return {std::move(a), std::move(b)};
}

Scalar& Scalar::operator+=(const Scalar& o)
{
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

Scalar Scalar::inverse() const
{
    if (b_.is_zero()) return Scalar(a_.inverse());
    // (a + bq)(a - bq) = a² - √2 b², nonzero since q ∉ Q(ζ)
    const Cyclo16 n = a_ * a_ - (b_ * b_) * sqrt2().a_;
    const Cyclo16 ni = n.inverse();
    return {a_ * ni, -(b_ * ni)};
}

std::complex<double> Scalar::value() const { return a_.value() + std::pow(2.0, 0.25) * b_.value(); }

std::string Scalar::str() const
{
    if (b_.is_zero()) return a_.str();
    if (a_.is_zero()) return "(" + b_.str() + ")·q";
    return a_.str() + " + (" + b_.str() + ")·q";
}

} // namespace qbound::oracle
