#ifndef FILTGR_SCALAR_HPP
#define FILTGR_SCALAR_HPP

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace filtgr {

/// Exact rational scalar. mpq_class keeps values canonical after every
/// arithmetic operation (reduced, positive denominator).
using Rational = mpq_class;

/// Element of the prime field F_p. The modulus is process-wide and must be
/// set before any Fp value is constructed; mixing moduli is not supported.
class Fp {
public:
    Fp() = default;
    Fp(long v) : value_(reduce(v)) {}

    static std::uint64_t modulus() { return modulus_ref(); }
    static void set_modulus(std::uint64_t p)
    {
        if (p < 2 || p >= (1ULL << 32)) {
            throw std::invalid_argument("Fp modulus must be a prime in [2, 2^32)");
        }
        for (std::uint64_t d = 2; d * d <= p; ++d) {
            if (p % d == 0) {
                throw std::invalid_argument("Fp modulus " + std::to_string(p) + " is not prime");
            }
        }
        modulus_ref() = p;
    }

    std::uint64_t value() const { return value_; }

    Fp& operator+=(const Fp& o)
    {
        value_ += o.value_;
        if (value_ >= modulus()) value_ -= modulus();
        return *this;
    }
    Fp& operator-=(const Fp& o)
    {
        value_ += modulus() - o.value_;
        if (value_ >= modulus()) value_ -= modulus();
        return *this;
    }
    Fp& operator*=(const Fp& o)
    {
        value_ = (value_ * o.value_) % modulus();
        return *this;
    }
    Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }

    friend Fp operator+(Fp a, const Fp& b) { return a += b; }
    friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
    friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
    friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
    Fp operator-() const { return Fp(0) - *this; }

    friend bool operator==(const Fp& a, const Fp& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Fp& a, const Fp& b) { return a.value_ != b.value_; }

    Fp inverse() const
    {
        if (value_ == 0) throw std::domain_error("division by zero in F_p");
        // Fermat: a^(p-2)
        std::uint64_t result = 1, base = value_, e = modulus() - 2;
        while (e) {
            if (e & 1) result = (result * base) % modulus();
            base = (base * base) % modulus();
            e >>= 1;
        }
        Fp r;
        r.value_ = result;
        return r;
    }

    friend std::ostream& operator<<(std::ostream& os, const Fp& a) { return os << a.value_; }

private:
    static std::uint64_t& modulus_ref()
    {
        static std::uint64_t p = 2147483647ULL;
        return p;
    }
    static std::uint64_t reduce(long v)
    {
        const auto p = static_cast<long long>(modulus());
        long long r = static_cast<long long>(v) % p;
        if (r < 0) r += p;
        return static_cast<std::uint64_t>(r);
    }

    std::uint64_t value_ = 0;
};

/// Uniform access to the handful of scalar facts the kernel needs.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static bool is_zero(const Rational& a) { return sgn(a) == 0; }
    static std::string to_string(const Rational& a) { return a.get_str(); }
    static Rational parse(const std::string& s)
    {
        Rational r;
        if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
        r.canonicalize();
        return r;
    }
    static const char* name() { return "Q"; }
    static void canonicalize(Rational& a) { a.canonicalize(); }
};

template <>
struct ScalarTraits<Fp> {
    static bool is_zero(const Fp& a) { return a.value() == 0; }
    static std::string to_string(const Fp& a) { return std::to_string(a.value()); }
    static Fp parse(const std::string& s)
    {
        auto slash = s.find('/');
        if (slash != std::string::npos) {
            return parse(s.substr(0, slash)) / parse(s.substr(slash + 1));
        }
        mpz_class z(s, 10);
        mpz_class m = z % mpz_class(static_cast<unsigned long>(Fp::modulus()));
        if (m < 0) m += static_cast<unsigned long>(Fp::modulus());
        return Fp(static_cast<long>(m.get_ui()));
    }
    static const char* name() { return "Fp"; }
    static void canonicalize(Fp&) {}
};

template <class S>
bool is_zero(const S& a)
{
    return ScalarTraits<S>::is_zero(a);
}

template <class S>
std::string scalar_str(const S& a)
{
    return ScalarTraits<S>::to_string(a);
}

} // namespace filtgr

#endif // FILTGR_SCALAR_HPP
