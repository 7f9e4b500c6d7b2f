#pragma once
// Scalar types for exact linear algebra: the Mersenne prime field F_p with
// p = 2^61 - 1, and arbitrary-precision rationals for audits.

#include <cstdint>
#include <ostream>
#include <random>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/traits/is_byte_container.hpp>
#include <boost/rational.hpp>

// Boost 1.74 probes Eigen expression types for a byte-container iterator
// when deciding cpp_int conversions; Eigen 3.4 exposes a void const_iterator
// on 2-D types, which breaks the probe under C++20.
namespace boost::multiprecision::detail {
template <class C>
    requires requires { typename C::StorageKind; }
struct is_byte_container_imp<C, true> : public boost::false_type {};
}  // namespace boost::multiprecision::detail

namespace loopcrystal {

class Fp {
public:
    static constexpr std::uint64_t modulus = (std::uint64_t{1} << 61) - 1;

    constexpr Fp() = default;
    constexpr Fp(std::int64_t x) : v_(reduce_signed(x)) {}  // NOLINT: implicit by design
    static constexpr Fp from_raw(std::uint64_t r) { Fp f; f.v_ = r % modulus; return f; }

    constexpr std::uint64_t value() const { return v_; }

    friend constexpr Fp operator+(Fp a, Fp b) { return from_reduced(fold(a.v_ + b.v_)); }
    friend constexpr Fp operator-(Fp a, Fp b) { return from_reduced(fold(a.v_ + modulus - b.v_)); }
    friend constexpr Fp operator-(Fp a) { return from_reduced(a.v_ == 0 ? 0 : modulus - a.v_); }
    friend constexpr Fp operator*(Fp a, Fp b) {
        unsigned __int128 w = static_cast<unsigned __int128>(a.v_) * b.v_;
        std::uint64_t lo = static_cast<std::uint64_t>(w & modulus);
        std::uint64_t hi = static_cast<std::uint64_t>(w >> 61);
        return from_reduced(fold(lo + hi));
    }
    friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
    Fp& operator+=(Fp b) { return *this = *this + b; }
    Fp& operator-=(Fp b) { return *this = *this - b; }
    Fp& operator*=(Fp b) { return *this = *this * b; }
    Fp& operator/=(Fp b) { return *this = *this / b; }
    friend constexpr bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }
    friend constexpr bool operator!=(Fp a, Fp b) { return a.v_ != b.v_; }

    Fp pow(std::uint64_t e) const {
        Fp base = *this, acc = 1;
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }
    Fp inverse() const { return pow(modulus - 2); }

    static Fp random(std::mt19937_64& rng) { return from_raw(rng()); }

    friend std::ostream& operator<<(std::ostream& os, Fp a) { return os << a.v_; }

private:
    static constexpr std::uint64_t fold(std::uint64_t x) {
        x = (x & modulus) + (x >> 61);
        return x >= modulus ? x - modulus : x;
    }
    static constexpr std::uint64_t reduce_signed(std::int64_t x) {
        std::int64_t r = x % static_cast<std::int64_t>(modulus);
        return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(modulus) : r);
    }
    static constexpr Fp from_reduced(std::uint64_t r) { Fp f; f.v_ = r; return f; }

    std::uint64_t v_ = 0;
};

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<BigInt>;

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

}  // namespace loopcrystal

namespace Eigen {
template <>
struct NumTraits<loopcrystal::Fp> : GenericNumTraits<loopcrystal::Fp> {
    using Real = loopcrystal::Fp;
    using NonInteger = loopcrystal::Fp;
    using Nested = loopcrystal::Fp;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 0,
        RequireInitialization = 0,
        ReadCost = 1,
        AddCost = 2,
        MulCost = 4
    };
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 18; }
};
template <>
struct NumTraits<loopcrystal::Rational> : GenericNumTraits<loopcrystal::Rational> {
    using Real = loopcrystal::Rational;
    using NonInteger = loopcrystal::Rational;
    using Nested = loopcrystal::Rational;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 8,
        MulCost = 16
    };
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
};
}  // namespace Eigen
