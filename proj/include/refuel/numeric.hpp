#ifndef REFUEL_NUMERIC_HPP
#define REFUEL_NUMERIC_HPP

#include <boost/multiprecision/gmp.hpp>

#include <array>
#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

namespace refuel {

/// Arithmetic used for every comparison and accumulation inside a solve.
///
/// `fast` evaluates in binary64 and takes floating signs as they come out.
/// `exact` uses GMP rationals; a weight is read as the exact value of its
/// stored double, so every decision is made with zero tolerance.
enum class NumericMode { fast, exact };

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Discrete time. Processing times are positive integers, so every start and
/// completion time of a schedule is an integer.
using Time = std::int64_t;

template <class N>
struct numeric_traits;

template <>
struct numeric_traits<double> {
    static constexpr NumericMode mode = NumericMode::fast;
    static double from_double(double x) noexcept { return x; }
    static double to_double(double x) noexcept { return x; }
    static double from_time(Time t) noexcept { return static_cast<double>(t); }
};

template <>
struct numeric_traits<Rational> {
    static constexpr NumericMode mode = NumericMode::exact;
    // Rational(double) is exact: every finite double is a dyadic rational.
    static Rational from_double(double x) { return Rational(x); }
    static double to_double(const Rational& x) { return x.convert_to<double>(); }
    static Rational from_time(Time t) { return Rational(static_cast<long long>(t)); }
};

template <class N>
concept Number = requires { numeric_traits<N>::mode; };

template <Number N>
N from_time(Time t) {
    return numeric_traits<N>::from_time(t);
}

template <Number N>
double to_double(const N& x) {
    return numeric_traits<N>::to_double(x);
}

template <Number N>
int sign(const N& x) {
    if (x > 0) return 1;
    if (x < 0) return -1;
    return 0;
}

/// "num/den" (or an integer) for rationals.
inline std::string to_exact_string(const Rational& x) {
    return x.str();
}

inline constexpr std::string_view to_string(NumericMode m) noexcept {
    return m == NumericMode::fast ? "fast" : "exact";
}

/// Shortest decimal form that round-trips to the same double.
inline std::string format_double(double x) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), ec == std::errc{} ? ptr : buf.data());
}

}  // namespace refuel

#endif
