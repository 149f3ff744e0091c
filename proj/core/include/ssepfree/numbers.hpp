#ifndef SSEPFREE_NUMBERS_HPP
#define SSEPFREE_NUMBERS_HPP

#include <boost/multiprecision/cpp_int.hpp>

namespace ssepfree {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt factorial(int n);
BigInt binomial(int n, int k);
BigInt catalan(int n);
BigInt bell(int n);

inline double to_double(const BigInt& x) { return x.convert_to<double>(); }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

}  // namespace ssepfree

#endif
