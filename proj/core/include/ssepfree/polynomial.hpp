#ifndef SSEPFREE_POLYNOMIAL_HPP
#define SSEPFREE_POLYNOMIAL_HPP

#include <string>
#include <vector>

#include "ssepfree/numbers.hpp"

namespace ssepfree {

/// Polynomial in one variable with exact integer coefficients, lowest degree first.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> coefficients);
    static IntPolynomial constant(const BigInt& c);
    static IntPolynomial variable();
    /// z (z - 1) ... (z - n + 1)
    static IntPolynomial falling_factorial(int n);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    BigInt coefficient(int k) const;
    const std::vector<BigInt>& coefficients() const { return c_; }
    BigInt evaluate(const BigInt& z) const;
    double evaluate(double z) const;

    IntPolynomial& operator+=(const IntPolynomial& o);
    IntPolynomial& operator-=(const IntPolynomial& o);
    friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
    friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    IntPolynomial pow(int e) const;
    /// Exact division; throws DomainError if the remainder is nonzero.
    IntPolynomial divided_by(const IntPolynomial& d) const;
    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c_ == b.c_; }

    std::string to_string() const;

private:
    void trim();
    std::vector<BigInt> c_;
};

}  // namespace ssepfree

#endif
