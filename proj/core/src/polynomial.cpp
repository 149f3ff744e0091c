#include "ssepfree/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "ssepfree/errors.hpp"

namespace ssepfree {

IntPolynomial::IntPolynomial(std::vector<BigInt> coefficients) : c_(std::move(coefficients)) { trim(); }

IntPolynomial IntPolynomial::constant(const BigInt& c) { return IntPolynomial({c}); }

IntPolynomial IntPolynomial::variable() { return IntPolynomial({0, 1}); }

IntPolynomial IntPolynomial::falling_factorial(int n) {
    IntPolynomial r = constant(1);
    for (int k = 0; k < n; ++k) r = r * IntPolynomial({-k, 1});
    return r;
}

void IntPolynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

BigInt IntPolynomial::coefficient(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
    return c_[static_cast<std::size_t>(k)];
}

BigInt IntPolynomial::evaluate(const BigInt& z) const {
    BigInt r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * z + *it;
    return r;
}

double IntPolynomial::evaluate(double z) const {
    double r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * z + it->convert_to<double>();
    return r;
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.c_.empty() || b.c_.empty()) return {};
    std::vector<BigInt> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::pow(int e) const {
    IntPolynomial r = constant(1), base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

IntPolynomial IntPolynomial::divided_by(const IntPolynomial& d) const {
    if (d.c_.empty()) throw DomainError("division by zero polynomial");
    std::vector<BigInt> rem = c_;
    if (rem.size() < d.c_.size()) {
        if (!rem.empty()) throw DomainError("polynomial division leaves a remainder");
        return {};
    }
    std::vector<BigInt> q(rem.size() - d.c_.size() + 1);
    const BigInt& lead = d.c_.back();
    for (std::size_t k = q.size(); k-- > 0;) {
        const BigInt& top = rem[k + d.c_.size() - 1];
        if (top % lead != 0) throw DomainError("polynomial division is not exact");
        q[k] = top / lead;
        for (std::size_t j = 0; j < d.c_.size(); ++j) rem[k + j] -= q[k] * d.c_[j];
    }
    if (std::any_of(rem.begin(), rem.end(), [](const BigInt& x) { return x != 0; }))
        throw DomainError("polynomial division leaves a remainder");
    return IntPolynomial(std::move(q));
}

std::string IntPolynomial::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
        const BigInt& c = c_[k];
        if (c == 0) continue;
        BigInt mag = c < 0 ? BigInt(-c) : c;
        if (first) os << (c < 0 ? "-" : "");
        else os << (c < 0 ? " - " : " + ");
        first = false;
        if (mag != 1 || k == 0) os << mag;
        if (k >= 1) os << "z";
        if (k >= 2) os << "^" << k;
    }
    return os.str();
}

}  // namespace ssepfree
