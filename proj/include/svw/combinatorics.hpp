#pragma once

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "svw/model.hpp"

namespace svw {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// C(x, y) for x >= 0, extended by zero for y < 0 or y > x.
/// Throws DomainError for negative x.
BigInt binomial(int x, int y);

/// Pascal triangle of exact binomials for rows 0..max_row.
class BinomialTable {
public:
    explicit BinomialTable(int max_row);

    int max_row() const noexcept { return max_row_; }

    /// Zero-extended like binomial(); rows past max_row throw DomainError.
    const BigInt& operator()(int x, int y) const;

private:
    int max_row_;
    std::vector<std::vector<BigInt>> rows_;
    BigInt zero_{0};
};

/// Exact b_mn coefficient of the closed-form amplitudes:
///
///   b_mn = sum_{k=0}^{m} (-1)^k C(m,k) / C(N-2k, M-k)
///          * [ C(N+1-2k, n-k) - 2 C(N-2k, n-k-1) ]
///
/// Indices must lie in [0, M'].
Rational b_coefficient(const ModelSpec& spec, int m, int n);

/// Same, reusing a memoized Pascal triangle with at least N + 1 rows.
Rational b_coefficient(const ModelSpec& spec, int m, int n, const BinomialTable& binomials);

/// (M'+1) x (M'+1) matrix of b_mn, exact plus a double-precision copy for evaluation.
class BCoefficientTable {
public:
    explicit BCoefficientTable(const ModelSpec& spec);

    const ModelSpec& spec() const noexcept { return spec_; }
    int size() const noexcept { return size_; }

    const Rational& exact(int m, int n) const;
    double value(int m, int n) const;

private:
    std::size_t offset(int m, int n) const;

    ModelSpec spec_;
    int size_;
    std::vector<Rational> exact_;
    std::vector<double> values_;
};

inline BCoefficientTable b_table(const ModelSpec& spec) { return BCoefficientTable(spec); }

/// Schmidt multiplicity C(M, m) C(N-M, m) of the m-th component, as a double.
double schmidt_multiplicity(const ModelSpec& spec, int m);

} // namespace svw
