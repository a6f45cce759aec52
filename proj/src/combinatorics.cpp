#include "svw/combinatorics.hpp"

#include <string>

namespace svw {

BigInt binomial(int x, int y) {
    if (x < 0) {
        throw DomainError("binomial: negative upper index " + std::to_string(x));
    }
    if (y < 0 || y > x) {
        return 0;
    }
    y = std::min(y, x - y);
    BigInt result = 1;
    // Each partial product is itself a binomial, so the division is exact.
    for (int i = 1; i <= y; ++i) {
        result *= x - y + i;
        result /= i;
    }
    return result;
}

BinomialTable::BinomialTable(int max_row) : max_row_(max_row) {
    if (max_row < 0) {
        throw DomainError("BinomialTable: negative row count");
    }
    rows_.resize(static_cast<std::size_t>(max_row) + 1);
    for (int x = 0; x <= max_row; ++x) {
        auto& row = rows_[x];
        row.resize(static_cast<std::size_t>(x) + 1);
        row.front() = 1;
        row.back() = 1;
        for (int y = 1; y < x; ++y) {
            row[y] = rows_[x - 1][y - 1] + rows_[x - 1][y];
        }
    }
}

const BigInt& BinomialTable::operator()(int x, int y) const {
    if (x < 0 || x > max_row_) {
        throw DomainError("BinomialTable: row " + std::to_string(x) + " outside [0, " +
                          std::to_string(max_row_) + "]");
    }
    if (y < 0 || y > x) {
        return zero_;
    }
    return rows_[x][y];
}

namespace {

void check_indices(const ModelSpec& spec, int m, int n) {
    const int mp = spec.m_prime();
    if (m < 0 || m > mp || n < 0 || n > mp) {
        throw DomainError("b_coefficient: indices (" + std::to_string(m) + ", " + std::to_string(n) +
                          ") outside [0, " + std::to_string(mp) + "]");
    }
}

} // namespace

Rational b_coefficient(const ModelSpec& spec, int m, int n, const BinomialTable& c) {
    check_indices(spec, m, n);
    const int big_n = spec.n_total();
    const int big_m = spec.m_excited();

    Rational sum = 0;
    for (int k = 0; k <= m; ++k) {
        // k <= M' keeps N - 2k >= M - k, so the denominator is a nonzero binomial.
        const BigInt bracket = c(big_n + 1 - 2 * k, n - k) - 2 * c(big_n - 2 * k, n - k - 1);
        Rational term(c(m, k) * bracket, c(big_n - 2 * k, big_m - k));
        if (k % 2 == 0) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    return sum;
}

Rational b_coefficient(const ModelSpec& spec, int m, int n) {
    return b_coefficient(spec, m, n, BinomialTable(spec.n_total() + 1));
}

BCoefficientTable::BCoefficientTable(const ModelSpec& spec)
    : spec_(spec), size_(spec.m_prime() + 1) {
    const BinomialTable binomials(spec.n_total() + 1);
    exact_.reserve(static_cast<std::size_t>(size_) * size_);
    values_.reserve(exact_.capacity());
    for (int m = 0; m < size_; ++m) {
        for (int n = 0; n < size_; ++n) {
            exact_.push_back(b_coefficient(spec, m, n, binomials));
            values_.push_back(exact_.back().convert_to<double>());
        }
    }
}

std::size_t BCoefficientTable::offset(int m, int n) const {
    if (m < 0 || m >= size_ || n < 0 || n >= size_) {
        throw DomainError("BCoefficientTable: index out of range");
    }
    return static_cast<std::size_t>(m) * size_ + n;
}

const Rational& BCoefficientTable::exact(int m, int n) const { return exact_[offset(m, n)]; }

double BCoefficientTable::value(int m, int n) const { return values_[offset(m, n)]; }

namespace {

// Multiplicative formula in doubles; exact while the result stays below 2^53.
double binomial_double(int x, int y) {
    if (y < 0 || y > x) {
        return 0.0;
    }
    y = std::min(y, x - y);
    double result = 1.0;
    for (int i = 1; i <= y; ++i) {
        result = result * (x - y + i) / i;
    }
    return result;
}

} // namespace

double schmidt_multiplicity(const ModelSpec& spec, int m) {
    return binomial_double(spec.m_excited(), m) * binomial_double(spec.n_total() - spec.m_excited(), m);
}

} // namespace svw
