#pragma once

#include "cfm/lattice.hpp"

namespace cfm::check {

// Exact Gram-Schmidt, written out independently of the library.
inline bool lll_reduced(const IntegerMatrix& b, Rational delta) {
    const std::size_t n = b.rows(), m = b.cols();
    std::vector<std::vector<Rational>> star(n, std::vector<Rational>(m));
    std::vector<Rational> norm(n);
    std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < m; ++k) star[i][k] = Rational(b[i][k]);
        for (std::size_t j = 0; j < i; ++j) {
            Rational d = 0;
            for (std::size_t k = 0; k < m; ++k) d += Rational(b[i][k]) * star[j][k];
            mu[i][j] = d / norm[j];
            for (std::size_t k = 0; k < m; ++k) star[i][k] -= mu[i][j] * star[j][k];
        }
        norm[i] = 0;
        for (std::size_t k = 0; k < m; ++k) norm[i] += star[i][k] * star[i][k];
    }
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j)
            if (abs(mu[i][j]) > Rational(1, 2)) return false;
        if (norm[i] < (delta - mu[i][i - 1] * mu[i][i - 1]) * norm[i - 1]) return false;
    }
    return true;
}


// Rows of b as rational combinations of the rows of basis (square, invertible),
// or nothing when basis is singular.
inline std::optional<std::vector<std::vector<Rational>>> coordinates(const IntegerMatrix& b, const IntegerMatrix& basis) {
    const std::size_t n = basis.rows();
    // Solve x * basis = b_row for each row: transpose and eliminate on [basis^T | b^T].
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + b.rows()));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(basis[j][i]);
        for (std::size_t r = 0; r < b.rows(); ++r) a[i][n + r] = Rational(b[r][i]);
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return std::nullopt;
        std::swap(a[p], a[c]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rational f = a[i][c] / a[c][c];
            for (std::size_t k = c; k < a[i].size(); ++k) a[i][k] -= f * a[c][k];
        }
    }
    std::vector<std::vector<Rational>> out(b.rows(), std::vector<Rational>(n));
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t j = 0; j < n; ++j) out[r][j] = a[j][n + r] / a[j][j];
    return out;
}

inline bool integral(const std::vector<std::vector<Rational>>& m) {
    for (const auto& row : m)
        for (const auto& x : row)
            if (boost::multiprecision::denominator(x) != 1) return false;
    return true;
}

// Same lattice: each basis is an integer combination of the other.
inline bool same_lattice(const IntegerMatrix& a, const IntegerMatrix& b) {
    auto ab = coordinates(a, b), ba = coordinates(b, a);
    return ab && ba && integral(*ab) && integral(*ba);
}

}  // namespace cfm::check
