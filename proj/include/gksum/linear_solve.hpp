#pragma once

#include <optional>
#include <vector>

#include "gksum/rational.hpp"

namespace gksum {

// Solve M x = rhs exactly.  Rows are scaled to integers, the forward pass is
// Bareiss fraction-free elimination with column pivoting, and free columns
// are fixed at zero.  Returns nullopt when the system is inconsistent.
inline std::optional<std::vector<Rational>> solve_linear(
    std::vector<std::vector<Rational>> m, std::vector<Rational> rhs) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows == 0 ? 0 : m[0].size();

    // Augmented integer matrix.
    std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols + 1));
    for (std::size_t i = 0; i < rows; ++i) {
        Integer denlcm = boost::multiprecision::lcm(Integer(1), den(rhs[i]));
        for (std::size_t j = 0; j < cols; ++j)
            denlcm = boost::multiprecision::lcm(denlcm, den(m[i][j]));
        for (std::size_t j = 0; j < cols; ++j)
            a[i][j] = num(m[i][j]) * (denlcm / den(m[i][j]));
        a[i][cols] = num(rhs[i]) * (denlcm / den(rhs[i]));
    }

    std::vector<std::size_t> pivot_col;
    Integer prev = 1;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t sel = row;
        while (sel < rows && a[sel][col] == 0) ++sel;
        if (sel == rows) continue;  // free column
        std::swap(a[sel], a[row]);
        for (std::size_t i = row + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j <= cols; ++j)
                a[i][j] = (a[row][col] * a[i][j] - a[i][col] * a[row][j]) / prev;
            a[i][col] = 0;
        }
        prev = a[row][col];
        pivot_col.push_back(col);
        ++row;
    }

    for (std::size_t i = row; i < rows; ++i)
        if (a[i][cols] != 0) return std::nullopt;

    std::vector<Rational> x(cols, Rational(0));
    for (std::size_t i = row; i-- > 0;) {
        const std::size_t pc = pivot_col[i];
        Rational acc(a[i][cols]);
        for (std::size_t j = pc + 1; j < cols; ++j)
            if (a[i][j] != 0) acc -= Rational(a[i][j]) * x[j];
        x[pc] = acc / Rational(a[i][pc]);
    }
    return x;
}

} // namespace gksum
