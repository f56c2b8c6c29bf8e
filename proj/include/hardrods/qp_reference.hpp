#pragma once

// Reference oracle: Euclidean projection onto the chain
// { lo <= x_0, x_{i+1} - x_i >= eps, x_{n-1} <= hi } by brute-force
// enumeration of KKT active sets with a dense pivoted solve. Deliberately
// independent of the pool-adjacent-violators implementation it checks; only
// verification code should call it (it is exponential in the rod count).

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace hardrods::reference {

struct Constraint {
    std::vector<double> a;  // row of the constraint a^T x >= b
    double b;
};

inline std::optional<std::vector<double>> solve_dense(std::vector<std::vector<double>> m,
                                                      std::vector<double> rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        }
        if (std::abs(m[pivot][col]) < 1e-10) return std::nullopt;
        std::swap(m[pivot], m[col]);
        std::swap(rhs[pivot], rhs[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    for (std::size_t i = 0; i < n; ++i) rhs[i] /= m[i][i];
    return rhs;
}

inline std::vector<double> project_chain_qp(const std::vector<double>& p, double eps, double lo,
                                            double hi) {
    const std::size_t n = p.size();
    std::vector<Constraint> cons;
    if (std::isfinite(lo)) {
        Constraint c{std::vector<double>(n, 0.0), lo};
        c.a[0] = 1.0;
        cons.push_back(c);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        Constraint c{std::vector<double>(n, 0.0), eps};
        c.a[i] = -1.0;
        c.a[i + 1] = 1.0;
        cons.push_back(c);
    }
    if (std::isfinite(hi)) {
        Constraint c{std::vector<double>(n, 0.0), -hi};
        c.a[n - 1] = -1.0;
        cons.push_back(c);
    }

    const std::size_t m = cons.size();
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<double> best;
    for (std::size_t mask = 0; mask < (1u << m); ++mask) {
        std::vector<std::size_t> active;
        for (std::size_t i = 0; i < m; ++i) {
            if (mask & (1u << i)) active.push_back(i);
        }
        // KKT: x = p + sum mu_i a_i with a_j^T x = b_j on the active set
        const std::size_t k = active.size();
        std::vector<double> x(p);
        if (k > 0) {
            std::vector<std::vector<double>> gram(k, std::vector<double>(k, 0.0));
            std::vector<double> rhs(k, 0.0);
            for (std::size_t r = 0; r < k; ++r) {
                for (std::size_t c = 0; c < k; ++c) {
                    double dot = 0.0;
                    for (std::size_t j = 0; j < n; ++j) {
                        dot += cons[active[r]].a[j] * cons[active[c]].a[j];
                    }
                    gram[r][c] = dot;
                }
                double ap = 0.0;
                for (std::size_t j = 0; j < n; ++j) ap += cons[active[r]].a[j] * p[j];
                rhs[r] = cons[active[r]].b - ap;
            }
            const auto mu = solve_dense(gram, rhs);
            if (!mu) continue;
            bool dual_ok = true;
            for (double v : *mu) {
                if (v < -1e-9) dual_ok = false;
            }
            if (!dual_ok) continue;
            for (std::size_t r = 0; r < k; ++r) {
                for (std::size_t j = 0; j < n; ++j) x[j] += (*mu)[r] * cons[active[r]].a[j];
            }
        }
        bool primal_ok = true;
        for (const auto& c : cons) {
            double ax = 0.0;
            for (std::size_t j = 0; j < n; ++j) ax += c.a[j] * x[j];
            if (ax < c.b - 1e-9) primal_ok = false;
        }
        if (!primal_ok) continue;
        double cost = 0.0;
        for (std::size_t j = 0; j < n; ++j) cost += (x[j] - p[j]) * (x[j] - p[j]);
        if (cost < best_cost) {
            best_cost = cost;
            best = x;
        }
    }
    return best;
}

}  // namespace hardrods::reference
