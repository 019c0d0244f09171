#pragma once

// Double-precision helpers: a flattened polynomial evaluator with gradient and
// a small Levenberg-Marquardt solver with forward-difference Jacobians.

#include "newtonloj/polynomial.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace newtonloj {

using Vec = std::vector<double>;

class FloatPolynomial {
public:
    FloatPolynomial() = default;
    explicit FloatPolynomial(const Polynomial& f) : n_(f.num_vars())
    {
        for (const auto& [e, c] : f.terms()) {
            exps_.push_back(e);
            coeffs_.push_back(to_double(c));
        }
    }

    std::size_t num_vars() const { return n_; }

    double operator()(const Vec& x) const { return value(x); }

    double value(const Vec& x) const
    {
        double s = 0.0, comp = 0.0;
        for (std::size_t t = 0; t < coeffs_.size(); ++t) {
            const double term = monomial(t, x);
            const double y = s + term;
            comp += std::fabs(s) >= std::fabs(term) ? (s - y) + term : (term - y) + s;
            s = y;
        }
        return s + comp;
    }

    /// Σ |c_κ x^κ|, the natural scale for relative residuals.
    double magnitude(const Vec& x) const
    {
        double s = 0.0;
        for (std::size_t t = 0; t < coeffs_.size(); ++t) s += std::fabs(monomial(t, x));
        return s;
    }

    Vec gradient(const Vec& x) const
    {
        Vec g(n_, 0.0);
        for (std::size_t t = 0; t < coeffs_.size(); ++t)
            for (std::size_t j = 0; j < n_; ++j) {
                const auto k = exps_[t][j];
                if (k == 0) continue;
                double v = coeffs_[t] * static_cast<double>(k);
                for (std::size_t i = 0; i < n_; ++i) v *= detail::ipow(x[i], exps_[t][i] - (i == j ? 1 : 0));
                g[j] += v;
            }
        return g;
    }

    /// x_j ∂f/∂x_j for each j.
    Vec weighted_gradient(const Vec& x) const
    {
        Vec g(n_, 0.0);
        for (std::size_t t = 0; t < coeffs_.size(); ++t) {
            const double m = monomial(t, x);
            for (std::size_t j = 0; j < n_; ++j) g[j] += static_cast<double>(exps_[t][j]) * m;
        }
        return g;
    }

private:
    double monomial(std::size_t t, const Vec& x) const
    {
        double v = coeffs_[t];
        for (std::size_t j = 0; j < n_; ++j)
            if (exps_[t][j] != 0) v *= detail::ipow(x[j], exps_[t][j]);
        return v;
    }

    std::size_t n_ = 0;
    std::vector<Exponent> exps_;
    std::vector<double> coeffs_;
};

inline double norm2(const Vec& v)
{
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline double max_abs(const Vec& v)
{
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

/// Determinant of a small dense matrix given as rows.
inline double float_determinant(const std::vector<Vec>& rows)
{
    const auto n = static_cast<Eigen::Index>(rows.size());
    if (n == 0) return 1.0;
    if (n == 1) return rows[0][0];
    if (n == 2) return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0];
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return m.determinant();
}

/// All k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k)
{
    std::vector<std::vector<std::size_t>> out;
    if (k > n) return out;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        out.push_back(idx);
        std::size_t pos = k;
        while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t r = pos; r < k; ++r) idx[r] = idx[r - 1] + 1;
    }
    return out;
}

struct LmOptions {
    int max_iterations = 200;
    double tolerance = 1e-14;  // stop when the residual norm falls below this
    double step_tolerance = 1e-15;
    int stall_window = 0;       // 0 disables; else give up when the residual
    double stall_ratio = 0.5;   // has not shrunk by stall_ratio over the window
};

struct LmResult {
    Vec y;
    double residual = std::numeric_limits<double>::infinity();
    int iterations = 0;
};

/// Minimizes ‖R(y)‖² by damped Gauss-Newton. R must return a fixed-length vector.
inline LmResult levenberg_marquardt(const std::function<Vec(const Vec&)>& residual, Vec y, const LmOptions& opt = {})
{
    const auto n = static_cast<Eigen::Index>(y.size());
    auto finite = [](const Vec& r) {
        for (double v : r)
            if (!std::isfinite(v)) return false;
        return true;
    };
    Vec r = residual(y);
    LmResult out;
    out.y = y;
    if (!finite(r)) return out;
    double cost = norm2(r);
    out.residual = cost;
    double lambda = 1e-3;
    const auto m = static_cast<Eigen::Index>(r.size());
    std::vector<double> history{cost};
    for (int it = 0; it < opt.max_iterations && cost > opt.tolerance; ++it) {
        out.iterations = it + 1;
        Eigen::MatrixXd J(m, n);
        for (Eigen::Index j = 0; j < n; ++j) {
            Vec yp = y;
            const double h = 1e-7 * std::max(1.0, std::fabs(y[static_cast<std::size_t>(j)]));
            yp[static_cast<std::size_t>(j)] += h;
            const Vec rp = residual(yp);
            for (Eigen::Index i = 0; i < m; ++i) J(i, j) = (rp[static_cast<std::size_t>(i)] - r[static_cast<std::size_t>(i)]) / h;
        }
        Eigen::VectorXd rv(m);
        for (Eigen::Index i = 0; i < m; ++i) rv(i) = r[static_cast<std::size_t>(i)];
        const Eigen::MatrixXd JtJ = J.transpose() * J;
        const Eigen::VectorXd g = J.transpose() * rv;
        bool improved = false;
        for (int tries = 0; tries < 12; ++tries) {
            Eigen::MatrixXd A = JtJ;
            for (Eigen::Index j = 0; j < n; ++j) A(j, j) += lambda * (1.0 + JtJ(j, j));
            const Eigen::VectorXd step = A.ldlt().solve(-g);
            Vec yn = y;
            for (Eigen::Index j = 0; j < n; ++j) yn[static_cast<std::size_t>(j)] += step(j);
            const Vec rn = residual(yn);
            if (finite(rn) && norm2(rn) < cost) {
                const double step_norm = step.norm();
                y = std::move(yn);
                r = rn;
                cost = norm2(r);
                lambda = std::max(lambda / 3.0, 1e-12);
                improved = true;
                if (step_norm < opt.step_tolerance) it = opt.max_iterations;
                break;
            }
            lambda *= 4.0;
        }
        if (!improved) break;
        history.push_back(cost);
        const auto w = static_cast<std::size_t>(opt.stall_window);
        if (w > 0 && history.size() > w && cost > opt.stall_ratio * history[history.size() - 1 - w]) break;
    }
    out.y = y;
    out.residual = cost;
    return out;
}

}  // namespace newtonloj
