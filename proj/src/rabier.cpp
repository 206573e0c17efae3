#include "vopt/rabier.hpp"

#include <algorithm>

namespace vopt {

namespace {

struct QpSolution {
    Vec mu;
    double cost = 0.0;  // mu^T Q mu
    bool budget_exceeded = false;
};

/// min mu^T Q mu over the probability simplex. Frank-Wolfe conditional
/// gradient with exact line search, finished by one equality-constrained
/// solve on the identified support (FW alone can stall at O(1/k) when the
/// optimum sits on a face).
QpSolution simplex_qp(const Mat& Q, double gap_tol, int max_iter) {
    const int m = static_cast<int>(Q.rows());
    QpSolution sol;
    Vec mu = Vec::Constant(m, 1.0 / m);
    int it = 0;
    for (; it < max_iter; ++it) {
        Vec grad = 2.0 * (Q * mu);
        int k = 0;
        for (int i = 1; i < m; ++i)
            if (grad[i] < grad[k]) k = i;
        Vec d = -mu;
        d[k] += 1.0;
        double gap = -grad.dot(d);
        if (gap <= gap_tol) break;
        double curv = d.dot(Q * d);
        double gamma = 1.0;
        if (curv > 0.0) gamma = std::clamp(-0.5 * (grad.dot(d)) / curv, 0.0, 1.0);
        if (gamma <= 0.0) break;
        mu += gamma * d;
        // keep the iterate exactly on the simplex
        for (int i = 0; i < m; ++i) mu[i] = std::max(mu[i], 0.0);
        mu /= mu.sum();
    }
    if (it >= max_iter) sol.budget_exceeded = true;

    double best = mu.dot(Q * mu);
    Vec best_mu = mu;

    // vertex candidates
    for (int i = 0; i < m; ++i) {
        if (Q(i, i) < best) {
            best = Q(i, i);
            best_mu = Vec::Zero(m);
            best_mu[i] = 1.0;
        }
    }

    // corrective solve on the FW support
    std::vector<int> support;
    for (int i = 0; i < m; ++i)
        if (mu[i] > 1e-12) support.push_back(i);
    const int s = static_cast<int>(support.size());
    if (s >= 2) {
        Mat K = Mat::Zero(s + 1, s + 1);
        Vec rhs = Vec::Zero(s + 1);
        for (int a = 0; a < s; ++a) {
            for (int b = 0; b < s; ++b) K(a, b) = 2.0 * Q(support[a], support[b]);
            K(a, s) = 1.0;
            K(s, a) = 1.0;
        }
        rhs[s] = 1.0;
        Vec y = K.fullPivLu().solve(rhs);
        bool feasible = true;
        for (int a = 0; a < s; ++a)
            if (y[a] < -1e-10) feasible = false;
        if (feasible) {
            Vec cand = Vec::Zero(m);
            double total = 0.0;
            for (int a = 0; a < s; ++a) {
                cand[support[a]] = std::max(y[a], 0.0);
                total += cand[support[a]];
            }
            if (total > 0) {
                cand /= total;
                double c = cand.dot(Q * cand);
                if (c < best) {
                    best = c;
                    best_mu = cand;
                }
            }
        }
    }
    sol.mu = best_mu;
    sol.cost = std::max(best, 0.0);
    return sol;
}

} // namespace

RabierResult rabier_nu(const Mat& jac) {
    const int m = static_cast<int>(jac.rows());
    const int n = static_cast<int>(jac.cols());
    if (m > 16) throw Error("rabier_nu: orthant enumeration refused for m > 16");
    RabierResult res;
    res.weights = Vec::Zero(m);
    res.orthant = IVec::Constant(m, 1);

    if (jac.norm() == 0.0) {
        // every lambda attains 0; report the first unit vector
        res.weights[0] = 1.0;
        res.value = 0.0;
        return res;
    }
    if (m == 1) {
        res.weights[0] = 1.0;
        res.value = jac.row(0).norm();
        return res;
    }

    const double gap_tol = 1e-12 * (1.0 + jac.squaredNorm());
    const int max_iter = 10000;

    double best_cost = std::numeric_limits<double>::infinity();
    Vec best_lambda;
    IVec best_signs;
    bool budget_exceeded = false;

    const unsigned total = 1u << m;
    for (unsigned mask = 0; mask < total; ++mask) {
        // Component 0 is the most significant bit, so masks enumerate sign
        // patterns in lexicographic order with -1 before +1; strict
        // improvement keeps the lexicographically smallest attaining pattern.
        IVec signs(m);
        Mat A(n, m);
        for (int i = 0; i < m; ++i) {
            int s = (mask >> (m - 1 - i)) & 1u ? 1 : -1;
            signs[i] = s;
            A.col(i) = static_cast<double>(s) * jac.row(i).transpose();
        }
        Mat Q = A.transpose() * A;
        QpSolution qp = simplex_qp(Q, gap_tol, max_iter);
        budget_exceeded = budget_exceeded || qp.budget_exceeded;
        if (qp.cost < best_cost) {
            best_cost = qp.cost;
            best_lambda = signs.cast<double>().cwiseProduct(qp.mu);
            best_signs = signs;
        }
    }

    res.weights = best_lambda;
    res.orthant = best_signs;
    res.value = (jac.transpose() * best_lambda).norm();
    res.budget_exceeded = budget_exceeded;
    return res;
}

RabierResult rabier_nu(const PolyMap& f, const Vec& x) {
    return rabier_nu(f.jacobian(x));
}

} // namespace vopt
