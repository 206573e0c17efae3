#include "vopt/polynomial.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace vopt {

bool grlex_less(const IVec& a, const IVec& b) {
    int da = a.sum(), db = b.sum();
    if (da != db) return da < db;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
}

Polynomial::Polynomial(int nvars, std::vector<Monomial> terms)
    : nvars_(nvars), terms_(std::move(terms)) {
    if (nvars_ < 0) throw Error("polynomial: negative variable count");
    for (const auto& t : terms_) {
        if (t.exponents.size() != nvars_)
            throw Error("polynomial: exponent length mismatch");
        for (Eigen::Index i = 0; i < t.exponents.size(); ++i)
            if (t.exponents[i] < 0) throw Error("polynomial: negative exponent");
    }
    canonicalize();
}

void Polynomial::canonicalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Monomial& a, const Monomial& b) {
        return grlex_less(a.exponents, b.exponents);
    });
    std::vector<Monomial> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!merged.empty() && merged.back().exponents == t.exponents) {
            merged.back().coefficient += t.coefficient;
        } else {
            merged.push_back(std::move(t));
        }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const Monomial& t) { return t.coefficient == 0.0; }),
                 merged.end());
    terms_ = std::move(merged);
}

Polynomial Polynomial::constant(int nvars, double c) {
    if (c == 0.0) return zero(nvars);
    Monomial t;
    t.exponents = IVec::Zero(nvars);
    t.coefficient = c;
    return Polynomial(nvars, {t});
}

Polynomial Polynomial::monomial(int nvars, const IVec& exponents, double c) {
    Monomial t;
    t.exponents = exponents;
    t.coefficient = c;
    return Polynomial(nvars, {t});
}

int Polynomial::degree() const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.degree());
    return d;
}

int Polynomial::max_degree_in(int var) const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.exponents[var]);
    return d;
}

double Polynomial::eval(const Vec& x) const {
    double s = 0.0;
    for (const auto& t : terms_) {
        double v = t.coefficient;
        for (int j = 0; j < nvars_; ++j) {
            int e = t.exponents[j];
            if (e == 0) continue;
            double p = x[j];
            for (int k = 1; k < e; ++k) p *= x[j];
            v *= p;
        }
        s += v;
    }
    return s;
}

double Polynomial::eval_powers(const std::vector<std::vector<double>>& powers) const {
    double s = 0.0;
    for (const auto& t : terms_) {
        double v = t.coefficient;
        for (int j = 0; j < nvars_; ++j) {
            int e = t.exponents[j];
            if (e != 0) v *= powers[j][e];
        }
        s += v;
    }
    return s;
}

Polynomial Polynomial::derivative(int var) const {
    std::vector<Monomial> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        int e = t.exponents[var];
        if (e == 0) continue;
        Monomial d;
        d.exponents = t.exponents;
        d.exponents[var] = e - 1;
        d.coefficient = t.coefficient * e;
        out.push_back(std::move(d));
    }
    return Polynomial(nvars_, std::move(out));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    if (nvars_ != o.nvars_) throw Error("polynomial add: nvars mismatch");
    std::vector<Monomial> all = terms_;
    all.insert(all.end(), o.terms_.begin(), o.terms_.end());
    return Polynomial(nvars_, std::move(all));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    return *this + o.scaled(-1.0);
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (nvars_ != o.nvars_) throw Error("polynomial mul: nvars mismatch");
    std::vector<Monomial> out;
    out.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_) {
        for (const auto& b : o.terms_) {
            Monomial t;
            t.exponents = a.exponents + b.exponents;
            t.coefficient = a.coefficient * b.coefficient;
            out.push_back(std::move(t));
        }
    }
    return Polynomial(nvars_, std::move(out));
}

Polynomial Polynomial::scaled(double c) const {
    std::vector<Monomial> out = terms_;
    for (auto& t : out) t.coefficient *= c;
    return Polynomial(nvars_, std::move(out));
}

bool Polynomial::same_terms(const Polynomial& o) const {
    if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].exponents != o.terms_[i].exponents) return false;
        if (terms_[i].coefficient != o.terms_[i].coefficient) return false;
    }
    return true;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    // print highest degree first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Monomial& t = *it;
        double c = t.coefficient;
        bool first = (it == terms_.rbegin());
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        double ac = std::abs(c);
        bool is_const = t.degree() == 0;
        char buf[40];
        if (ac != 1.0 || is_const) {
            std::snprintf(buf, sizeof buf, "%.17g", ac);
            os << buf;
        }
        bool printed = (ac != 1.0 || is_const);
        for (int j = 0; j < nvars_; ++j) {
            int e = t.exponents[j];
            if (e == 0) continue;
            if (printed) os << "*";
            os << "x" << (j + 1);
            if (e > 1) os << "^" << e;
            printed = true;
        }
    }
    return os.str();
}

PolyMap::PolyMap(int nvars, std::vector<Polynomial> components)
    : nvars_(nvars), comps_(std::move(components)) {
    if (nvars_ < 1) throw Error("poly map: need at least one variable");
    if (comps_.empty()) throw Error("poly map: need at least one component");
    for (const auto& p : comps_) {
        if (p.nvars() != nvars_) throw Error("poly map: component nvars mismatch");
    }
    const int m = ncomponents();
    grad_.resize(m);
    hess_.resize(m);
    for (int i = 0; i < m; ++i) {
        grad_[i].reserve(nvars_);
        for (int j = 0; j < nvars_; ++j) grad_[i].push_back(comps_[i].derivative(j));
        hess_[i].reserve(static_cast<size_t>(nvars_) * nvars_);
        for (int j = 0; j < nvars_; ++j)
            for (int k = 0; k < nvars_; ++k) hess_[i].push_back(grad_[i][j].derivative(k));
    }
    max_deg_.assign(nvars_, 0);
    for (const auto& p : comps_)
        for (int j = 0; j < nvars_; ++j)
            max_deg_[j] = std::max(max_deg_[j], p.max_degree_in(j));
}

std::vector<std::vector<double>> PolyMap::power_table(const Vec& x) const {
    std::vector<std::vector<double>> powers(nvars_);
    for (int j = 0; j < nvars_; ++j) {
        powers[j].resize(max_deg_[j] + 1);
        powers[j][0] = 1.0;
        for (int k = 1; k <= max_deg_[j]; ++k) powers[j][k] = powers[j][k - 1] * x[j];
    }
    return powers;
}

Vec PolyMap::eval(const Vec& x) const {
    auto powers = power_table(x);
    Vec v(ncomponents());
    for (int i = 0; i < ncomponents(); ++i) v[i] = comps_[i].eval_powers(powers);
    return v;
}

Mat PolyMap::jacobian(const Vec& x) const {
    auto powers = power_table(x);
    Mat J(ncomponents(), nvars_);
    for (int i = 0; i < ncomponents(); ++i)
        for (int j = 0; j < nvars_; ++j) J(i, j) = grad_[i][j].eval_powers(powers);
    return J;
}

Vec PolyMap::gradient(int i, const Vec& x) const {
    auto powers = power_table(x);
    Vec g(nvars_);
    for (int j = 0; j < nvars_; ++j) g[j] = grad_[i][j].eval_powers(powers);
    return g;
}

Mat PolyMap::hessian(int i, const Vec& x) const {
    auto powers = power_table(x);
    Mat H(nvars_, nvars_);
    for (int j = 0; j < nvars_; ++j)
        for (int k = 0; k < nvars_; ++k)
            H(j, k) = hess_[i][static_cast<size_t>(j) * nvars_ + k].eval_powers(powers);
    return H;
}

PolyMap PolyMap::scaled(double c) const {
    std::vector<Polynomial> comps;
    comps.reserve(comps_.size());
    for (const auto& p : comps_) comps.push_back(p.scaled(c));
    return PolyMap(nvars_, std::move(comps));
}

PolyMap PolyMap::permuted(const std::vector<int>& order) const {
    std::vector<Polynomial> comps;
    comps.reserve(order.size());
    for (int i : order) comps.push_back(comps_[i]);
    return PolyMap(nvars_, std::move(comps));
}

std::string PolyMap::to_string() const {
    std::ostringstream os;
    for (int i = 0; i < ncomponents(); ++i) {
        if (i) os << "\n";
        os << comps_[i].to_string();
    }
    return os.str();
}

Vec evaluate(const PolyMap& f, const Vec& x) { return f.eval(x); }
Mat jacobian(const PolyMap& f, const Vec& x) { return f.jacobian(x); }

} // namespace vopt
