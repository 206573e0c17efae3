#pragma once

#include "vopt/core.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vopt {

/// One term a*x^kappa of a sparse polynomial. Zero-coefficient terms are
/// never stored.
struct Monomial {
    IVec exponents;           // length nvars, entries >= 0
    double coefficient = 0.0;

    int degree() const { return exponents.sum(); }
};

/// Graded lexicographic order on exponent vectors (total degree first).
bool grlex_less(const IVec& a, const IVec& b);

/// Sparse multivariate polynomial with a canonical term order: terms are
/// grlex-sorted, exponent vectors unique, coefficients nonzero.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(int nvars, std::vector<Monomial> terms);

    static Polynomial zero(int nvars) { return Polynomial(nvars, {}); }
    static Polynomial constant(int nvars, double c);
    static Polynomial monomial(int nvars, const IVec& exponents, double c);

    int nvars() const { return nvars_; }
    const std::vector<Monomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;
    int max_degree_in(int var) const;

    double eval(const Vec& x) const;
    /// Evaluation against a precomputed power table powers[j][k] = x_j^k.
    double eval_powers(const std::vector<std::vector<double>>& powers) const;

    Polynomial derivative(int var) const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial scaled(double c) const;

    bool same_terms(const Polynomial& o) const;

    /// Canonical printout; parses back to an identical term set.
    std::string to_string() const;

private:
    int nvars_ = 0;
    std::vector<Monomial> terms_;

    void canonicalize();
};

/// Polynomial map f : R^n -> R^m. Components share nvars; first and second
/// partial derivatives are precomputed symbolically at construction, after
/// which the object is immutable and safe to share across threads.
class PolyMap {
public:
    PolyMap() = default;
    PolyMap(int nvars, std::vector<Polynomial> components);

    int nvars() const { return nvars_; }
    int ncomponents() const { return static_cast<int>(comps_.size()); }
    const Polynomial& component(int i) const { return comps_[i]; }
    const std::vector<Polynomial>& components() const { return comps_; }
    const Polynomial& partial(int i, int j) const { return grad_[i][j]; }

    Vec eval(const Vec& x) const;
    Mat jacobian(const Vec& x) const;      // row i = grad f_i(x)
    Vec gradient(int i, const Vec& x) const;
    Mat hessian(int i, const Vec& x) const;

    PolyMap scaled(double c) const;
    PolyMap permuted(const std::vector<int>& order) const;
    std::string to_string() const;

private:
    int nvars_ = 0;
    std::vector<Polynomial> comps_;
    std::vector<std::vector<Polynomial>> grad_;   // [i][j] = d f_i / d x_j
    std::vector<std::vector<Polynomial>> hess_;   // [i][j*n+k]

    std::vector<std::vector<double>> power_table(const Vec& x) const;
    mutable std::vector<int> max_deg_;            // per variable, filled on construction
};

Vec evaluate(const PolyMap& f, const Vec& x);
Mat jacobian(const PolyMap& f, const Vec& x);

class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int column);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_, column_;
};

/// Variable index outside 1..nvars.
class IndexError : public ParseError {
public:
    IndexError(const std::string& msg, int line, int column);
};

/// Parses one polynomial expression. Grammar:
///   expression := term (('+'|'-') term)*
///   term       := factor ('*' factor)*
///   factor     := number | var | var '^' uint
///   var        := 'x' uint          (1-based index)
/// Whitespace is insignificant; a leading sign is accepted.
Polynomial parse_polynomial(const std::string& text, int nvars);

/// Parses one component polynomial per non-empty line.
PolyMap parse_poly_map(const std::string& text, int nvars);

/// Problem ("vp") file: first line "vars: <n>", then one component per line.
/// Optional "tbar: v1,v2,..." and "budget: key=value ..." lines; '#' starts a
/// comment.
struct ProblemFile {
    PolyMap map;
    std::optional<Vec> tbar;
    std::map<std::string, double> budget;
};

ProblemFile load_problem_text(const std::string& text);
ProblemFile load_problem_file(const std::string& path);

} // namespace vopt
