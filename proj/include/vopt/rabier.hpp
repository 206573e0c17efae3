#pragma once

#include "vopt/core.hpp"
#include "vopt/polynomial.hpp"

namespace vopt {

/// Value and attaining weights of nu_f(x) = min_{sum |lambda_i| = 1}
/// || sum lambda_i grad f_i(x) ||.
struct RabierResult {
    double value = 0.0;
    Vec weights;    // lambda, sum of absolute values 1
    IVec orthant;   // sign pattern of the attaining orthant, entries in {-1,+1}
    bool budget_exceeded = false;  // an inner solve hit its iteration cap
};

/// Core routine on a precomputed Jacobian (rows are component gradients).
/// Enumerates all 2^m sign orthants in lexicographic order (-1 before +1)
/// and solves the simplex-constrained QP in each; ties keep the first
/// (lexicographically smallest) pattern. Throws for m > 16.
RabierResult rabier_nu(const Mat& jac);

RabierResult rabier_nu(const PolyMap& f, const Vec& x);

} // namespace vopt
