#pragma once

#include <functional>
#include <vector>

// Deterministic 1-D numerical kernels with explicit tolerance contracts.
namespace hylink::numerics
{
using RealFunction = std::function<double(double)>;

struct QuadratureSpec
{
    double rel_tol = 1e-9;
    double abs_tol = 1e-14;
    int max_subdivisions = 10000;
    // Interior points the partition must contain (sorted, strictly inside (a, b)).
    std::vector<double> mandatory_breakpoints;
};

struct QuadratureResult
{
    double value = 0.0;
    double error = 0.0;   // sum of per-interval |K15 - G7| estimates
    int subdivisions = 0; // number of intervals in the final partition
};

// Globally adaptive 7/15-point Gauss-Kronrod integration.
//
// The interval with the largest error estimate is bisected first; ties go to
// the smaller left endpoint, so the partition sequence is a pure function of
// the inputs. Stops once error <= max(abs_tol, rel_tol |value|).
//
// Requires finite a < b. Throws DomainError on an invalid interval or spec or
// a non-finite sample, and ConvergenceError (with the best estimate) when
// max_subdivisions is hit.
QuadratureResult integrate_adaptive(const RealFunction& f, double a, double b,
                                    const QuadratureSpec& spec = {});

struct RootSpec
{
    double lo = 0.0;
    double hi = 1.0;
    double x_tol = 1e-12;
    int max_iter = 200;
};

// Brent's method on a sign-changing bracket; every step keeps the root
// bracketed and falls back to bisection, so the result is within x_tol of a
// root for any continuous f. Throws DomainError for an invalid bracket and
// ConvergenceError when max_iter is exhausted.
double find_root(const RealFunction& f, const RootSpec& spec);

struct MaximizeResult
{
    double x = 0.0;
    double value = 0.0;
    // Coarse scan found more than one local maximum; the result is the best
    // one the scan saw but the function is not unimodal on [lo, hi].
    bool multimodal_warning = false;
};

inline constexpr int kMaximizeScanSamples = 64;

// Bounded maximization: a uniform scan picks the best sample, then golden
// section refines within its neighbouring samples. Boundary maxima are
// returned exactly at lo or hi.
MaximizeResult maximize_1d(const RealFunction& f, double lo, double hi, double x_tol);

} // namespace hylink::numerics
