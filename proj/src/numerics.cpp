#include "hylink/numerics.hpp"

#include "hylink/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace hylink::numerics
{
namespace
{
// Kronrod 15-point abscissae on [0, 1]; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Interval
{
    double a;
    double b;
    double value;
    double error;
};

// Max-heap order: larger error first, then smaller left endpoint.
bool lower_priority(const Interval& x, const Interval& y)
{
    if (x.error != y.error)
    {
        return x.error < y.error;
    }
    return x.a > y.a;
}

double sample(const RealFunction& f, double x)
{
    const double y = f(x);
    if (!std::isfinite(y))
    {
        throw DomainError("integrate_adaptive: integrand is not finite at x = " + std::to_string(x));
    }
    return y;
}

Interval gauss_kronrod(const RealFunction& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double f_center = sample(f, center);
    double kronrod = f_center * kKronrodWeights[7];
    double gauss = f_center * kGaussWeights[3];
    for (std::size_t j = 0; j < 7; ++j)
    {
        const double dx = half * kKronrodNodes[j];
        const double pair = sample(f, center - dx) + sample(f, center + dx);
        kronrod += kKronrodWeights[j] * pair;
        if (j % 2 == 1)
        {
            gauss += kGaussWeights[j / 2] * pair;
        }
    }
    return Interval{a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

struct Totals
{
    double value = 0.0;
    double error = 0.0;
};

Totals sum_in_order(std::vector<Interval> intervals)
{
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& x, const Interval& y) { return x.a < y.a; });
    Totals t;
    for (const auto& iv : intervals)
    {
        t.value += iv.value;
        t.error += iv.error;
    }
    return t;
}

bool converged(const Totals& t, const QuadratureSpec& spec)
{
    return t.error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(t.value));
}
} // namespace

QuadratureResult integrate_adaptive(const RealFunction& f, double a, double b,
                                    const QuadratureSpec& spec)
{
    if (!(spec.rel_tol > 0.0) || !(spec.abs_tol >= 0.0) || spec.max_subdivisions < 1)
    {
        throw DomainError("integrate_adaptive: invalid tolerance specification");
    }
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
    {
        throw DomainError("integrate_adaptive: require finite a < b");
    }

    std::vector<double> edges{a};
    for (double p : spec.mandatory_breakpoints)
    {
        if (!(p > edges.back()) || !(p < b))
        {
            throw DomainError("integrate_adaptive: breakpoints must be sorted and strictly inside (a, b)");
        }
        edges.push_back(p);
    }
    edges.push_back(b);

    std::vector<Interval> heap;
    heap.reserve(static_cast<std::size_t>(spec.max_subdivisions) + edges.size());
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    {
        heap.push_back(gauss_kronrod(f, edges[i], edges[i + 1]));
    }
    std::make_heap(heap.begin(), heap.end(), lower_priority);

    Totals running = sum_in_order(heap);
    while (!converged(running, spec))
    {
        if (static_cast<int>(heap.size()) >= spec.max_subdivisions)
        {
            const Totals t = sum_in_order(heap);
            throw ConvergenceError("integrate_adaptive: subdivision limit reached", t.value, t.error);
        }

        std::pop_heap(heap.begin(), heap.end(), lower_priority);
        const Interval worst = heap.back();
        heap.pop_back();

        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a) || !(mid < worst.b))
        {
            heap.push_back(worst);
            const Totals t = sum_in_order(heap);
            throw ConvergenceError("integrate_adaptive: interval cannot be subdivided further (roundoff)",
                                   t.value, t.error);
        }

        const Interval left = gauss_kronrod(f, worst.a, mid);
        const Interval right = gauss_kronrod(f, mid, worst.b);
        for (const auto& iv : {left, right})
        {
            heap.push_back(iv);
            std::push_heap(heap.begin(), heap.end(), lower_priority);
        }

        running.value += left.value + right.value - worst.value;
        running.error += left.error + right.error - worst.error;
        if (converged(running, spec))
        {
            // Running sums drift; confirm with an exact re-summation.
            running = sum_in_order(heap);
        }
    }

    const Totals t = sum_in_order(heap);
    return QuadratureResult{t.value, t.error, static_cast<int>(heap.size())};
}

double find_root(const RealFunction& f, const RootSpec& spec)
{
    if (!(spec.lo < spec.hi) || !(spec.x_tol > 0.0) || spec.max_iter < 1)
    {
        throw DomainError("find_root: require lo < hi, x_tol > 0, max_iter >= 1");
    }

    double a = spec.lo;
    double b = spec.hi;
    double fa = f(a);
    double fb = f(b);
    if (!std::isfinite(fa) || !std::isfinite(fb))
    {
        throw DomainError("find_root: function is not finite at the bracket ends");
    }
    if (fa == 0.0)
    {
        return a;
    }
    if (fb == 0.0)
    {
        return b;
    }
    if ((fa > 0.0) == (fb > 0.0))
    {
        throw DomainError("find_root: bracket does not contain a sign change");
    }

    constexpr double eps = std::numeric_limits<double>::epsilon();
    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;

    for (int iter = 0; iter < spec.max_iter; ++iter)
    {
        if ((fb > 0.0) == (fc > 0.0))
        {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if (std::abs(fc) < std::abs(fb))
        {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }

        // [b, c] brackets the root; stopping at |m| <= tol keeps |b - root| <= x_tol.
        const double tol = 2.0 * eps * std::abs(b) + 0.5 * spec.x_tol;
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0)
        {
            return b;
        }

        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb))
        {
            // Inverse quadratic interpolation, or secant when only two points differ.
            const double s = fb / fa;
            double p;
            double q;
            if (a == c)
            {
                p = 2.0 * m * s;
                q = 1.0 - s;
            }
            else
            {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0)
            {
                q = -q;
            }
            else
            {
                p = -p;
            }
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q)))
            {
                e = d;
                d = p / q;
            }
            else
            {
                d = m;
                e = d;
            }
        }
        else
        {
            d = m;
            e = d;
        }

        a = b;
        fa = fb;
        b += (std::abs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
        fb = f(b);
        if (!std::isfinite(fb))
        {
            throw DomainError("find_root: function is not finite inside the bracket");
        }
    }
    throw ConvergenceError("find_root: iteration limit reached", b, std::abs(c - b));
}

MaximizeResult maximize_1d(const RealFunction& f, double lo, double hi, double x_tol)
{
    if (!(lo < hi) || !(x_tol > 0.0))
    {
        throw DomainError("maximize_1d: require lo < hi and x_tol > 0");
    }

    constexpr int n = kMaximizeScanSamples;
    std::array<double, n> xs{};
    std::array<double, n> ys{};
    for (int i = 0; i < n; ++i)
    {
        xs[i] = (i == n - 1) ? hi : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
        ys[i] = f(xs[i]);
    }

    int best = 0;
    for (int i = 1; i < n; ++i)
    {
        if (ys[i] > ys[best])
        {
            best = i;
        }
    }

    // Count rise-then-fall transitions, ignoring flat runs.
    int peaks = 0;
    int trend = 0;
    for (int i = 1; i < n; ++i)
    {
        const int step = (ys[i] > ys[i - 1]) ? 1 : (ys[i] < ys[i - 1] ? -1 : 0);
        if (step == 0)
        {
            continue;
        }
        if (trend == 1 && step == -1)
        {
            ++peaks;
        }
        trend = step;
    }
    if (trend == 1)
    {
        ++peaks; // maximum at the upper boundary
    }

    MaximizeResult result{xs[best], ys[best], peaks > 1};

    // Golden section on the two sample cells around the best sample.
    constexpr double inv_phi = 0.6180339887498948482;
    double a = xs[std::max(best - 1, 0)];
    double b = xs[std::min(best + 1, n - 1)];
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > x_tol)
    {
        if (f1 >= f2)
        {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
        else
        {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    const double x_mid = 0.5 * (a + b);
    const double f_mid = f(x_mid);
    if (f_mid > result.value)
    {
        result.x = x_mid;
        result.value = f_mid;
    }
    return result;
}

} // namespace hylink::numerics
