#include "sphrelu/polynomials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sphrelu {

double SphereDim::surface_area() const {
    return 2.0 * std::pow(M_PI, 0.5 * (d + 1)) / std::tgamma(0.5 * (d + 1));
}

double SphereDim::subsphere_area() const {
    return 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);
}

double SphereDim::weight_mass() const {
    return std::sqrt(M_PI) * std::tgamma(0.5 * d) / std::tgamma(0.5 * (d + 1));
}

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("integer overflow: degree too large for 64-bit counts");
    return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow");
    return r;
}

// binom(n, k) with overflow checking; exact because prefix products of
// binomials are integers at every step.
std::int64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t r = 1;
    for (std::int64_t j = 1; j <= k; ++j) {
        r = checked_mul(r, n - k + j);
        r /= j;
    }
    return r;
}

}  // namespace

std::int64_t harmonic_dim(SphereDim dim, int m) {
    if (m < 0) throw std::invalid_argument("degree must be nonnegative");
    if (m == 0) return 1;
    // N(m) = binom(m+d, d) - binom(m+d-2, d), the telescoped form of
    // (2m+d-1)/m * binom(m+d-2, d-1)
    return checked_sub(binomial(m + dim.d, dim.d), binomial(m + dim.d - 2, dim.d));
}

std::int64_t poly_space_dim(SphereDim dim, int m) {
    if (m < 0) throw std::invalid_argument("degree must be nonnegative");
    if (m <= 1) return binomial(dim.d + 1 + m, m);
    return checked_sub(binomial(dim.d + 1 + m, m), binomial(dim.d - 1 + m, m - 2));
}

namespace detail {

void gegenbauer_recurrence(SphereDim dim, int M, std::vector<double>& c1,
                           std::vector<double>& c2) {
    c1.assign(M + 1, 0.0);
    c2.assign(M + 1, 0.0);
    for (int m = 1; m <= M; ++m) {
        const double den = m + dim.d - 2;
        c1[m] = (2.0 * m + dim.d - 3.0) / den;
        c2[m] = (m - 1.0) / den;
    }
}

}  // namespace detail

double gegenbauer_normalized(SphereDim dim, int m, double t) {
    if (std::abs(t) > 1.0) throw std::invalid_argument("argument must lie in [-1,1]");
    if (m == 0) return 1.0;
    if (m == 1) return t;
    double rmm = 1.0, rm = t;
    for (int j = 2; j <= m; ++j) {
        const double den = j + dim.d - 2;
        const double r = ((2.0 * j + dim.d - 3.0) * t * rm - (j - 1.0) * rmm) / den;
        rmm = rm;
        rm = r;
    }
    return rm;
}

double legendre_eval(SphereDim dim, int m, double t) {
    return static_cast<double>(harmonic_dim(dim, m)) * gegenbauer_normalized(dim, m, t);
}

double legendre_norm_sq(SphereDim dim, int m) {
    return static_cast<double>(harmonic_dim(dim, m)) * dim.weight_mass();
}

void gegenbauer_sequence(SphereDim dim, int M, double t, double* out) {
    if (std::abs(t) > 1.0) throw std::invalid_argument("argument must lie in [-1,1]");
    out[0] = 1.0;
    if (M == 0) return;
    out[1] = t;
    for (int m = 2; m <= M; ++m) {
        const double den = m + dim.d - 2;
        out[m] = ((2.0 * m + dim.d - 3.0) * t * out[m - 1] - (m - 1.0) * out[m - 2]) / den;
    }
}

namespace {

// Monic Jacobi recurrence coefficients for weight (1-x)^a (1+x)^b:
//   pi_{k+1} = (x - alpha_k) pi_k - beta_k pi_{k-1}
struct JacobiRecurrence {
    double a, b;
    double mu0;  // total weight mass

    explicit JacobiRecurrence(double a_, double b_) : a(a_), b(b_) {
        mu0 = std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                       std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0));
    }

    double alpha(int k) const {
        if (k == 0) return (b - a) / (a + b + 2.0);
        const double s = 2.0 * k + a + b;
        return (b * b - a * a) / (s * (s + 2.0));
    }

    double beta(int k) const {
        if (k == 0) return mu0;
        const double s = 2.0 * k + a + b;
        return 4.0 * k * (k + a) * (k + b) * (k + a + b) /
               (s * s * (s + 1.0) * (s - 1.0));
    }
};

// Orthonormal-polynomial value and derivative at x, plus the Christoffel
// sum 1/weight = sum_{j<n} p_j(x)^2.
struct OrthoEval {
    double p_n, dp_n, christoffel;
};

OrthoEval eval_orthonormal(const JacobiRecurrence& rec, int n, double x,
                           const std::vector<double>& sqrt_beta) {
    double pm1 = 0.0, p = 1.0 / std::sqrt(rec.mu0);
    double dpm1 = 0.0, dp = 0.0;
    double chris = p * p;
    for (int k = 0; k < n; ++k) {
        const double inv = 1.0 / sqrt_beta[k + 1];
        const double pn = ((x - rec.alpha(k)) * p - sqrt_beta[k] * pm1) * inv;
        const double dpn = ((x - rec.alpha(k)) * dp + p - sqrt_beta[k] * dpm1) * inv;
        pm1 = p;
        p = pn;
        dpm1 = dp;
        dp = dpn;
        if (k + 1 < n) chris += p * p;
    }
    return {p, dp, chris};
}

}  // namespace

QuadratureRule gauss_jacobi(int num_nodes, double a, double b) {
    if (num_nodes < 1) throw std::invalid_argument("quadrature needs at least one node");
    if (a <= -1.0 || b <= -1.0) throw std::invalid_argument("jacobi exponents must exceed -1");

    JacobiRecurrence rec(a, b);
    std::vector<double> sqrt_beta(num_nodes + 1);
    sqrt_beta[0] = 0.0;
    for (int k = 1; k <= num_nodes; ++k) sqrt_beta[k] = std::sqrt(rec.beta(k));

    // Roots level by level: the roots of p_{n-1} bracket those of p_n, so
    // each root sits in a known sign-change interval.  Safeguarded Newton
    // inside the bracket, 1e-15 tolerance, 100-iteration cap.
    std::vector<double> prev = {rec.alpha(0)};
    for (int lev = 2; lev <= num_nodes; ++lev) {
        std::vector<double> cur(lev);
        for (int i = 0; i < lev; ++i) {
            double lo = (i == 0) ? -1.0 : prev[i - 1];
            double hi = (i == lev - 1) ? 1.0 : prev[i];
            double flo = eval_orthonormal(rec, lev, lo, sqrt_beta).p_n;
            double x = 0.5 * (lo + hi);
            for (int it = 0; it < 100; ++it) {
                OrthoEval e = eval_orthonormal(rec, lev, x, sqrt_beta);
                if (e.p_n * flo > 0.0)
                    lo = x;
                else
                    hi = x;
                double step = e.p_n / e.dp_n;
                double xn = x - step;
                if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
                if (std::abs(xn - x) <= 1e-15 * std::max(1.0, std::abs(x))) {
                    x = xn;
                    break;
                }
                x = xn;
            }
            cur[i] = x;
        }
        prev.swap(cur);
    }

    QuadratureRule rule;
    rule.weight_exponent = a;
    rule.weight_exponent_beta = b;
    rule.nodes = prev;
    rule.weights.resize(num_nodes);
    for (int i = 0; i < num_nodes; ++i) {
        OrthoEval e = eval_orthonormal(rec, num_nodes, rule.nodes[i], sqrt_beta);
        rule.weights[i] = 1.0 / e.christoffel;
    }

    // symmetric weight: enforce the exact +/- pairing
    if (a == b) {
        for (int i = 0, j = num_nodes - 1; i < j; ++i, --j) {
            const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
            rule.nodes[i] = -x;
            rule.nodes[j] = x;
            const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
            rule.weights[i] = rule.weights[j] = w;
        }
        if (num_nodes % 2 == 1) rule.nodes[num_nodes / 2] = 0.0;
    }
    return rule;
}

QuadratureRule gauss_rule(SphereDim dim, int num_nodes) {
    const double alpha = dim.weight_exponent();
    return gauss_jacobi(num_nodes, alpha, alpha);
}

HalfRangeIntegrator::HalfRangeIntegrator(SphereDim dim, int max_degree) {
    const double alpha = dim.weight_exponent();
    const int n_full = std::max(8, max_degree / 2 + 2);
    full_ = gauss_rule(dim, n_full);

    // odd part: int_0^1 t G(t^2) (1-t^2)^alpha dt = 1/2 int_0^1 G(s)(1-s)^alpha ds,
    // with deg G <= (max_degree-1)/2
    const int n_half = std::max(8, max_degree / 4 + 2);
    QuadratureRule jac = gauss_jacobi(n_half, alpha, 0.0);
    const double scale = std::pow(2.0, -alpha - 1.0);
    half_nodes_.resize(jac.nodes.size());
    half_weights_.resize(jac.nodes.size());
    for (std::size_t i = 0; i < jac.nodes.size(); ++i) {
        const double s = 0.5 * (jac.nodes[i] + 1.0);
        half_nodes_[i] = std::sqrt(s);
        half_weights_[i] = scale * jac.weights[i];
    }
}

}  // namespace sphrelu
