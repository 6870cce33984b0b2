#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sphrelu {

// Dimension d of the sphere S^d embedded in R^{d+1}.  The interval weight
// (1-t^2)^{(d-2)/2} and all surface-area constants hang off this.
struct SphereDim {
    int d;

    explicit SphereDim(int d_) : d(d_) {
        if (d < 2) throw std::invalid_argument("sphere dimension must be >= 2");
    }

    // omega_d = 2 pi^{(d+1)/2} / Gamma((d+1)/2), surface area of S^d
    double surface_area() const;
    // omega_{d-1}
    double subsphere_area() const;
    // exponent of the interval weight (1-t^2)^alpha
    double weight_exponent() const { return 0.5 * (d - 2); }
    // int_{-1}^1 (1-t^2)^alpha dt = omega_d / omega_{d-1}
    double weight_mass() const;
};

// N(m): dimension of the degree-m spherical harmonic space on S^d.
// Exact integer arithmetic; throws std::overflow_error when the count
// exceeds the 64-bit range.
std::int64_t harmonic_dim(SphereDim dim, int m);

// dim P_m(S^d) = sum_{j<=m} N(j).
std::int64_t poly_space_dim(SphereDim dim, int m);

// Gegenbauer polynomial R_m normalized to R_m(1) = 1, evaluated by the
// three-term recurrence
//   R_m(t) = ((2m+d-3) t R_{m-1}(t) - (m-1) R_{m-2}(t)) / (m+d-2).
double gegenbauer_normalized(SphereDim dim, int m, double t);

// p_m(t) = N(m) R_m(t), the addition-theorem normalization p_m(1) = N(m).
double legendre_eval(SphereDim dim, int m, double t);

// ||p_m||^2 with respect to <f,g> = int f g (1-t^2)^{(d-2)/2} dt.
// Equals N(m) * omega_d / omega_{d-1}.
double legendre_norm_sq(SphereDim dim, int m);

// Fill out[0..M] with R_0(t), ..., R_M(t).
void gegenbauer_sequence(SphereDim dim, int M, double t, double* out);

struct QuadratureRule {
    std::vector<double> nodes;    // strictly inside (-1,1), increasing
    std::vector<double> weights;  // positive
    double weight_exponent;       // alpha of (1-x)^alpha (1+x)^beta
    double weight_exponent_beta;

    template <class F>
    double integrate(F&& f) const {
        double s = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
        return s;
    }
};

// Gauss rule for the Jacobi weight (1-x)^a (1+x)^b on [-1,1].  Nodes are
// found by safeguarded Newton iteration on the orthonormal recurrence
// (brackets from root interlacing), tolerance 1e-15, 100-iteration cap.
// Exact for polynomials up to degree 2n-1.
QuadratureRule gauss_jacobi(int num_nodes, double a, double b);

// Gauss rule for the sphere weight (1-t^2)^{(d-2)/2}.
QuadratureRule gauss_rule(SphereDim dim, int num_nodes);

// int_0^1 g(t) (1-t^2)^{(d-2)/2} dt, exact for polynomial g of degree <=
// max_degree.  Splits g into even and odd parts: the even part is half the
// full-interval integral, the odd part maps to a Jacobi (alpha,0) integral
// under s = t^2, so both pieces are integrated exactly.
class HalfRangeIntegrator {
  public:
    HalfRangeIntegrator(SphereDim dim, int max_degree);

    template <class F>
    double integrate(F&& g) const {
        double even = 0.0;
        for (std::size_t i = 0; i < full_.nodes.size(); ++i)
            even += full_.weights[i] * g(full_.nodes[i]);
        double odd = 0.0;
        for (std::size_t i = 0; i < half_nodes_.size(); ++i) {
            const double t = half_nodes_[i];
            odd += half_weights_[i] * (g(t) - g(-t)) / (2.0 * t);
        }
        return 0.5 * (even + odd);
    }

  private:
    QuadratureRule full_;               // (1-t^2)^alpha on [-1,1]
    std::vector<double> half_nodes_;    // sqrt(s_i), s_i from Jacobi (alpha,0)
    std::vector<double> half_weights_;
};

namespace detail {
// Recurrence coefficients c1[m], c2[m] with
//   R_m = c1[m] * t * R_{m-1} - c2[m] * R_{m-2},  m >= 1.
void gegenbauer_recurrence(SphereDim dim, int M, std::vector<double>& c1,
                           std::vector<double>& c2);
}  // namespace detail

}  // namespace sphrelu
