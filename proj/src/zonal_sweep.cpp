#include "sphrelu/zonal_sweep.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

namespace sphrelu {

int thread_budget() {
    if (const char* env = std::getenv("SPHRELU_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

constexpr int kLanes = 8;

// sum_m w[m] R_m(t) for a lane of t values at once; the recurrence is the
// same for every lane, so the compiler can keep the block in vector registers.
inline void sweep_block(const double* t, int lanes, const double* c1, const double* c2,
                        const std::vector<double>& w, int M, double* acc) {
    double r0[kLanes], r1[kLanes];
    for (int v = 0; v < lanes; ++v) {
        r0[v] = 1.0;
        r1[v] = t[v];
        acc[v] = w[0] + (M >= 1 ? w[1] * t[v] : 0.0);
    }
    for (int m = 2; m <= M; ++m) {
        const double a = c1[m], b = c2[m], wm = w[m];
        for (int v = 0; v < lanes; ++v) {
            const double r = a * t[v] * r1[v] - b * r0[v];
            acc[v] += wm * r;
            r0[v] = r1[v];
            r1[v] = r;
        }
    }
}

}  // namespace

Eigen::MatrixXd zonal_kernel_matrix(const PointSet& ps, const std::vector<double>& w) {
    const int n = ps.n();
    const int M = static_cast<int>(w.size()) - 1;
    std::vector<double> c1, c2;
    detail::gegenbauer_recurrence(ps.dim, std::max(M, 1), c1, c2);

    Eigen::MatrixXd out(n, n);
    double diag = 0.0;
    for (double v : w) diag += v;

    auto fill_rows = [&](int row_begin, int row_end) {
        double t[kLanes], acc[kLanes];
        int idx_i[kLanes], idx_j[kLanes];
        int filled = 0;
        auto flush = [&]() {
            sweep_block(t, filled, c1.data(), c2.data(), w, M, acc);
            for (int v = 0; v < filled; ++v) {
                out(idx_i[v], idx_j[v]) = acc[v];
                out(idx_j[v], idx_i[v]) = acc[v];
            }
            filled = 0;
        };
        for (int i = row_begin; i < row_end; ++i) {
            out(i, i) = diag;
            for (int j = i + 1; j < n; ++j) {
                t[filled] = ps.coords.row(i).dot(ps.coords.row(j));
                t[filled] = std::min(1.0, std::max(-1.0, t[filled]));
                idx_i[filled] = i;
                idx_j[filled] = j;
                if (++filled == kLanes) flush();
            }
        }
        flush();
    };

    const int threads = std::min(thread_budget(), n);
    if (threads <= 1) {
        fill_rows(0, n);
    } else {
        // balance: row i holds n-1-i pairs, so hand out interleaved chunks
        std::vector<std::thread> pool;
        const int chunk = 16;
        std::atomic<int> next{0};
        auto worker = [&]() {
            for (;;) {
                const int base = next.fetch_add(chunk);
                if (base >= n) return;
                fill_rows(base, std::min(n, base + chunk));
            }
        };
        for (int tix = 0; tix < threads; ++tix) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return out;
}

Eigen::VectorXd zonal_kernel_vector(const PointSet& ps, const Eigen::VectorXd& center,
                                    const std::vector<double>& w) {
    const int n = ps.n();
    const int M = static_cast<int>(w.size()) - 1;
    std::vector<double> c1, c2;
    detail::gegenbauer_recurrence(ps.dim, std::max(M, 1), c1, c2);

    Eigen::VectorXd b(n);
    double t[kLanes], acc[kLanes];
    int filled = 0, base = 0;
    auto flush = [&]() {
        sweep_block(t, filled, c1.data(), c2.data(), w, M, acc);
        for (int v = 0; v < filled; ++v) b[base + v] = acc[v];
        base += filled;
        filled = 0;
    };
    for (int i = 0; i < n; ++i) {
        double c = ps.coords.row(i).dot(center);
        t[filled++] = std::min(1.0, std::max(-1.0, c));
        if (filled == kLanes) flush();
    }
    flush();
    return b;
}

std::vector<double> degree_pair_energies(const PointSet& ps, const Eigen::VectorXd& a,
                                         int M) {
    const int n = ps.n();
    std::vector<double> c1, c2;
    detail::gegenbauer_recurrence(ps.dim, std::max(M, 1), c1, c2);

    std::vector<double> e(M + 1, 0.0);
    const double diag = a.squaredNorm();  // R_m(1) = 1 for every m
    for (double& v : e) v = diag;

    double t[kLanes], cw[kLanes], r0[kLanes], r1[kLanes];
    int filled = 0;
    auto flush = [&]() {
        if (filled == 0) return;
        double s0 = 0.0, s1 = 0.0;
        for (int v = 0; v < filled; ++v) {
            r0[v] = 1.0;
            r1[v] = t[v];
            s0 += cw[v];
            s1 += cw[v] * t[v];
        }
        e[0] += s0;
        if (M >= 1) e[1] += s1;
        for (int m = 2; m <= M; ++m) {
            const double ca = c1[m], cb = c2[m];
            double s = 0.0;
            for (int v = 0; v < filled; ++v) {
                const double r = ca * t[v] * r1[v] - cb * r0[v];
                s += cw[v] * r;
                r0[v] = r1[v];
                r1[v] = r;
            }
            e[m] += s;
        }
        filled = 0;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double c = ps.coords.row(i).dot(ps.coords.row(j));
            t[filled] = std::min(1.0, std::max(-1.0, c));
            cw[filled] = 2.0 * a[i] * a[j];
            if (++filled == kLanes) flush();
        }
    flush();
    return e;
}

}  // namespace sphrelu
