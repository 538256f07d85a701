#include "qbn/cross_section.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qbn/hamiltonian.hpp"
#include "qbn/lapack.hpp"

namespace qbn {

cross_section_grid make_cross_section_grid(double radius_nm, double a_nm) {
    if (!(radius_nm > 0) || !(a_nm > 0))
        throw geometry_error("cross-section grid: radius and spacing must be > 0");
    cross_section_grid g;
    g.a = a_nm;
    g.radius = radius_nm;
    g.half = static_cast<int>(std::floor(radius_nm / a_nm));
    const int side = g.side();
    g.index.assign(static_cast<size_t>(side) * side, -1);
    // the effective Dirichlet wall of a staircase mask sits about half a cell
    // outside the last interior point, so keep r < R - a/2 to land the wall on
    // the physical radius
    const double r_eff = radius_nm - 0.5 * a_nm;
    const double r2 = r_eff * r_eff;
    for (int ix = 0; ix < side; ++ix) {
        for (int iy = 0; iy < side; ++iy) {
            const double x = (ix - g.half) * a_nm;
            const double y = (iy - g.half) * a_nm;
            if (x * x + y * y < r2) {
                g.index[static_cast<size_t>(ix) * side + iy] = g.n_interior++;
                g.x.push_back(x);
                g.y.push_back(y);
            }
        }
    }
    if (g.n_interior == 0) throw geometry_error("cross-section grid: no interior points");
    return g;
}

namespace {

// sparse symmetric operator given by neighbor lists
struct sparse_laplacian {
    std::vector<double> diag;
    std::vector<std::array<int, 6>> nbr; // neighbor indices, -1 = wall
    std::vector<std::array<double, 6>> tnbr;
    int n = 0;

    void apply(const double* x, double* y) const {
        for (int i = 0; i < n; ++i) {
            double s = diag[i] * x[i];
            for (int k = 0; k < 6; ++k) {
                const int j = nbr[i][k];
                if (j >= 0) s -= tnbr[i][k] * x[j];
            }
            y[i] = s;
        }
    }
};

// Lanczos with full reorthogonalization for the lowest eigenpairs of a sparse
// SPD operator. Ritz values from the tridiagonal projection, vectors optional.
struct lanczos_result {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;
};

lanczos_result lanczos_lowest(const sparse_laplacian& op, int k, bool want_vectors,
                              int max_iter = 400) {
    const int n = op.n;
    max_iter = std::min(max_iter, n);
    std::vector<std::vector<double>> basis;
    std::vector<double> alpha, beta;
    std::vector<double> v(n), w(n);
    // deterministic start vector
    for (int i = 0; i < n; ++i) v[i] = 1.0 + 1e-3 * std::sin(0.7 * i + 0.3);
    double nrm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    for (auto& e : v) e /= nrm;

    std::vector<double> prev_ritz(k, 1e300);
    int m = 0;
    for (; m < max_iter; ++m) {
        basis.push_back(v);
        op.apply(v.data(), w.data());
        double a = std::inner_product(w.begin(), w.end(), v.begin(), 0.0);
        alpha.push_back(a);
        for (int i = 0; i < n; ++i) w[i] -= a * v[i];
        if (m > 0)
            for (int i = 0; i < n; ++i) w[i] -= beta[m - 1] * basis[m - 1][i];
        // full reorthogonalization, twice for safety
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : basis) {
                const double c = std::inner_product(w.begin(), w.end(), q.begin(), 0.0);
                for (int i = 0; i < n; ++i) w[i] -= c * q[i];
            }
        }
        double b = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
        if (b < 1e-14) { ++m; break; }
        beta.push_back(b);
        for (int i = 0; i < n; ++i) v[i] = w[i] / b;

        if (m >= std::max(2 * k + 10, 30) && m % 10 == 0) {
            auto ev = sym_tridiag_eigen(alpha, std::vector<double>(beta.begin(), beta.end() - 1),
                                        false);
            bool conv = true;
            for (int j = 0; j < k; ++j) {
                if (std::abs(ev.values[j] - prev_ritz[j]) >
                    1e-13 * std::max(1.0, std::abs(ev.values[j]))) conv = false;
                prev_ritz[j] = ev.values[j];
            }
            if (conv) { ++m; break; }
        }
    }

    auto ev = sym_tridiag_eigen(alpha, beta.size() >= alpha.size()
                                           ? std::vector<double>(beta.begin(), beta.begin() + alpha.size() - 1)
                                           : beta,
                                want_vectors);
    lanczos_result out;
    if (static_cast<int>(ev.values.size()) < k)
        throw numerical_error("lanczos: projected space smaller than requested mode count");
    out.values.assign(ev.values.begin(), ev.values.begin() + k);
    if (want_vectors) {
        out.vectors.assign(k, std::vector<double>(n, 0.0));
        const int mm = static_cast<int>(alpha.size());
        for (int j = 0; j < k; ++j)
            for (int l = 0; l < mm; ++l) {
                const double c = ev.vectors[j][l];
                const auto& q = basis[l];
                for (int i = 0; i < n; ++i) out.vectors[j][i] += c * q[i];
            }
    }
    return out;
}

sparse_laplacian disk_operator(const cross_section_grid& g, double m_star) {
    const double t = hopping_energy(m_star, g.a);
    sparse_laplacian op;
    op.n = g.n_interior;
    op.diag.assign(op.n, 4.0 * t);
    op.nbr.assign(op.n, {-1, -1, -1, -1, -1, -1});
    op.tnbr.assign(op.n, {t, t, t, t, 0.0, 0.0});
    const int side = g.side();
    for (int ix = 0; ix < side; ++ix)
        for (int iy = 0; iy < side; ++iy) {
            const int p = g.at(ix, iy);
            if (p < 0) continue;
            const int off[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
            for (int k = 0; k < 4; ++k) {
                const int jx = ix + off[k][0], jy = iy + off[k][1];
                if (jx < 0 || jy < 0 || jx >= side || jy >= side) continue;
                op.nbr[p][k] = g.at(jx, jy);
            }
        }
    return op;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

} // namespace

transverse_modes solve_transverse_modes(const cross_section_grid& grid, double m_star,
                                        int n_modes) {
    if (n_modes < 1) throw config_error("solve_transverse_modes: n_modes >= 1");
    if (n_modes > grid.n_interior)
        throw config_error("solve_transverse_modes: more modes than interior points");

    transverse_modes out;
    const int n = grid.n_interior;
    if (n <= 1500) {
        // dense path
        const double t = hopping_energy(m_star, grid.a);
        std::vector<double> h(static_cast<size_t>(n) * n, 0.0);
        const int side = grid.side();
        for (int ix = 0; ix < side; ++ix)
            for (int iy = 0; iy < side; ++iy) {
                const int p = grid.at(ix, iy);
                if (p < 0) continue;
                h[static_cast<size_t>(p) * n + p] = 4.0 * t;
                const int off[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
                for (auto& o : off) {
                    const int jx = ix + o[0], jy = iy + o[1];
                    if (jx < 0 || jy < 0 || jx >= side || jy >= side) continue;
                    const int q = grid.at(jx, jy);
                    if (q >= 0) h[static_cast<size_t>(p) * n + q] = -t;
                }
            }
        auto ev = sym_eigen(h, n, true);
        out.energy.assign(ev.values.begin(), ev.values.begin() + n_modes);
        out.chi.assign(ev.vectors.begin(), ev.vectors.begin() + n_modes);
    } else {
        auto op = disk_operator(grid, m_star);
        auto lz = lanczos_lowest(op, n_modes, true);
        out.energy = std::move(lz.values);
        out.chi = std::move(lz.vectors);
    }

    // deterministic orientation: rotate degenerate pairs onto x- then y-dipole
    // patterns, fix overall signs
    std::vector<double> dx(grid.n_interior), dy(grid.n_interior);
    for (int i = 0; i < grid.n_interior; ++i) { dx[i] = grid.x[i]; dy[i] = grid.y[i]; }
    int m = 0;
    while (m < n_modes) {
        int g_end = m + 1;
        while (g_end < n_modes &&
               std::abs(out.energy[g_end] - out.energy[m]) < 1e-9 * std::max(1.0, out.energy[m]))
            ++g_end;
        if (g_end - m == 2) {
            auto& v1 = out.chi[m];
            auto& v2 = out.chi[m + 1];
            const double a1 = dot(dx, v1), a2 = dot(dx, v2);
            const double nrm = std::hypot(a1, a2);
            if (nrm > 1e-12) {
                std::vector<double> u1(v1.size()), u2(v1.size());
                const double ca = a1 / nrm, sa = a2 / nrm;
                for (size_t i = 0; i < v1.size(); ++i) {
                    u1[i] = ca * v1[i] + sa * v2[i];
                    u2[i] = -sa * v1[i] + ca * v2[i];
                }
                v1 = std::move(u1);
                v2 = std::move(u2);
                if (dot(dy, v2) < 0)
                    for (auto& e : v2) e = -e;
            }
        }
        for (int j = m; j < g_end; ++j) {
            auto& v = out.chi[j];
            double s = dot(dx, v) + dot(dy, v);
            if (std::abs(s) < 1e-9) s = std::accumulate(v.begin(), v.end(), 0.0);
            if (std::abs(s) < 1e-9) s = v[grid.n_interior / 2];
            if (s < 0)
                for (auto& e : v) e = -e;
        }
        m = g_end;
    }
    return out;
}

std::vector<double> box_fd_levels(double l1, double l2, double l3, double a_nm,
                                  double m_star, int k) {
    const double ls[3] = {l1, l2, l3};
    int ni[3];
    double t[3];
    for (int d = 0; d < 3; ++d) {
        ni[d] = std::max(2, static_cast<int>(std::lround(ls[d] / a_nm)) - 1);
        const double h = ls[d] / (ni[d] + 1); // spacing fitted to the exact side
        t[d] = hopping_energy(m_star, h);
    }
    sparse_laplacian op;
    op.n = ni[0] * ni[1] * ni[2];
    op.diag.assign(op.n, 2.0 * (t[0] + t[1] + t[2]));
    op.nbr.assign(op.n, {-1, -1, -1, -1, -1, -1});
    op.tnbr.assign(op.n, {t[0], t[0], t[1], t[1], t[2], t[2]});
    auto idx = [&](int i, int j, int l) { return (i * ni[1] + j) * ni[2] + l; };
    for (int i = 0; i < ni[0]; ++i)
        for (int j = 0; j < ni[1]; ++j)
            for (int l = 0; l < ni[2]; ++l) {
                const int p = idx(i, j, l);
                if (i > 0) op.nbr[p][0] = idx(i - 1, j, l);
                if (i < ni[0] - 1) op.nbr[p][1] = idx(i + 1, j, l);
                if (j > 0) op.nbr[p][2] = idx(i, j - 1, l);
                if (j < ni[1] - 1) op.nbr[p][3] = idx(i, j + 1, l);
                if (l > 0) op.nbr[p][4] = idx(i, j, l - 1);
                if (l < ni[2] - 1) op.nbr[p][5] = idx(i, j, l + 1);
            }
    auto lz = lanczos_lowest(op, k, false);
    return lz.values;
}

} // namespace qbn
