#include "frevival/polynomial.hpp"

#include <cmath>

#include "frevival/errors.hpp"

namespace frevival {

void IntPoly::trim() {
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
}

IntPoly poly_from_int64(std::vector<std::int64_t> coeffs) {
    IntPoly p;
    p.coeffs.reserve(coeffs.size());
    for (std::int64_t c : coeffs) p.coeffs.emplace_back(c);
    p.trim();
    return p;
}

IntPoly poly_add(const IntPoly& a, const IntPoly& b) {
    IntPoly out;
    out.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()));
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
        if (i < a.coeffs.size()) out.coeffs[i] += a.coeffs[i];
        if (i < b.coeffs.size()) out.coeffs[i] += b.coeffs[i];
    }
    out.trim();
    return out;
}

IntPoly poly_sub(const IntPoly& a, const IntPoly& b) {
    IntPoly out;
    out.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()));
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
        if (i < a.coeffs.size()) out.coeffs[i] += a.coeffs[i];
        if (i < b.coeffs.size()) out.coeffs[i] -= b.coeffs[i];
    }
    out.trim();
    return out;
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly{};
    IntPoly out;
    out.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, BigInt());
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    out.trim();
    return out;
}

IntPoly poly_scale(const IntPoly& a, const BigInt& c) {
    if (c.is_zero()) return IntPoly{};
    IntPoly out = a;
    for (auto& x : out.coeffs) x *= c;
    return out;
}

IntPoly poly_derivative(const IntPoly& a) {
    IntPoly out;
    for (std::size_t i = 1; i < a.coeffs.size(); ++i)
        out.coeffs.push_back(a.coeffs[i] * BigInt(static_cast<std::int64_t>(i)));
    out.trim();
    return out;
}

BigInt poly_content(const IntPoly& a) {
    BigInt g;
    for (const auto& c : a.coeffs) g = BigInt::gcd(g, c);
    return g;
}

IntPoly poly_primitive_part(const IntPoly& a) {
    if (a.is_zero()) return a;
    BigInt g = poly_content(a);
    if (a.leading().sign() < 0) g = -g;
    IntPoly out = a;
    for (auto& c : out.coeffs) c = c.div_exact(g);
    return out;
}

void poly_pseudo_divmod(const IntPoly& a, const IntPoly& b, IntPoly& q, IntPoly& r) {
    if (b.is_zero()) fail("polynomial/DivideByZero", "pseudo-division by zero polynomial");
    r = a;
    q = IntPoly{};
    const int db = b.degree();
    const BigInt& lead = b.leading();
    if (a.degree() < db) return;
    q.coeffs.assign(a.degree() - db + 1, BigInt());
    while (!r.is_zero() && r.degree() >= db) {
        const int shift = r.degree() - db;
        const BigInt factor = r.leading();
        // r = lead * r - factor * y^shift * b; scale q to match.
        for (auto& c : q.coeffs) c *= lead;
        q.coeffs[shift] += factor;
        IntPoly scaled_r = poly_scale(r, lead);
        IntPoly sub;
        sub.coeffs.assign(shift, BigInt());
        for (const auto& c : b.coeffs) sub.coeffs.push_back(c * factor);
        r = poly_sub(scaled_r, sub);
    }
    q.trim();
}

IntPoly poly_gcd(IntPoly a, IntPoly b) {
    a = poly_primitive_part(a);
    b = poly_primitive_part(b);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPoly q, r;
        poly_pseudo_divmod(a, b, q, r);
        a = std::move(b);
        b = poly_primitive_part(r);
    }
    return poly_primitive_part(a);
}

IntPoly poly_quotient_primitive(const IntPoly& a, const IntPoly& b) {
    IntPoly q, r;
    poly_pseudo_divmod(a, b, q, r);
    if (!r.is_zero())
        fail("polynomial/InexactDivision", "polynomial division has nonzero remainder");
    return poly_primitive_part(q);
}

std::optional<IntPoly> poly_sqrt(const IntPoly& a) {
    if (a.is_zero()) return IntPoly{};
    if (a.degree() % 2 != 0 || a.leading().sign() < 0) return std::nullopt;
    const int m = a.degree() / 2;
    const BigInt lead_root = isqrt(a.leading());
    if (!(lead_root * lead_root == a.leading())) return std::nullopt;

    // Descending coefficient matching: (s^2)_{m+k} = 2 s_m s_k + inner terms.
    IntPoly s;
    s.coeffs.assign(m + 1, BigInt());
    s.coeffs[m] = lead_root;
    const BigInt two_lead = lead_root * BigInt(2);
    for (int k = m - 1; k >= 0; --k) {
        BigInt acc = a.coeffs[m + k];
        for (int i = k + 1; i <= m - 1; ++i) acc -= s.coeffs[i] * s.coeffs[m + k - i];
        BigInt q, r;
        BigInt::divmod(acc, two_lead, q, r);
        if (!r.is_zero()) return std::nullopt;
        s.coeffs[k] = q;
    }
    if (!poly_sub(poly_mul(s, s), a).is_zero()) return std::nullopt;
    return s;
}

bool poly_squarefree(const IntPoly& a) {
    if (a.is_zero()) return false;
    if (a.degree() == 0) return true;
    return poly_gcd(a, poly_derivative(a)).degree() == 0;
}

std::vector<double> poly_to_double(const IntPoly& a) {
    std::vector<double> out;
    out.reserve(a.coeffs.size());
    for (const auto& c : a.coeffs) out.push_back(c.to_double());
    return out;
}

namespace {

std::vector<std::vector<BigInt>> integer_matrix(const WeightedGraph& g,
                                                const std::vector<int>& keep) {
    const int m = static_cast<int>(keep.size());
    std::vector<std::vector<BigInt>> a(m, std::vector<BigInt>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            a[i][j] = BigInt(static_cast<std::int64_t>(std::llround(g.weights(keep[i], keep[j]))));
    return a;
}

// Samuelson-Berkowitz: grow the characteristic polynomial of leading
// principal submatrices one row/column at a time via Toeplitz products.
IntPoly berkowitz(const std::vector<std::vector<BigInt>>& a) {
    const int n = static_cast<int>(a.size());
    // Coefficients in descending order during the recursion.
    std::vector<BigInt> p{BigInt(1)};
    if (n == 0) return IntPoly{std::vector<BigInt>{BigInt(1)}};

    p = {BigInt(1), -a[0][0]};
    for (int k = 1; k < n; ++k) {
        // New row/column k against the leading k x k block M.
        // Toeplitz column: t = [1, -a_kk, -R C, -R M C, -R M^2 C, ...].
        std::vector<BigInt> t(k + 2);
        t[0] = BigInt(1);
        t[1] = -a[k][k];
        std::vector<BigInt> w(k);
        for (int i = 0; i < k; ++i) w[i] = a[i][k];  // C
        for (int j = 0; j < k; ++j) {
            BigInt dot;
            for (int i = 0; i < k; ++i) dot += a[k][i] * w[i];  // R . w
            t[j + 2] = -dot;
            if (j + 2 <= k) {  // w = M w
                std::vector<BigInt> next(k);
                for (int i = 0; i < k; ++i) {
                    BigInt acc;
                    for (int l = 0; l < k; ++l) acc += a[i][l] * w[l];
                    next[i] = std::move(acc);
                }
                w = std::move(next);
            }
        }
        std::vector<BigInt> next(k + 2);
        for (int i = 0; i < k + 2; ++i) {
            BigInt acc;
            for (int j = 0; j <= std::min<int>(i, k); ++j)
                if (i - j <= k + 1) acc += t[i - j] * p[j];
            next[i] = std::move(acc);
        }
        p = std::move(next);
    }

    IntPoly out;
    out.coeffs.assign(p.rbegin(), p.rend());
    out.trim();
    return out;
}

}  // namespace

IntPoly char_poly_exact(const WeightedGraph& g) {
    if (!g.integer_weighted)
        fail("cospectrality/NotIntegerWeighted", "exact characteristic polynomial needs integer weights");
    std::vector<int> keep(g.n);
    for (int i = 0; i < g.n; ++i) keep[i] = i;
    return berkowitz(integer_matrix(g, keep));
}

IntPoly char_poly_exact_deleted(const WeightedGraph& g, const std::vector<int>& removed) {
    if (!g.integer_weighted)
        fail("cospectrality/NotIntegerWeighted", "exact characteristic polynomial needs integer weights");
    std::vector<char> drop(g.n, 0);
    for (int v : removed) {
        if (v < 0 || v >= g.n) fail("spectral-core/VertexOutOfRange", std::to_string(v));
        drop[v] = 1;
    }
    std::vector<int> keep;
    for (int v = 0; v < g.n; ++v)
        if (!drop[v]) keep.push_back(v);
    return berkowitz(integer_matrix(g, keep));
}

std::vector<double> char_poly_numeric(const Eigen::MatrixXd& a) {
    if (a.rows() == 0) return {1.0};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    if (solver.info() != Eigen::Success)
        fail("spectral-core/EigensolverFailure", "eigensolver failed in char_poly_numeric");
    std::vector<double> poly{1.0};
    for (int i = 0; i < a.rows(); ++i) {
        const double root = solver.eigenvalues()(i);
        std::vector<double> next(poly.size() + 1, 0.0);
        for (std::size_t j = 0; j < poly.size(); ++j) {
            next[j + 1] += poly[j];
            next[j] -= root * poly[j];
        }
        poly = std::move(next);
    }
    // Ascending order with monic leading coefficient.
    return poly;
}

}  // namespace frevival
